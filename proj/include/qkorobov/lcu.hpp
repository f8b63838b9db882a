// Copyright 2026 The qkorobov Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * Linear combination of unitaries and the Hadamard-test readout.
 *
 * Register layout of an assembled LCU circuit on d + s qubits: data qubits
 * 0..d-1, selector ancillas d..d+s-1 (ancilla b is bit b of the term index).
 * The Hadamard test prepends one more qubit, so in the test circuit the
 * test qubit is 0 and everything else moves up by one.
 *
 *   U_LCU = (I (x) F^dagger) U_c (I (x) F),   U_c = sum_j sign_j U_j (x) |j><j|
 *   <0|U_LCU|0> = (1/|a|_1) sum_j sign_j a_j <0|U_j|0>
 */

#pragma once

#include "qkorobov/qsp.hpp"
#include "qkorobov/simulator.hpp"
#include "qkorobov/sparsegrid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qkorobov {

/// s = ceil(log2 M), with s = 0 for M = 1.
inline std::size_t ancilla_qubits_for(std::size_t term_count) {
    if (term_count == 0) throw std::invalid_argument("an LCU needs at least one term");
    std::size_t s = 0;
    while ((std::size_t{1} << s) < term_count) ++s;
    return s;
}

struct LcuPlan {
    std::vector<double> coefficients; // a_j > 0
    std::vector<Circuit> term_circuits;
    std::vector<int> term_signs; // +1 or -1
    std::size_t data_width = 0;
    std::size_t ancilla_count = 0;
    double one_norm = 0.0;

    [[nodiscard]] std::size_t term_count() const { return coefficients.size(); }

    /// Throws std::invalid_argument if any invariant fails.
    void validate() const {
        const std::size_t m = coefficients.size();
        if (m == 0) throw std::invalid_argument("LCU plan has no terms");
        if (term_circuits.size() != m || term_signs.size() != m) {
            throw std::invalid_argument("LCU plan: coefficient, circuit and sign counts differ");
        }
        double sum = 0.0;
        for (double a : coefficients) {
            if (!(a > 0.0) || !std::isfinite(a)) {
                throw std::invalid_argument("LCU plan: coefficients must be positive and finite");
            }
            sum += a;
        }
        if (std::abs(sum - one_norm) > 1e-12 * std::max(1.0, sum)) {
            throw std::invalid_argument("LCU plan: one_norm does not match the coefficients");
        }
        if (ancilla_count != ancilla_qubits_for(m)) {
            throw std::invalid_argument("LCU plan: ancilla count is not ceil(log2 M)");
        }
        for (std::size_t j = 0; j < m; ++j) {
            if (term_circuits[j].width() != data_width) {
                throw std::invalid_argument("LCU plan: term circuit width differs from data width");
            }
            if (term_signs[j] != 1 && term_signs[j] != -1) {
                throw std::invalid_argument("LCU plan: signs must be +1 or -1");
            }
        }
    }
};

/// Folds the signs of `weights` into term_signs. Zero weights are rejected;
/// drop them before calling.
inline LcuPlan make_plan(std::span<const double> weights, std::vector<Circuit> term_circuits,
                         std::size_t data_width) {
    LcuPlan plan;
    plan.data_width = data_width;
    for (double w : weights) {
        if (w == 0.0 || !std::isfinite(w)) {
            throw std::invalid_argument("LCU weights must be nonzero and finite");
        }
        plan.coefficients.push_back(std::abs(w));
        plan.term_signs.push_back(w > 0.0 ? 1 : -1);
        plan.one_norm += std::abs(w);
    }
    plan.term_circuits = std::move(term_circuits);
    plan.ancilla_count = ancilla_qubits_for(plan.coefficients.size());
    plan.validate();
    return plan;
}

/// Term circuit for one expansion term: on data qubit j, the zero-phase QSP
/// block of degree k_j bound to u_j.
inline Circuit term_circuit(const ChebyshevTerm &term, ChebyshevCircuitOptions options = {}) {
    const std::size_t d = term.degrees.size();
    Circuit c(d);
    for (std::size_t j = 0; j < d; ++j) {
        append_chebyshev_block(c, j, static_cast<unsigned>(term.degrees[j]), j, options);
    }
    return bind_signals(c, term.arguments);
}

/// Builds the plan for the nonzero-weight terms of an expansion.
inline LcuPlan plan_from_terms(std::span<const ChebyshevTerm> terms, std::size_t data_width,
                               ChebyshevCircuitOptions options = {}) {
    std::vector<double> weights;
    std::vector<Circuit> circuits;
    for (const auto &t : terms) {
        if (t.weight == 0.0) continue;
        if (t.degrees.size() != data_width) {
            throw std::invalid_argument("expansion term dimension differs from the data width");
        }
        for (double u : t.arguments) {
            if (!(std::abs(u) <= 1.0)) {
                throw std::logic_error("term argument " + std::to_string(u) + " of node " +
                                       t.source.to_string() + " lies outside [-1, 1]");
            }
        }
        weights.push_back(t.weight);
        circuits.push_back(term_circuit(t, options));
    }
    return make_plan(weights, std::move(circuits), data_width);
}

/// Unitary F on ceil(log2 M) qubits whose first column is sqrt(a_j / |a|_1),
/// zero-padded. The remaining columns come from a Householder reflection.
inline MatrixX prepare_state_unitary(std::span<const double> a) {
    const std::size_t s = ancilla_qubits_for(a.size());
    double norm1 = 0.0;
    for (double v : a) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw std::invalid_argument("state preparation needs positive finite coefficients");
        }
        norm1 += v;
    }
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << s);
    Eigen::VectorXd target = Eigen::VectorXd::Zero(dim);
    for (std::size_t j = 0; j < a.size(); ++j) target[static_cast<Eigen::Index>(j)] = std::sqrt(a[j] / norm1);

    Eigen::VectorXd w = -target;
    w[0] += 1.0;
    const double ww = w.squaredNorm();
    Eigen::MatrixXd f = Eigen::MatrixXd::Identity(dim, dim);
    if (ww > 1e-30) f -= (2.0 / ww) * w * w.transpose();
    // Reflection maps e_0 to target up to rounding; pin column 0 exactly.
    f.col(0) = target;
    return f.cast<Complex>();
}

/// Select oracle: selector register |j> applies sign_j * U_j to the data
/// qubits; selector states without a term act as identity.
inline GateOp multiplexer(const std::vector<Circuit> &term_circuits, std::span<const int> term_signs,
                          std::vector<Qubit> data_qubits, std::vector<Qubit> selector_qubits) {
    if (term_circuits.size() != term_signs.size()) {
        throw std::invalid_argument("multiplexer: one sign per term circuit");
    }
    std::vector<MultiplexBranch> branches;
    for (std::size_t j = 0; j < term_circuits.size(); ++j) {
        if (term_circuits[j].width() != data_qubits.size()) {
            throw std::invalid_argument("multiplexer: term " + std::to_string(j) +
                                        " does not match the data width");
        }
        branches.push_back({term_circuits[j], Complex{static_cast<double>(term_signs[j]), 0.0}});
    }
    return GateOp::multiplexed(std::move(selector_qubits), std::move(data_qubits), std::move(branches));
}

/// Default layout: data qubits 0..d-1, selectors d..d+s-1.
inline GateOp multiplexer(const std::vector<Circuit> &term_circuits, std::span<const int> term_signs) {
    if (term_circuits.empty()) throw std::invalid_argument("multiplexer needs at least one term");
    const std::size_t d = term_circuits.front().width();
    const std::size_t s = ancilla_qubits_for(term_circuits.size());
    std::vector<Qubit> data(d), selectors(s);
    for (std::size_t q = 0; q < d; ++q) data[q] = q;
    for (std::size_t b = 0; b < s; ++b) selectors[b] = d + b;
    return multiplexer(term_circuits, term_signs, std::move(data), std::move(selectors));
}

inline Circuit assemble_lcu(const LcuPlan &plan) {
    plan.validate();
    const std::size_t d = plan.data_width;
    const std::size_t s = plan.ancilla_count;
    Circuit c(d + s);
    std::vector<Qubit> ancillas(s);
    for (std::size_t b = 0; b < s; ++b) ancillas[b] = d + b;
    MatrixX f;
    if (s > 0) {
        f = prepare_state_unitary(plan.coefficients);
        c.append(GateOp::dense(f, ancillas));
    }
    c.append(multiplexer(plan.term_circuits, plan.term_signs));
    if (s > 0) c.append(GateOp::dense(f.adjoint(), ancillas));
    return c;
}

/// H on a fresh qubit 0, controlled-target on the rest, H again.
inline Circuit hadamard_test_circuit(const Circuit &target) {
    const std::size_t width = target.width() + 1;
    Circuit c(width);
    c.append(GateOp::single(gates::hadamard(), 0));
    c.append(controlled(shifted(target, 1, width), 0));
    c.append(GateOp::single(gates::hadamard(), 0));
    return c;
}

/// Re <0|target|0>, read exactly as <Z> on the test qubit.
inline double hadamard_test(const Circuit &target) {
    return expectation_z_first(run_circuit(hadamard_test_circuit(target)));
}

/// Shot-based estimate of the Hadamard test: the test qubit reads 0 with
/// probability (1 + <Z>) / 2.
inline double sampled_hadamard_test(const Circuit &target, std::uint64_t shots, std::uint64_t seed) {
    if (shots == 0) throw std::invalid_argument("sampled_hadamard_test needs at least one shot");
    const double z = hadamard_test(target);
    const double p0 = std::clamp(0.5 * (1.0 + z), 0.0, 1.0);
    std::mt19937_64 rng(seed);
    std::binomial_distribution<std::uint64_t> zeros(shots, p0);
    const auto k = static_cast<double>(zeros(rng));
    return 2.0 * k / static_cast<double>(shots) - 1.0;
}

/// <0|circuit|0> read off the final statevector.
inline Complex zero_amplitude(const Circuit &circuit) { return run_circuit(circuit).amplitude(0); }

struct CircuitEvaluation {
    double value = 0.0;            // one_norm * test_output
    double test_output = 0.0;      // Hadamard test, normalized by 1/|w|_1
    double direct_amplitude = 0.0; // Re <0|U_LCU|0> from the statevector
    double one_norm = 0.0;
    std::size_t term_count = 0;
    ResourceReport report; // of the full Hadamard-test circuit
};

/// Evaluates f_n^s(x) by simulating the QSP + LCU circuit under a Hadamard
/// test and rescaling by |w|_1. An expansion with no nonzero term yields 0
/// and an empty report.
inline CircuitEvaluation evaluate_via_circuit(const SurplusMap &s, std::span<const double> x,
                                              ChebyshevCircuitOptions options = {}) {
    const auto terms = chebyshev_expansion(s, x);
    CircuitEvaluation out;
    bool any = false;
    for (const auto &t : terms) any = any || t.weight != 0.0;
    if (!any) return out;

    const LcuPlan plan = plan_from_terms(terms, static_cast<std::size_t>(s.d()), options);
    const Circuit lcu = assemble_lcu(plan);
    const Circuit test = hadamard_test_circuit(lcu);
    out.test_output = expectation_z_first(run_circuit(test));
    out.direct_amplitude = zero_amplitude(lcu).real();
    out.one_norm = plan.one_norm;
    out.value = plan.one_norm * out.test_output;
    out.term_count = plan.term_count();
    out.report = resource_report(test);
    return out;
}

/// (2 |n|_1 + d M) log2 max(M, 2) for the nonzero terms of an expansion,
/// where |n|_1 sums the Chebyshev degrees of all M terms. 2 |n|_1 + d M is
/// the number of QSP gates across the term circuits.
inline double lcu_depth_envelope(std::span<const ChebyshevTerm> terms) {
    std::size_t m = 0;
    std::size_t degree_sum = 0;
    std::size_t d = 0;
    for (const auto &t : terms) {
        if (t.weight == 0.0) continue;
        ++m;
        d = t.degrees.size();
        for (int k : t.degrees) degree_sum += static_cast<std::size_t>(k);
    }
    if (m == 0) return 0.0;
    return static_cast<double>(2 * degree_sum + d * m) * std::log2(static_cast<double>(std::max<std::size_t>(m, 2)));
}

/// The Hadamard-test circuit evaluate_via_circuit() would simulate.
inline Circuit evaluation_circuit(const SurplusMap &s, std::span<const double> x,
                                  ChebyshevCircuitOptions options = {}) {
    const auto terms = chebyshev_expansion(s, x);
    bool any = false;
    for (const auto &t : terms) any = any || t.weight != 0.0;
    if (!any) return Circuit(0);
    return hadamard_test_circuit(
        assemble_lcu(plan_from_terms(terms, static_cast<std::size_t>(s.d()), options)));
}

} // namespace qkorobov
