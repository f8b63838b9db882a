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
 * Quantum signal processing on one qubit.
 *
 * The signal rotation is W(x) = exp(i arccos(x) sigma_x). With all phases
 * zero the alternating sequence I W I W ... I of length 2r+1 has
 * <0|W(x)^r|0> = T_r(x), the Chebyshev polynomial of the first kind.
 */

#pragma once

#include "qkorobov/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <concepts>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qkorobov {

/// A scalar in [-1, 1].
class SignalPoint {
  public:
    explicit SignalPoint(double x) : x_(x) {
        if (!(std::abs(x) <= 1.0)) {
            throw std::domain_error("signal point " + std::to_string(x) + " lies outside [-1, 1]");
        }
    }

    [[nodiscard]] double value() const { return x_; }
    [[nodiscard]] double theta() const { return std::acos(x_); }
    /// sqrt(1 - x^2), clamped so that x = +-1 gives exactly 0.
    [[nodiscard]] double complement() const { return std::sqrt(std::max(0.0, 1.0 - x_ * x_)); }

  private:
    double x_;
};

/// Phases (phi_0, ..., phi_l) in radians; l = size() - 1 signal rotations.
class PhaseSequence {
  public:
    explicit PhaseSequence(std::vector<double> phases) : phases_(std::move(phases)) {
        if (phases_.empty()) {
            throw std::invalid_argument("phase sequence must hold at least one phase");
        }
    }

    static PhaseSequence zeros(std::size_t count) { return PhaseSequence(std::vector<double>(count, 0.0)); }

    [[nodiscard]] std::span<const double> phases() const { return phases_; }
    [[nodiscard]] std::size_t signal_count() const { return phases_.size() - 1; }

  private:
    std::vector<double> phases_;
};

/// [[x, i sqrt(1-x^2)], [i sqrt(1-x^2), x]].
inline Matrix2 signal_encoding(SignalPoint x) {
    const Complex off{0.0, x.complement()};
    Matrix2 w;
    w << x.value(), off, off, x.value();
    return w;
}

/// e^{i phi_0 Z} W(x) e^{i phi_1 Z} ... W(x) e^{i phi_l Z}.
inline Matrix2 qsp_ansatz(const PhaseSequence &phases, SignalPoint x) {
    const Matrix2 w = signal_encoding(x);
    const auto phi = phases.phases();
    Matrix2 out = gates::z_phase(phi[0]);
    for (std::size_t j = 1; j < phi.size(); ++j) {
        out = out * w * gates::z_phase(phi[j]);
    }
    return out;
}

template <std::floating_point Real>
Real chebyshev_first_kind(unsigned r, Real x) {
    if (r == 0) return Real(1);
    Real prev = Real(1);
    Real curr = x;
    for (unsigned k = 2; k <= r; ++k) {
        Real next = Real(2) * x * curr - prev;
        prev = curr;
        curr = next;
    }
    return curr;
}

/// U_0 = 1, U_1 = 2x, U_r = 2x U_{r-1} - U_{r-2}.
template <std::floating_point Real>
Real chebyshev_second_kind(unsigned r, Real x) {
    if (r == 0) return Real(1);
    Real prev = Real(1);
    Real curr = Real(2) * x;
    for (unsigned k = 2; k <= r; ++k) {
        Real next = Real(2) * x * curr - prev;
        prev = curr;
        curr = next;
    }
    return curr;
}

struct ChebyshevCircuitOptions {
    /// Emit the e^{i 0 Z} phase gates explicitly, so the block has 2r+1 gates.
    bool include_identity_gates = true;
};

/// Appends the degree-r zero-phase QSP block on `qubit`; its signal gates
/// read parameter `slot`.
inline void append_chebyshev_block(Circuit &circuit, Qubit qubit, unsigned r, std::size_t slot,
                                   ChebyshevCircuitOptions options = {}) {
    const Matrix2 phase = gates::z_phase(0.0);
    if (options.include_identity_gates) circuit.append(GateOp::single(phase, qubit));
    for (unsigned k = 0; k < r; ++k) {
        circuit.append(GateOp::signal(qubit, slot));
        if (options.include_identity_gates) circuit.append(GateOp::single(phase, qubit));
    }
}

/// Width-1 circuit U_r with <0|U_r(x)|0> = T_r(x) once slot 0 is bound to x.
inline Circuit chebyshev_circuit(unsigned r, ChebyshevCircuitOptions options = {}) {
    Circuit c(1);
    append_chebyshev_block(c, 0, r, 0, options);
    return c;
}

namespace detail {

inline GateOp bind_op(const GateOp &op, std::span<const Matrix2> signals) {
    return std::visit(
        [&](const auto &g) -> GateOp {
            using T = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<T, SignalGate>) {
                if (g.slot >= signals.size()) {
                    throw std::out_of_range("no value supplied for signal slot " + std::to_string(g.slot));
                }
                return GateOp::single(signals[g.slot], g.target);
            } else if constexpr (std::is_same_v<T, MultiplexedGate>) {
                std::vector<MultiplexBranch> branches;
                for (const auto &b : g.branches) {
                    Circuit body(b.body.width());
                    for (const auto &inner : b.body.ops()) body.append(bind_op(inner, signals));
                    branches.push_back({std::move(body), b.phase});
                }
                return GateOp::multiplexed(g.selectors, g.targets, std::move(branches));
            } else if constexpr (std::is_same_v<T, ControlledGate>) {
                return GateOp::controlled(g.control, bind_op(*g.inner, signals));
            } else {
                return op;
            }
        },
        op.kind());
}

} // namespace detail

/// Replaces every signal gate with W(values[slot]).
inline Circuit bind_signals(const Circuit &circuit, std::span<const double> values) {
    std::vector<Matrix2> signals;
    signals.reserve(values.size());
    for (double v : values) signals.push_back(signal_encoding(SignalPoint(v)));
    Circuit out(circuit.width());
    for (const auto &op : circuit.ops()) out.append(detail::bind_op(op, signals));
    return out;
}

inline Circuit bind_signals(const Circuit &circuit, double x) {
    return bind_signals(circuit, std::span<const double>(&x, 1));
}

} // namespace qkorobov
