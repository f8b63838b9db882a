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

#include "qkorobov/corpus.hpp"
#include "qkorobov/lcu.hpp"

#include "generators.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

namespace qkorobov {
namespace {

using testing::Gen;

Circuit single(std::size_t width, const Matrix2 &m, Qubit q = 0) {
    Circuit c(width);
    c.append(GateOp::single(m, q));
    return c;
}

TEST(AncillaCount, CeilLog2) {
    EXPECT_EQ(ancilla_qubits_for(1), 0U);
    EXPECT_EQ(ancilla_qubits_for(2), 1U);
    EXPECT_EQ(ancilla_qubits_for(3), 2U);
    EXPECT_EQ(ancilla_qubits_for(4), 2U);
    EXPECT_EQ(ancilla_qubits_for(5), 3U);
    EXPECT_THROW(ancilla_qubits_for(0), std::invalid_argument);
}

TEST(PrepareState, Examples) {
    const MatrixX f4 = prepare_state_unitary(std::vector<double>{1, 1, 1, 1});
    for (int j = 0; j < 4; ++j) EXPECT_NEAR(std::abs(f4(j, 0) - 0.5), 0.0, 1e-15);
    const MatrixX f2 = prepare_state_unitary(std::vector<double>{9, 16});
    EXPECT_NEAR(f2(0, 0).real(), 0.6, 1e-15);
    EXPECT_NEAR(f2(1, 0).real(), 0.8, 1e-15);
    const MatrixX f1 = prepare_state_unitary(std::vector<double>{3.0});
    ASSERT_EQ(f1.rows(), 1);
    EXPECT_EQ(f1(0, 0), Complex(1.0));
}

TEST(PrepareState, RejectsBadCoefficients) {
    EXPECT_THROW(prepare_state_unitary(std::vector<double>{}), std::invalid_argument);
    EXPECT_THROW(prepare_state_unitary(std::vector<double>{1.0, 0.0}), std::invalid_argument);
    EXPECT_THROW(prepare_state_unitary(std::vector<double>{1.0, -2.0}), std::invalid_argument);
}

TEST(Multiplexer, SingleTermHasNoSelector) {
    const std::vector<int> signs{1};
    Circuit c(1);
    c.append(multiplexer({single(1, gates::pauli_x())}, signs));
    EXPECT_NEAR((circuit_unitary(c) - MatrixX(gates::pauli_x())).norm(), 0.0, 1e-15);
}

TEST(Multiplexer, SelectorPicksTerm) {
    const std::vector<int> signs{1, 1};
    Circuit c(2);
    c.append(multiplexer({Circuit(1), single(1, gates::pauli_x())}, signs));
    // Data qubit 0, selector qubit 1.
    EXPECT_EQ(run_circuit(c, Statevector::basis(2, 0b00)).amplitude(0b00), Complex(1.0));
    EXPECT_EQ(run_circuit(c, Statevector::basis(2, 0b10)).amplitude(0b11), Complex(1.0));
}

TEST(Multiplexer, NegativeSignIsBranchPhase) {
    const std::vector<int> signs{1, -1};
    Circuit c(2);
    c.append(multiplexer({Circuit(1), Circuit(1)}, signs));
    MatrixX expected = MatrixX::Identity(4, 4);
    expected(2, 2) = -1.0;
    expected(3, 3) = -1.0;
    EXPECT_NEAR((circuit_unitary(c) - expected).norm(), 0.0, 1e-15);
}

TEST(Multiplexer, RejectsMismatchedWidths) {
    const std::vector<int> signs{1, 1};
    EXPECT_THROW(multiplexer({Circuit(1), Circuit(2)}, signs), std::invalid_argument);
}

TEST(AssembleLcu, Examples) {
    const std::vector<double> one{1.0};
    const auto plan1 = make_plan(one, {bind_signals(chebyshev_circuit(1), 0.25)}, 1);
    EXPECT_NEAR(zero_amplitude(assemble_lcu(plan1)).real(), 0.25, 1e-15);

    const std::vector<double> pair{1.0, 1.0};
    const auto plan2 = make_plan(pair, {Circuit(1), Circuit(1)}, 1);
    EXPECT_NEAR(zero_amplitude(assemble_lcu(plan2)).real(), 1.0, 1e-15);

    const std::vector<double> signed_pair{1.0, -1.0};
    const auto plan3 = make_plan(signed_pair, {Circuit(1), Circuit(1)}, 1);
    EXPECT_EQ(plan3.term_signs, std::vector<int>({1, -1}));
    EXPECT_NEAR(std::abs(zero_amplitude(assemble_lcu(plan3))), 0.0, 1e-15);
}

TEST(MakePlan, Validation) {
    const std::vector<double> w{1.0, 0.0};
    EXPECT_THROW(make_plan(w, {Circuit(1), Circuit(1)}, 1), std::invalid_argument);
    const std::vector<double> w2{1.0, 2.0};
    EXPECT_THROW(make_plan(w2, {Circuit(1)}, 1), std::invalid_argument);
    EXPECT_THROW(make_plan(w2, {Circuit(1), Circuit(2)}, 1), std::invalid_argument);
    const auto plan = make_plan(w2, {Circuit(1), Circuit(1)}, 1);
    EXPECT_DOUBLE_EQ(plan.one_norm, 3.0);
    EXPECT_EQ(plan.ancilla_count, 1U);
}

TEST(PlanFromTerms, RejectsArgumentsOutsideTheUnitInterval) {
    const ChebyshevTerm bad{1.0, {1}, {1.5}, GridIndex(LevelVector({1}), {1})};
    const std::vector<ChebyshevTerm> terms{bad};
    EXPECT_THROW(plan_from_terms(terms, 1), std::logic_error);
}

TEST(HadamardTest, Examples) {
    EXPECT_NEAR(hadamard_test(single(1, gates::pauli_z())), 1.0, 1e-15);
    EXPECT_NEAR(hadamard_test(single(1, gates::pauli_x())), 0.0, 1e-15);
    const Matrix2 phase = std::polar(1.0, std::numbers::pi / 3) * Matrix2::Identity();
    EXPECT_NEAR(hadamard_test(single(1, phase)), 0.5, 1e-15);
}

TEST(HadamardTest, CircuitShape) {
    const Circuit c = hadamard_test_circuit(single(2, gates::pauli_x(), 1));
    EXPECT_EQ(c.width(), 3U);
    EXPECT_EQ(c.size(), 3U);
}

TEST(SampledHadamardTest, IsSeededAndUnbiased) {
    const Matrix2 phase = std::polar(1.0, std::numbers::pi / 3) * Matrix2::Identity();
    const Circuit c = single(1, phase);
    EXPECT_EQ(sampled_hadamard_test(c, 1000, 42), sampled_hadamard_test(c, 1000, 42));
    // 10^6 shots: standard deviation sqrt(1 - 0.25) / 1000 < 1e-3.
    EXPECT_NEAR(sampled_hadamard_test(c, 1000000, 7), 0.5, 5e-3);
    EXPECT_THROW(sampled_hadamard_test(c, 0, 1), std::invalid_argument);
}

TEST(EvaluateViaCircuit, Examples) {
    const auto quad = make_function("prod-quad", 1);
    const auto s = surplus_coefficients(quad.f, 2, 1);
    const std::vector<double> x{0.125};
    const auto e = evaluate_via_circuit(s, x);
    EXPECT_NEAR(e.value, 3.0 / 32, 1e-9);
    EXPECT_EQ(e.term_count, 4U);
    EXPECT_EQ(e.report.width, 4U);

    const auto z = surplus_coefficients(zero_function(1).f, 3, 1);
    const auto ez = evaluate_via_circuit(z, x);
    EXPECT_EQ(ez.value, 0.0);
    EXPECT_EQ(ez.report.width, 0U);

    const auto quad2 = make_function("prod-quad", 2);
    const auto s2 = surplus_coefficients(quad2.f, 2, 2);
    const std::vector<double> x2{0.3, 0.3};
    EXPECT_NEAR(evaluate_via_circuit(s2, x2).value, evaluate_interpolant(s2, x2), 1e-9);
}

TEST(EvaluateViaCircuit, IdentityGatesDoNotChangeTheValue) {
    const auto fn = make_function("prod-sin", 2);
    const auto s = surplus_coefficients(fn.f, 3, 2);
    const std::vector<double> x{0.41, 0.77};
    const auto with = evaluate_via_circuit(s, x, {.include_identity_gates = true});
    const auto without = evaluate_via_circuit(s, x, {.include_identity_gates = false});
    EXPECT_NEAR(with.value, without.value, 1e-12);
    EXPECT_GT(with.report.touch_depth, without.report.touch_depth);
}

TEST(DepthEnvelope, CountsQspGates) {
    const std::vector<ChebyshevTerm> terms{{1.0, {0, 1}, {0.1, 0.2}, GridIndex(LevelVector({1, 1}), {1, 1})},
                                           {-1.0, {1, 1}, {0.1, 0.2}, GridIndex(LevelVector({1, 1}), {1, 1})},
                                           {0.0, {1, 1}, {0.1, 0.2}, GridIndex(LevelVector({1, 1}), {1, 1})}};
    // Two nonzero terms: |n|_1 = 3, d M = 4, log2 2 = 1.
    EXPECT_DOUBLE_EQ(lcu_depth_envelope(terms), 10.0);
}

// Properties --------------------------------------------------------------

TEST(Property, PrepareStateIsUnitaryWithExactFirstColumn) {
    Gen gen(31);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> a(static_cast<std::size_t>(gen.integer(1, 40)));
        double norm = 0.0;
        for (auto &v : a) {
            v = gen.uniform(1e-3, 5.0);
            norm += v;
        }
        const MatrixX f = prepare_state_unitary(a);
        ASSERT_LT(unitarity_defect(f), 1e-12);
        for (Eigen::Index j = 0; j < f.rows(); ++j) {
            const double expected = j < static_cast<Eigen::Index>(a.size()) ? std::sqrt(a[static_cast<std::size_t>(j)] / norm) : 0.0;
            ASSERT_NEAR(std::abs(f(j, 0) - expected), 0.0, 1e-14);
        }
    }
}

TEST(Property, LcuAmplitudeIsNormalizedWeightedSum) {
    Gen gen(37);
    for (int trial = 0; trial < 100; ++trial) {
        const auto d = static_cast<std::size_t>(gen.integer(1, 3));
        const int m = gen.integer(1, 9);
        std::vector<double> w;
        std::vector<Circuit> circuits;
        Complex expected = 0.0;
        double norm = 0.0;
        for (int j = 0; j < m; ++j) {
            double v = gen.uniform(-2.0, 2.0);
            if (v == 0.0) v = 1.0;
            w.push_back(v);
            circuits.push_back(gen.circuit(d, 4));
            expected += v * zero_amplitude(circuits.back());
            norm += std::abs(v);
        }
        const auto plan = make_plan(w, circuits, d);
        ASSERT_EQ(plan.ancilla_count, ancilla_qubits_for(static_cast<std::size_t>(m)));
        const Circuit lcu = assemble_lcu(plan);
        ASSERT_EQ(lcu.width(), d + plan.ancilla_count);
        ASSERT_NEAR(std::abs(zero_amplitude(lcu) - expected / norm), 0.0, 1e-12);
        ASSERT_NEAR(hadamard_test(lcu), (expected / norm).real(), 1e-12);
    }
}

TEST(Property, CircuitMatchesClassicalInterpolant) {
    Gen gen(41);
    for (const auto &fn : corpus()) {
        if (fn.d > 2) continue;
        for (int n = 1; n <= 4; ++n) {
            const auto s = surplus_coefficients(fn.f, n, fn.d);
            for (int trial = 0; trial < 20; ++trial) {
                const auto x = gen.point(fn.d);
                const auto e = evaluate_via_circuit(s, x);
                ASSERT_NEAR(e.value, evaluate_interpolant(s, x), 1e-9) << fn.name << " n=" << n;
                ASSERT_NEAR(e.direct_amplitude, e.test_output, 1e-12);
                const std::size_t s_bits = ancilla_qubits_for(e.term_count);
                ASSERT_EQ(e.report.width, static_cast<std::size_t>(fn.d) + s_bits + 1);
            }
        }
    }
}

TEST(Property, ThreeDimensionalCircuitMatches) {
    Gen gen(43);
    const auto fn = make_function("prod-quad", 3);
    const auto s = surplus_coefficients(fn.f, 2, 3);
    for (int trial = 0; trial < 5; ++trial) {
        const auto x = gen.point(3);
        EXPECT_NEAR(evaluate_via_circuit(s, x).value, evaluate_interpolant(s, x), 1e-9);
    }
}

} // namespace
} // namespace qkorobov
