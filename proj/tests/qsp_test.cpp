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

#include "qkorobov/qsp.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

namespace qkorobov {
namespace {

constexpr Complex kI{0.0, 1.0};

// Trigonometric oracles, independent of the recurrences under test.
double t_oracle(unsigned r, double x) { return std::cos(r * std::acos(x)); }

double u_oracle(int r, double x) {
    if (r < 0) return 0.0;
    // U_r(1) = r + 1 and U_r(-1) = (-1)^r (r + 1); the quotient below is
    // ill-conditioned there.
    if (std::abs(x) == 1.0) return (x > 0 || r % 2 == 0) ? r + 1.0 : -(r + 1.0);
    const double theta = std::acos(x);
    return std::sin((r + 1) * theta) / std::sin(theta);
}

Matrix2 simulate(const Circuit &c) { return circuit_unitary(c); }

TEST(SignalEncoding, Examples) {
    EXPECT_NEAR((signal_encoding(SignalPoint(1.0)) - Matrix2::Identity()).norm(), 0.0, 1e-15);
    Matrix2 ix;
    ix << 0.0, kI, kI, 0.0;
    EXPECT_NEAR((signal_encoding(SignalPoint(0.0)) - ix).norm(), 0.0, 1e-15);
    Matrix2 w6;
    w6 << 0.6, 0.8 * kI, 0.8 * kI, 0.6;
    EXPECT_NEAR((signal_encoding(SignalPoint(0.6)) - w6).cwiseAbs().maxCoeff(), 0.0, 1e-15);
}

TEST(SignalEncoding, IsUnitaryAndRejectsOutOfRange) {
    for (double x = -1.0; x <= 1.0; x += 0.01) {
        EXPECT_LT(unitarity_defect(signal_encoding(SignalPoint(x))), 1e-14);
    }
    EXPECT_THROW(SignalPoint(1.0000001), std::domain_error);
    EXPECT_THROW(SignalPoint(-2.0), std::domain_error);
    EXPECT_THROW(SignalPoint(std::nan("")), std::domain_error);
}

TEST(SignalPoint, ComplementIsExactAtTheEnds) {
    EXPECT_EQ(SignalPoint(1.0).complement(), 0.0);
    EXPECT_EQ(SignalPoint(-1.0).complement(), 0.0);
    EXPECT_NEAR(SignalPoint(0.5).theta(), std::numbers::pi / 3, 1e-15);
}

TEST(QspAnsatz, Examples) {
    EXPECT_NEAR((qsp_ansatz(PhaseSequence({0.0}), SignalPoint(0.3)) - Matrix2::Identity()).norm(), 0.0, 1e-15);
    EXPECT_NEAR((qsp_ansatz(PhaseSequence({0.0, 0.0}), SignalPoint(0.6)) - signal_encoding(SignalPoint(0.6))).norm(),
                0.0, 1e-15);
    EXPECT_NEAR(std::abs(qsp_ansatz(PhaseSequence::zeros(3), SignalPoint(0.6))(0, 0) - Complex(-0.28)), 0.0, 1e-15);
    EXPECT_THROW(PhaseSequence({}), std::invalid_argument);
}

TEST(QspAnsatz, NonzeroPhasesStayUnitary) {
    const PhaseSequence phases({0.1, -0.7, 2.3, 0.4});
    EXPECT_EQ(phases.signal_count(), 3U);
    EXPECT_LT(unitarity_defect(qsp_ansatz(phases, SignalPoint(0.37))), 1e-14);
}

TEST(ChebyshevCircuit, Examples) {
    const Circuit c0 = chebyshev_circuit(0);
    EXPECT_EQ(c0.size(), 1U);
    EXPECT_NEAR(std::abs(simulate(bind_signals(c0, 0.42))(0, 0) - Complex(1.0)), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(simulate(bind_signals(chebyshev_circuit(1), 0.25))(0, 0) - Complex(0.25)), 0.0, 1e-14);
    // 8x^4 - 8x^2 + 1 at 0.9 is -0.2312.
    EXPECT_NEAR(simulate(bind_signals(chebyshev_circuit(4), 0.9))(0, 0).real(), -0.2312, 1e-12);
}

TEST(ChebyshevCircuit, StructureAndCounts) {
    for (unsigned r : {0U, 1U, 3U, 10U}) {
        const Circuit c = chebyshev_circuit(r);
        EXPECT_EQ(c.width(), 1U);
        EXPECT_EQ(c.size(), 2 * r + 1);
        const auto report = resource_report(c);
        EXPECT_EQ(report.touch_depth, 2 * r + 1);
        EXPECT_EQ(report.multi_qubit_depth, 0U);
        const Circuit lean = chebyshev_circuit(r, {.include_identity_gates = false});
        EXPECT_EQ(lean.size(), r);
    }
    EXPECT_EQ(resource_report(chebyshev_circuit(3)).touch_depth, 7U);
}

TEST(ChebyshevCircuit, UnboundCircuitCannotRun) {
    EXPECT_THROW(run_circuit(chebyshev_circuit(2)), std::logic_error);
}

TEST(BindSignals, RejectsMissingSlotsAndBadValues) {
    Circuit c(2);
    append_chebyshev_block(c, 0, 2, 0);
    append_chebyshev_block(c, 1, 1, 1);
    const std::vector<double> one{0.3};
    EXPECT_THROW(bind_signals(c, one), std::out_of_range);
    EXPECT_THROW(bind_signals(c, std::vector<double>{0.3, 1.5}), std::domain_error);
    const Circuit bound = bind_signals(c, std::vector<double>{0.3, -0.4});
    const Statevector s = run_circuit(bound);
    EXPECT_NEAR(s.amplitude(0).real(), t_oracle(2, 0.3) * t_oracle(1, -0.4), 1e-14);
}

TEST(Chebyshev, FirstKindExamples) {
    EXPECT_EQ(chebyshev_first_kind(0, 0.7), 1.0);
    EXPECT_NEAR(chebyshev_first_kind(2, 0.5), -0.5, 1e-15);
    EXPECT_NEAR(chebyshev_first_kind(3, 0.5), -1.0, 1e-15);
    EXPECT_NEAR(chebyshev_first_kind(5, 0.3), 0.99888, 1e-14);
    EXPECT_NEAR(chebyshev_first_kind(3, 2.0L), 26.0L, 1e-15L);
}

TEST(Chebyshev, SecondKindExamples) {
    EXPECT_EQ(chebyshev_second_kind(0, 0.123), 1.0);
    EXPECT_NEAR(chebyshev_second_kind(1, 0.5), 1.0, 1e-15);
    EXPECT_NEAR(chebyshev_second_kind(2, 0.5), 0.0, 1e-15);
}

// Sweep used by the block-matrix checks: r <= 32, 201 uniform points in [-1, 1].
template <class Fn>
void sweep(Fn &&fn) {
    for (unsigned r = 0; r <= 32; ++r) {
        for (int k = 0; k <= 200; ++k) fn(r, -1.0 + k / 100.0);
    }
}

TEST(Property, RecurrencesMatchTrigonometricOracles) {
    sweep([](unsigned r, double x) {
        ASSERT_NEAR(chebyshev_first_kind(r, x), t_oracle(r, x), 1e-10) << "r=" << r << " x=" << x;
        ASSERT_NEAR(chebyshev_second_kind(r, x), u_oracle(static_cast<int>(r), x), 1e-9 * (r + 1))
            << "r=" << r << " x=" << x;
    });
}

TEST(Property, BlockMatrixIdentity) {
    sweep([](unsigned r, double x) {
        const Matrix2 u = simulate(bind_signals(chebyshev_circuit(r), x));
        const double t = chebyshev_first_kind(r, x);
        const double q = r == 0 ? 0.0 : chebyshev_second_kind(r - 1, x);
        const Complex off = kI * SignalPoint(x).complement() * q;
        ASSERT_NEAR(std::abs(u(0, 0) - t), 0.0, 1e-10);
        ASSERT_NEAR(std::abs(u(1, 1) - t), 0.0, 1e-10);
        ASSERT_NEAR(std::abs(u(0, 1) - off), 0.0, 1e-10);
        ASSERT_NEAR(std::abs(u(1, 0) - off), 0.0, 1e-10);
    });
}

TEST(Property, PythagoreanIdentity) {
    sweep([](unsigned r, double x) {
        const double t = chebyshev_first_kind(r, x);
        const double q = r == 0 ? 0.0 : chebyshev_second_kind(r - 1, x);
        ASSERT_NEAR(t * t + (1 - x * x) * q * q, 1.0, 1e-10);
    });
}

TEST(Property, Parity) {
    sweep([](unsigned r, double x) {
        const double sign = r % 2 == 0 ? 1.0 : -1.0;
        ASSERT_NEAR(chebyshev_first_kind(r, -x), sign * chebyshev_first_kind(r, x), 1e-12);
    });
}

TEST(Property, AnsatzAgreesWithCircuit) {
    sweep([](unsigned r, double x) {
        const Matrix2 a = qsp_ansatz(PhaseSequence::zeros(r + 1), SignalPoint(x));
        const Matrix2 c = simulate(bind_signals(chebyshev_circuit(r), x));
        ASSERT_LT((a - c).cwiseAbs().maxCoeff(), 1e-12);
    });
}

} // namespace
} // namespace qkorobov
