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

// Seeded random inputs for property tests.

#pragma once

#include "qkorobov/simulator.hpp"
#include "qkorobov/sparsegrid.hpp"

#include <cmath>
#include <algorithm>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

namespace qkorobov::testing {

class Gen {
  public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    bool coin() { return integer(0, 1) == 1; }

    /// Haar-ish single-qubit unitary from three Euler angles and a phase.
    Matrix2 unitary2() {
        const double a = uniform(0, 2 * std::numbers::pi);
        const double b = uniform(0, 2 * std::numbers::pi);
        const double c = uniform(0, 2 * std::numbers::pi);
        const double t = std::acos(uniform(-1, 1)) / 2;
        const Complex g = std::polar(1.0, a);
        Matrix2 u;
        u << g * std::polar(std::cos(t), b), g * std::polar(std::sin(t), c),
            -g * std::polar(std::sin(t), -c), g * std::polar(std::cos(t), -b);
        return u;
    }

    /// Random unitary of dimension n from the QR factorization of a complex
    /// Gaussian matrix.
    MatrixX unitary(Eigen::Index n) {
        std::normal_distribution<double> normal;
        MatrixX m(n, n);
        for (Eigen::Index r = 0; r < n; ++r)
            for (Eigen::Index c = 0; c < n; ++c) m(r, c) = Complex(normal(rng_), normal(rng_));
        Eigen::HouseholderQR<MatrixX> qr(m);
        return qr.householderQ();
    }

    std::vector<Qubit> distinct_qubits(std::size_t width, std::size_t count) {
        std::vector<Qubit> all(width);
        for (std::size_t q = 0; q < width; ++q) all[q] = q;
        std::shuffle(all.begin(), all.end(), rng_);
        all.resize(count);
        return all;
    }

    /// Circuit of single-qubit, dense two-qubit and controlled gates.
    Circuit circuit(std::size_t width, int ops) {
        Circuit c(width);
        for (int k = 0; k < ops; ++k) {
            const int kind = width >= 2 ? integer(0, 2) : 0;
            if (kind == 0) {
                c.append(GateOp::single(unitary2(), static_cast<Qubit>(integer(0, static_cast<int>(width) - 1))));
            } else if (kind == 1) {
                c.append(GateOp::dense(unitary(4), distinct_qubits(width, 2)));
            } else {
                const auto q = distinct_qubits(width, 2);
                c.append(GateOp::controlled(q[0], GateOp::single(unitary2(), q[1])));
            }
        }
        return c;
    }

    Statevector state(std::size_t width) {
        std::normal_distribution<double> normal;
        std::vector<Complex> a(std::size_t{1} << width);
        double norm = 0.0;
        for (auto &v : a) {
            v = Complex(normal(rng_), normal(rng_));
            norm += std::norm(v);
        }
        for (auto &v : a) v /= std::sqrt(norm);
        return Statevector::from_amplitudes(std::move(a));
    }

    std::vector<double> point(int d) {
        std::vector<double> x(static_cast<std::size_t>(d));
        for (auto &v : x) v = uniform(0.0, 1.0);
        return x;
    }

    std::mt19937_64 &engine() { return rng_; }

  private:
    std::mt19937_64 rng_;
};

} // namespace qkorobov::testing
