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

// Composite tensor-product Gauss-Legendre quadrature on boxes.

#pragma once

#include <boost/math/quadrature/gauss.hpp>

#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace qkorobov {

/// Nodes and weights on [-1, 1].
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

template <unsigned N>
GaussRule gauss_legendre_rule() {
    using G = boost::math::quadrature::gauss<double, N>;
    // Boost stores the non-negative half of the symmetric rule.
    const auto &abscissa = G::abscissa();
    const auto &weights = G::weights();
    GaussRule rule;
    for (std::size_t k = 0; k < abscissa.size(); ++k) {
        rule.nodes.push_back(abscissa[k]);
        rule.weights.push_back(weights[k]);
        if (abscissa[k] != 0.0) {
            rule.nodes.push_back(-abscissa[k]);
            rule.weights.push_back(weights[k]);
        }
    }
    return rule;
}

/// Tensor product of composite rules: dimension j is split at
/// breakpoints[j] (sorted, at least two entries) and `rule` is applied on
/// every cell.
inline double integrate_cells(const std::vector<std::vector<double>> &breakpoints, const GaussRule &rule,
                              const std::function<double(std::span<const double>)> &f) {
    const std::size_t d = breakpoints.size();
    std::vector<std::vector<double>> nodes(d), weights(d);
    for (std::size_t j = 0; j < d; ++j) {
        if (breakpoints[j].size() < 2) {
            throw std::invalid_argument("integrate_cells: every dimension needs at least one cell");
        }
        for (std::size_t c = 0; c + 1 < breakpoints[j].size(); ++c) {
            const double lo = breakpoints[j][c];
            const double hi = breakpoints[j][c + 1];
            const double half = 0.5 * (hi - lo);
            const double mid = 0.5 * (hi + lo);
            for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
                nodes[j].push_back(mid + half * rule.nodes[k]);
                weights[j].push_back(half * rule.weights[k]);
            }
        }
    }
    if (d == 0) return f({});

    std::vector<std::size_t> counter(d, 0);
    std::vector<double> x(d);
    double total = 0.0;
    while (true) {
        double w = 1.0;
        for (std::size_t j = 0; j < d; ++j) {
            x[j] = nodes[j][counter[j]];
            w *= weights[j][counter[j]];
        }
        total += w * f(x);
        std::size_t j = d;
        while (true) {
            if (j == 0) return total;
            --j;
            if (++counter[j] < nodes[j].size()) break;
            counter[j] = 0;
        }
    }
}

/// Uniform breakpoints lo, lo + h, ..., hi with `cells` cells.
inline std::vector<double> uniform_breakpoints(double lo, double hi, std::size_t cells) {
    std::vector<double> out(cells + 1);
    for (std::size_t c = 0; c <= cells; ++c) {
        out[c] = lo + (hi - lo) * static_cast<double>(c) / static_cast<double>(cells);
    }
    return out;
}

} // namespace qkorobov
