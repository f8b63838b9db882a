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
 * Asymptotic circuit-size bounds for reaching L^p accuracy epsilon.
 *
 * The bounds are big-O expressions; every hidden constant is set to 1, so
 * the numbers are in relative units and only their ordering and
 * monotonicity carry meaning. With L = log2(1/eps):
 *
 * p in {2, inf}:
 *   z      = eps^{-1/d} L^{3/2} / d
 *   depth  = d^2 (2 L^{3/2})^d / (eps^{1/2} L^{3/2}) * W(z)
 *   width  = 2d + d W(z)
 *   depth' = d eps^{-(1/2 + 1/d)} (2 L^{3/2})^d            (W(z) <= z)
 *   width' = 2d + eps^{-1/d} L^{3/2}
 *
 * 2 < p < inf, alpha = (3p-1)/(2p-1), beta = alpha (d-1), q = p/(2p-1):
 *   A      = (6 beta log2 beta)^alpha alpha^alpha eps^{-q/d} L^alpha
 *   depth  = d^2 (12 beta log2 beta)^beta alpha^beta eps^{-q} L^beta * W(A/d)
 *   width  = 2d + d W(A/d)
 *   depth' = d (12 beta log2 beta)^{alpha+beta} alpha^{alpha+beta}
 *            eps^{-q(1+1/d)} L^{alpha+beta} eps^{-q/d}
 *   width' = 2d + A
 */

#pragma once

#include "qkorobov/lambert_w.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace qkorobov {

enum class BoundFormula { optimal_grid, general_p };

struct ResourceEstimate {
    double epsilon = 0.0;
    int d = 0;
    double p = 0.0; // +inf for the sup norm
    double alpha = 0.0;
    double beta = 0.0;
    BoundFormula formula = BoundFormula::optimal_grid;
    double lambert_w_value = 0.0;
    double predicted_depth_bound = 0.0;
    double predicted_width_bound = 0.0;
    double simplified_depth_bound = 0.0;
    double simplified_width_bound = 0.0;
};

/// (3p-1)/(2p-1), with the p -> inf limit 3/2.
inline double korobov_alpha(double p) {
    if (std::isinf(p)) return 1.5;
    return (3.0 * p - 1.0) / (2.0 * p - 1.0);
}

namespace detail {

inline void check_epsilon(double epsilon, int d) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
        throw std::domain_error("epsilon must lie in (0, 1)");
    }
    if (d < 1) throw std::invalid_argument("dimension must be at least 1");
}

} // namespace detail

/// Bounds for p in {2, inf}, where the sparse grid is the optimal one.
inline ResourceEstimate optimal_grid_estimate(double epsilon, int d, double p = 2.0) {
    detail::check_epsilon(epsilon, d);
    ResourceEstimate r;
    r.epsilon = epsilon;
    r.d = d;
    r.p = p;
    r.alpha = korobov_alpha(p);
    r.beta = r.alpha * (d - 1);
    r.formula = BoundFormula::optimal_grid;

    const double dd = d;
    const double log_term = std::log2(1.0 / epsilon);
    const double l32 = std::pow(log_term, 1.5);
    const double z = std::pow(epsilon, -1.0 / dd) * l32 / dd;
    r.lambert_w_value = lambert_w(z);
    const double grid_factor = std::pow(2.0 * l32, dd);
    r.predicted_depth_bound = dd * dd * grid_factor / (std::sqrt(epsilon) * l32) * r.lambert_w_value;
    r.predicted_width_bound = 2.0 * dd + dd * r.lambert_w_value;
    r.simplified_depth_bound = dd * std::pow(epsilon, -(0.5 + 1.0 / dd)) * grid_factor;
    r.simplified_width_bound = 2.0 * dd + std::pow(epsilon, -1.0 / dd) * l32;
    return r;
}

/// Bounds for general 2 <= p <= inf from the alpha/beta family. Needs d >= 2:
/// at d = 1, beta = 0 and the beta log2 beta factors vanish.
inline ResourceEstimate general_p_estimate(double epsilon, int d, double p) {
    detail::check_epsilon(epsilon, d);
    if (!(p >= 2.0)) throw std::domain_error("p must be at least 2");
    if (d < 2) throw std::domain_error("the general-p bound needs d >= 2");
    ResourceEstimate r;
    r.epsilon = epsilon;
    r.d = d;
    r.p = p;
    r.formula = BoundFormula::general_p;
    r.alpha = korobov_alpha(p);
    r.beta = r.alpha * (d - 1);

    const double dd = d;
    const double a = r.alpha;
    const double b = r.beta;
    const double q = std::isinf(p) ? 0.5 : p / (2.0 * p - 1.0);
    const double log_term = std::log2(1.0 / epsilon);
    const double blb = b * std::log2(b);

    const double big_a = std::pow(6.0 * blb, a) * std::pow(a, a) * std::pow(epsilon, -q / dd) *
                         std::pow(log_term, a);
    r.lambert_w_value = lambert_w(big_a / dd);
    r.predicted_depth_bound = dd * dd * std::pow(12.0 * blb, b) * std::pow(a, b) * std::pow(epsilon, -q) *
                              std::pow(log_term, b) * r.lambert_w_value;
    r.predicted_width_bound = 2.0 * dd + dd * r.lambert_w_value;
    r.simplified_depth_bound = dd * std::pow(12.0 * blb, a + b) * std::pow(a, a + b) *
                               std::pow(epsilon, -q * (1.0 + 1.0 / dd)) * std::pow(log_term, a + b) *
                               std::pow(epsilon, -q / dd);
    r.simplified_width_bound = 2.0 * dd + big_a;
    return r;
}

/// Picks the optimal-grid bound for p in {2, inf} and the general-p bound
/// for 2 < p < inf.
inline ResourceEstimate resource_estimate(double epsilon, int d, double p) {
    if (p == 2.0 || std::isinf(p)) return optimal_grid_estimate(epsilon, d, p);
    if (!(p > 2.0)) throw std::domain_error("p must satisfy 2 <= p <= inf");
    return general_p_estimate(epsilon, d, p);
}

inline std::string to_string(BoundFormula f) {
    return f == BoundFormula::optimal_grid ? "optimal-grid" : "general-p";
}

} // namespace qkorobov
