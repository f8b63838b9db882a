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
 * Error norms, convergence studies and coefficient-bound audits for
 * sparse-grid interpolants.
 */

#pragma once

#include "qkorobov/corpus.hpp"
#include "qkorobov/quadrature.hpp"
#include "qkorobov/sparsegrid.hpp"

#include <boost/math/distributions/students_t.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qkorobov {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Errors below this are treated as rounding noise and left out of fits.
inline constexpr double kRoundingFloor = 1e-13;

inline void check_norm_exponent(double p) {
    if (!(p >= 2.0)) throw std::invalid_argument("p must be at least 2 or inf");
}

struct LpErrorOptions {
    /// Grid resolution: 2^{level+4}+1 points per dimension for p = inf and
    /// 2^{level+2} Gauss-Legendre cells per dimension for finite p.
    int level = 4;
    /// Finite p with d >= 3 uses Monte Carlo instead of a tensor rule.
    int max_quadrature_dimension = 2;
    std::size_t samples = 200000;
    std::uint64_t seed = 0;
};

struct LpErrorEstimate {
    double value = 0.0;
    double standard_error = 0.0; // zero for deterministic rules
};

/// ||f - g||_{L^p([0,1]^d)}.
inline LpErrorEstimate lp_error_estimate(const Function &f, const Function &g, double p, int d,
                                         const LpErrorOptions &options = {}) {
    check_norm_exponent(p);
    if (d < 1) throw std::invalid_argument("dimension must be at least 1");
    if (options.level < 0 || options.level > 40) throw std::invalid_argument("grid level out of range");
    const auto diff = [&](std::span<const double> x) { return std::abs(f(x) - g(x)); };
    const auto dims = static_cast<std::size_t>(d);

    if (std::isinf(p)) {
        const std::int64_t intervals = std::int64_t{1} << (options.level + 4);
        std::vector<std::int64_t> counter(dims, 0);
        std::vector<double> x(dims, 0.0);
        double worst = 0.0;
        while (true) {
            for (std::size_t j = 0; j < dims; ++j) {
                x[j] = std::ldexp(static_cast<double>(counter[j]), -(options.level + 4));
            }
            worst = std::max(worst, diff(x));
            std::size_t j = dims;
            while (true) {
                if (j == 0) return {worst, 0.0};
                --j;
                if (++counter[j] <= intervals) break;
                counter[j] = 0;
            }
        }
    }

    if (d <= options.max_quadrature_dimension) {
        static const GaussRule rule = gauss_legendre_rule<8>();
        const auto edges = uniform_breakpoints(0.0, 1.0, std::size_t{1} << (options.level + 2));
        const std::vector<std::vector<double>> breakpoints(dims, edges);
        const double integral = integrate_cells(breakpoints, rule, [&](std::span<const double> x) {
            const double e = diff(x);
            return p == 2.0 ? e * e : std::pow(e, p);
        });
        return {std::pow(std::max(integral, 0.0), 1.0 / p), 0.0};
    }

    if (options.samples < 2) throw std::invalid_argument("Monte Carlo needs at least two samples");
    std::mt19937_64 rng(options.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> x(dims);
    double mean = 0.0;
    double m2 = 0.0;
    for (std::size_t k = 0; k < options.samples; ++k) {
        for (auto &xj : x) xj = unit(rng);
        const double e = diff(x);
        const double v = p == 2.0 ? e * e : std::pow(e, p);
        const double delta = v - mean;
        mean += delta / static_cast<double>(k + 1);
        m2 += delta * (v - mean);
    }
    const double variance = m2 / static_cast<double>(options.samples - 1);
    const double se_mean = std::sqrt(variance / static_cast<double>(options.samples));
    const double value = std::pow(mean, 1.0 / p);
    // Delta method for m -> m^{1/p}.
    const double se = mean > 0.0 ? value / (p * mean) * se_mean : 0.0;
    return {value, se};
}

inline double lp_error(const Function &f, const Function &g, double p, int d,
                       const LpErrorOptions &options = {}) {
    return lp_error_estimate(f, g, p, d, options).value;
}

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    /// Half-width of the 95% confidence interval of the slope; NaN with
    /// fewer than three points.
    double slope_ci = std::numeric_limits<double>::quiet_NaN();
};

/// Unweighted least squares y = slope * x + intercept.
inline LineFit fit_line(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size() || xs.size() < 2) {
        throw std::invalid_argument("a line fit needs at least two points");
    }
    const double m = static_cast<double>(xs.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        mx += xs[k];
        my += ys[k];
    }
    mx /= m;
    my /= m;
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        sxx += (xs[k] - mx) * (xs[k] - mx);
        sxy += (xs[k] - mx) * (ys[k] - my);
    }
    if (sxx == 0.0) throw std::invalid_argument("a line fit needs distinct abscissae");
    LineFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    if (xs.size() >= 3) {
        double sse = 0.0;
        for (std::size_t k = 0; k < xs.size(); ++k) {
            const double r = ys[k] - fit.intercept - fit.slope * xs[k];
            sse += r * r;
        }
        const double dof = m - 2.0;
        const boost::math::students_t dist(dof);
        const double t = boost::math::quantile(boost::math::complement(dist, 0.025));
        fit.slope_ci = t * std::sqrt(sse / dof / sxx);
    }
    return fit;
}

struct ConvergenceRow {
    int n = 0;
    std::uint64_t N = 0;
    double error_inf = 0.0;
    double error_2 = 0.0;
    std::optional<double> error_p; // only for 2 < p < inf
    double error_2_standard_error = 0.0;
};

struct ConvergenceStudy {
    std::string function;
    int d = 0;
    double p = kInfinity;
    std::vector<ConvergenceRow> rows;
    std::optional<double> slope;     // fit of log2 error against log2 N
    std::optional<double> slope_ci;  // 95% half-width
    std::optional<double> corrected_slope; // after dividing by log2^{3(d-1)} N
    int log_exponent = 0;            // 3(d-1)
    /// max and min over rows of error / (N^{-2} log2^{3(d-1)} N).
    std::optional<double> shape_constant;
    std::optional<double> shape_floor;

    /// Error in the norm the study was run for.
    [[nodiscard]] double error(const ConvergenceRow &row) const {
        if (std::isinf(p)) return row.error_inf;
        if (p == 2.0) return row.error_2;
        return row.error_p.value_or(row.error_2);
    }
};

inline double shape_model(std::uint64_t N, int d) {
    const double n = static_cast<double>(N);
    return std::pow(n, -2.0) * std::pow(std::log2(n), 3.0 * (d - 1));
}

/// Interpolation errors for n in [n_first, n_last].
inline ConvergenceStudy convergence_study(const KorobovTestFunction &fn, double p, int n_first, int n_last,
                                          std::uint64_t seed = 0) {
    check_norm_exponent(p);
    if (n_first < 1 || n_last < n_first) throw std::invalid_argument("n range must be nonempty and increasing");
    ConvergenceStudy study;
    study.function = fn.name;
    study.d = fn.d;
    study.p = p;
    study.log_exponent = 3 * (fn.d - 1);

    for (int n = n_first; n <= n_last; ++n) {
        const SurplusMap s = surplus_coefficients(fn.f, n, fn.d);
        Function interpolant = [&s](std::span<const double> x) { return evaluate_interpolant(s, x); };
        if (NodalInterpolant::fits(n, fn.d)) interpolant = NodalInterpolant(s);
        LpErrorOptions options;
        options.level = n;
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(n)};
        std::uint32_t words[2];
        seq.generate(words, words + 2);
        options.seed = (std::uint64_t{words[0]} << 32) | words[1];

        ConvergenceRow row;
        row.n = n;
        row.N = grid_count(n, fn.d);
        row.error_inf = lp_error(fn.f, interpolant, kInfinity, fn.d, options);
        const auto e2 = lp_error_estimate(fn.f, interpolant, 2.0, fn.d, options);
        row.error_2 = e2.value;
        row.error_2_standard_error = e2.standard_error;
        if (!std::isinf(p) && p != 2.0) row.error_p = lp_error(fn.f, interpolant, p, fn.d, options);
        study.rows.push_back(row);
    }

    std::vector<double> xs;
    std::vector<double> ys;
    std::vector<double> corrected;
    for (const auto &row : study.rows) {
        const double e = study.error(row);
        if (!(e >= kRoundingFloor) || row.N < 2) continue;
        xs.push_back(std::log2(static_cast<double>(row.N)));
        ys.push_back(std::log2(e));
        corrected.push_back(ys.back() - study.log_exponent * std::log2(xs.back()));
        const double ratio = e / shape_model(row.N, fn.d);
        study.shape_constant = std::max(study.shape_constant.value_or(ratio), ratio);
        study.shape_floor = std::min(study.shape_floor.value_or(ratio), ratio);
    }
    if (xs.size() >= 2) {
        const LineFit fit = fit_line(xs, ys);
        study.slope = fit.slope;
        if (std::isfinite(fit.slope_ci)) study.slope_ci = fit.slope_ci;
        study.corrected_slope = fit_line(xs, corrected).slope;
    }
    return study;
}

/// N / (2^n n^{d-1}).
inline double grid_ratio(int n, int d) {
    return static_cast<double>(grid_count(n, d)) / (std::ldexp(1.0, n) * std::pow(n, d - 1));
}

/// max |stencil - integral formula| over the level-n grid.
inline double dual_oracle_difference(const KorobovTestFunction &fn, int n) {
    static const GaussRule rule = gauss_legendre_rule<32>();
    const SurplusMap s = surplus_coefficients(fn.f, n, fn.d);
    double worst = 0.0;
    s.for_each([&](const GridIndex &g, double v) {
        worst = std::max(worst, std::abs(v - integral_surplus(fn.mixed_derivative, g, rule)));
    });
    return worst;
}

enum class CoefficientBound { sup_norm, l2_norm };

struct BoundViolation {
    GridIndex node;
    CoefficientBound bound;
    double coefficient;
    double limit;
};

struct CoefficientAudit {
    std::size_t coefficient_count = 0;
    double max_ratio_inf = 0.0; // max |v| / (2^{-d-2|l|_1} |f|_{2,inf})
    double max_ratio_2 = 0.0;   // max |v| / (2^{-d}(2/3)^{d/2} 2^{-3|l|_1/2} ||D f||_{L2(supp)})
    std::optional<GridIndex> argmax_inf;
    std::optional<GridIndex> argmax_2;
    std::vector<BoundViolation> violations;

    [[nodiscard]] bool passed() const { return violations.empty(); }
};

/// Relative slack allowed for rounding in the ratios.
inline constexpr double kBoundTolerance = 1e-12;

/// ||D f||_{L2} over the support of phi_{l,i}.
inline double support_l2_norm(const Function &mixed_derivative, const GridIndex &g) {
    static const GaussRule rule = gauss_legendre_rule<32>();
    std::vector<std::vector<double>> breakpoints(g.dimension());
    for (std::size_t j = 0; j < g.dimension(); ++j) {
        const double h = g.level().mesh_width(j);
        breakpoints[j] = {g.node(j) - h, g.node(j), g.node(j) + h};
    }
    const double sq = integrate_cells(breakpoints, rule, [&](std::span<const double> x) {
        const double v = mixed_derivative(x);
        return v * v;
    });
    return std::sqrt(std::max(sq, 0.0));
}

/// Checks both decay bounds for every surplus of f on the level-n grid.
/// `scale` multiplies every coefficient first; values other than 1 exist to
/// exercise the failure path.
inline CoefficientAudit coefficient_bound_audit(const KorobovTestFunction &fn, int n, double scale = 1.0) {
    const SurplusMap s = surplus_coefficients(fn.f, n, fn.d);
    const int d = fn.d;
    const double l2_prefactor = std::ldexp(1.0, -d) * std::pow(2.0 / 3.0, 0.5 * d);
    CoefficientAudit audit;
    s.for_each([&](const GridIndex &g, double raw) {
        const double v = std::abs(raw * scale);
        const int l1 = g.level().l1_norm();
        ++audit.coefficient_count;

        const double bound_inf = std::ldexp(1.0, -d - 2 * l1) * fn.seminorm_inf;
        const double bound_2 =
            l2_prefactor * std::pow(2.0, -1.5 * l1) * support_l2_norm(fn.mixed_derivative, g);
        const auto check = [&](double limit, CoefficientBound which, double &max_ratio,
                               std::optional<GridIndex> &argmax) {
            if (v == 0.0) return;
            const double ratio = limit > 0.0 ? v / limit : kInfinity;
            if (ratio > max_ratio) {
                max_ratio = ratio;
                argmax = g;
            }
            if (ratio > 1.0 + kBoundTolerance) audit.violations.push_back({g, which, raw * scale, limit});
        };
        check(bound_inf, CoefficientBound::sup_norm, audit.max_ratio_inf, audit.argmax_inf);
        check(bound_2, CoefficientBound::l2_norm, audit.max_ratio_2, audit.argmax_2);
    });
    return audit;
}

inline std::string to_string(CoefficientBound b) {
    return b == CoefficientBound::sup_norm ? "sup-norm" : "l2-norm";
}

} // namespace qkorobov
