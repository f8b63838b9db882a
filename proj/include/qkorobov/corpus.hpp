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
 * Test functions of mixed smoothness that vanish on the boundary of [0,1]^d.
 *
 * Every function is a product of one-dimensional factors taken from
 * x(1-x), sin(pi x) and x^2(1-x), so its mixed second derivative
 * d^{2d} f / dx_1^2 ... dx_d^2 is the product of the factors' second
 * derivatives and both seminorms factorize.
 */

#pragma once

#include "qkorobov/sparsegrid.hpp"

#include <cmath>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qkorobov {

enum class FactorKind { quadratic, sine, cubic };

struct Factor {
    FactorKind kind;

    [[nodiscard]] double value(double x) const {
        switch (kind) {
        case FactorKind::quadratic: return x * (1.0 - x);
        case FactorKind::sine: return std::sin(std::numbers::pi * x);
        case FactorKind::cubic: return x * x * (1.0 - x);
        }
        return 0.0;
    }

    [[nodiscard]] double second_derivative(double x) const {
        switch (kind) {
        case FactorKind::quadratic: return -2.0;
        case FactorKind::sine: return -std::numbers::pi * std::numbers::pi * std::sin(std::numbers::pi * x);
        case FactorKind::cubic: return 2.0 - 6.0 * x;
        }
        return 0.0;
    }

    /// sup over [0,1] of |f''|.
    [[nodiscard]] double sup_second_derivative() const {
        switch (kind) {
        case FactorKind::quadratic: return 2.0;
        case FactorKind::sine: return std::numbers::pi * std::numbers::pi;
        case FactorKind::cubic: return 4.0; // |2 - 6x| peaks at x = 1
        }
        return 0.0;
    }

    /// L2([0,1]) norm of f''.
    [[nodiscard]] double l2_second_derivative() const {
        switch (kind) {
        case FactorKind::quadratic: return 2.0;
        case FactorKind::sine: return std::numbers::pi * std::numbers::pi / std::numbers::sqrt2;
        case FactorKind::cubic: return 2.0;
        }
        return 0.0;
    }

    [[nodiscard]] std::string expression() const {
        switch (kind) {
        case FactorKind::quadratic: return "x(1-x)";
        case FactorKind::sine: return "sin(pi x)";
        case FactorKind::cubic: return "x^2(1-x)";
        }
        return "";
    }
};

struct KorobovTestFunction {
    std::string name;
    int d = 1;
    Function f;
    Function mixed_derivative;
    double seminorm_inf = 0.0; // sup |D f|
    double seminorm_2 = 0.0;   // ||D f||_{L2([0,1]^d)}
};

inline KorobovTestFunction product_function(std::string name, std::vector<Factor> factors) {
    if (factors.empty()) throw std::invalid_argument("a product function needs at least one factor");
    KorobovTestFunction fn;
    fn.name = std::move(name);
    fn.d = static_cast<int>(factors.size());
    fn.seminorm_inf = 1.0;
    fn.seminorm_2 = 1.0;
    for (const auto &factor : factors) {
        fn.seminorm_inf *= factor.sup_second_derivative();
        fn.seminorm_2 *= factor.l2_second_derivative();
    }
    fn.f = [factors](std::span<const double> x) {
        double v = 1.0;
        for (std::size_t j = 0; j < factors.size(); ++j) v *= factors[j].value(x[j]);
        return v;
    };
    fn.mixed_derivative = [factors](std::span<const double> x) {
        double v = 1.0;
        for (std::size_t j = 0; j < factors.size(); ++j) v *= factors[j].second_derivative(x[j]);
        return v;
    };
    return fn;
}

inline KorobovTestFunction zero_function(int d) {
    KorobovTestFunction fn;
    fn.name = "zero";
    fn.d = d;
    fn.f = [](std::span<const double>) { return 0.0; };
    fn.mixed_derivative = fn.f;
    return fn;
}

/// Named families: "prod-quad", "prod-sin", "prod-cubic" (one identical
/// factor per dimension) and "zero".
inline KorobovTestFunction make_function(const std::string &family, int d) {
    if (d < 1) throw std::invalid_argument("dimension must be at least 1");
    if (family == "zero") return zero_function(d);
    FactorKind kind;
    if (family == "prod-quad") {
        kind = FactorKind::quadratic;
    } else if (family == "prod-sin") {
        kind = FactorKind::sine;
    } else if (family == "prod-cubic") {
        kind = FactorKind::cubic;
    } else {
        throw std::invalid_argument("unknown function '" + family + "'");
    }
    return product_function(family, std::vector<Factor>(static_cast<std::size_t>(d), Factor{kind}));
}

/// Parses a product such as "x(1-x)*sin(pi x)*x^2(1-x)"; one factor per
/// dimension. Whitespace is ignored, and '*' inside parentheses is allowed.
inline KorobovTestFunction parse_expression(const std::string &spec) {
    std::vector<std::string> parts;
    std::string current;
    int depth = 0;
    for (char c : spec) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == '*' && depth == 0) {
            parts.push_back(current);
            current.clear();
            continue;
        }
        if (c != ' ' && c != '*' && c != '\t') current.push_back(c);
    }
    parts.push_back(current);

    std::vector<Factor> factors;
    std::string canonical;
    for (const auto &p : parts) {
        Factor factor{FactorKind::quadratic};
        if (p == "x(1-x)") {
            factor.kind = FactorKind::quadratic;
        } else if (p == "sin(pix)") {
            factor.kind = FactorKind::sine;
        } else if (p == "x^2(1-x)") {
            factor.kind = FactorKind::cubic;
        } else {
            throw std::invalid_argument("unsupported factor '" + p +
                                        "'; expected x(1-x), sin(pi x) or x^2(1-x)");
        }
        canonical += (canonical.empty() ? "" : "*") + factor.expression();
        factors.push_back(factor);
    }
    return product_function(canonical, std::move(factors));
}

/// prod x_j(1-x_j) for d = 1, 2, 3; prod sin(pi x_j) for d = 1, 2;
/// x^2(1-x) for d = 1 and x_1(1-x_1) x_2^2(1-x_2) for d = 2.
inline std::vector<KorobovTestFunction> corpus() {
    std::vector<KorobovTestFunction> out;
    for (int d : {1, 2, 3}) out.push_back(make_function("prod-quad", d));
    for (int d : {1, 2}) out.push_back(make_function("prod-sin", d));
    out.push_back(make_function("prod-cubic", 1));
    out.push_back(parse_expression("x(1-x)*x^2(1-x)"));
    return out;
}

} // namespace qkorobov
