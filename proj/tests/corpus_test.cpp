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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qkorobov {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(Corpus, ContainsTheRequiredFamilies) {
    const auto all = corpus();
    std::vector<std::pair<std::string, int>> names;
    for (const auto &fn : all) names.emplace_back(fn.name, fn.d);
    for (int d : {1, 2, 3}) EXPECT_NE(std::find(names.begin(), names.end(), std::pair<std::string, int>("prod-quad", d)), names.end());
    for (int d : {1, 2}) EXPECT_NE(std::find(names.begin(), names.end(), std::pair<std::string, int>("prod-sin", d)), names.end());
    EXPECT_NE(std::find(names.begin(), names.end(), std::pair<std::string, int>("prod-cubic", 1)), names.end());
}

TEST(Corpus, ProductQuadraticValues) {
    const auto fn = make_function("prod-quad", 2);
    const std::vector<double> mid{0.5, 0.5}, any{0.12, 0.93};
    EXPECT_EQ(fn.f(mid), 1.0 / 16);
    EXPECT_EQ(fn.mixed_derivative(any), 4.0);
    EXPECT_EQ(fn.seminorm_inf, 4.0);
    EXPECT_EQ(fn.seminorm_2, 4.0);
    const std::vector<double> x3{0.1, 0.2, 0.3};
    EXPECT_EQ(make_function("prod-quad", 3).mixed_derivative(x3), -8.0);
}

TEST(Corpus, SineSeminorms) {
    EXPECT_NEAR(make_function("prod-sin", 1).seminorm_inf, kPi * kPi, 1e-15);
    EXPECT_NEAR(make_function("prod-sin", 2).seminorm_inf, std::pow(kPi, 4), 1e-12);
    EXPECT_NEAR(make_function("prod-sin", 2).seminorm_2, std::pow(kPi, 4) / 2, 1e-12);
}

TEST(Corpus, AsymmetricProduct) {
    const auto fn = parse_expression("x(1-x) * x^2(1-x)");
    EXPECT_EQ(fn.d, 2);
    EXPECT_EQ(fn.name, "x(1-x)*x^2(1-x)");
    EXPECT_EQ(fn.seminorm_inf, 8.0);
    EXPECT_EQ(fn.seminorm_2, 4.0);
    const std::vector<double> x{0.5, 0.5};
    EXPECT_EQ(fn.f(x), 0.25 * 0.125);
    EXPECT_EQ(fn.mixed_derivative(x), -2.0 * (2.0 - 3.0));
}

TEST(ParseExpression, AcceptsSpacingAndRejectsUnknownFactors) {
    EXPECT_EQ(parse_expression("sin(pi x)*x(1-x)").d, 2);
    EXPECT_EQ(parse_expression("  sin( pi  x ) ").d, 1);
    EXPECT_THROW(parse_expression("cos(pi x)"), std::invalid_argument);
    EXPECT_THROW(parse_expression("x(1-x)**x(1-x)"), std::invalid_argument);
    EXPECT_THROW(parse_expression(""), std::invalid_argument);
}

TEST(MakeFunction, Errors) {
    EXPECT_THROW(make_function("prod-exp", 1), std::invalid_argument);
    EXPECT_THROW(make_function("prod-quad", 0), std::invalid_argument);
    EXPECT_EQ(make_function("zero", 3).seminorm_inf, 0.0);
}

// Properties --------------------------------------------------------------

TEST(Property, CorpusVanishesOnTheBoundary) {
    for (const auto &fn : corpus()) {
        const auto d = static_cast<std::size_t>(fn.d);
        std::vector<double> x(d);
        for (std::size_t face = 0; face < d; ++face) {
            for (double side : {0.0, 1.0}) {
                for (int k = 0; k <= 20; ++k) {
                    for (std::size_t j = 0; j < d; ++j) x[j] = std::fmod(0.137 * (j + 1) + 0.05 * k, 1.0);
                    x[face] = side;
                    ASSERT_LE(std::abs(fn.f(x)), 1e-12) << fn.name;
                }
            }
        }
    }
}

TEST(Property, SupSeminormDominatesSamples) {
    for (const auto &fn : corpus()) {
        const auto d = static_cast<std::size_t>(fn.d);
        const int m = d == 1 ? 4096 : d == 2 ? 256 : 48;
        std::vector<int> counter(d, 0);
        std::vector<double> x(d);
        double worst = 0.0;
        double l2 = 0.0;
        while (true) {
            for (std::size_t j = 0; j < d; ++j) x[j] = (counter[j] + 0.5) / m;
            const double v = fn.mixed_derivative(x);
            worst = std::max(worst, std::abs(v));
            l2 += v * v;
            std::size_t j = d;
            bool done = false;
            while (true) {
                if (j == 0) {
                    done = true;
                    break;
                }
                --j;
                if (++counter[j] < m) break;
                counter[j] = 0;
            }
            if (done) break;
        }
        EXPECT_GE(fn.seminorm_inf + 1e-9, worst) << fn.name;
        // Midpoint rule on smooth integrands: loose consistency check.
        EXPECT_NEAR(std::sqrt(l2 / std::pow(m, static_cast<double>(d))), fn.seminorm_2, 1e-2 * fn.seminorm_2) << fn.name;
    }
}

} // namespace
} // namespace qkorobov
