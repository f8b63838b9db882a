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
 * Piecewise-linear hierarchical basis on [0,1]^d and its level-n sparse grid.
 *
 * Node (l, i) sits at x_j = i_j 2^{-l_j} with i_j odd; its basis function
 * is the tensor product of hats of half-width 2^{-l_j}. The sparse grid of
 * level n keeps every level vector with |l|_1 <= n + d - 1.
 */

#pragma once

#include "qkorobov/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qkorobov {

using Function = std::function<double(std::span<const double>)>;

class LevelVector {
  public:
    LevelVector() = default;
    explicit LevelVector(std::vector<int> levels) : levels_(std::move(levels)) {
        for (int l : levels_) {
            if (l < 1 || l > 60) {
                throw std::invalid_argument("level components must lie in [1, 60]");
            }
        }
    }

    [[nodiscard]] std::size_t dimension() const { return levels_.size(); }
    [[nodiscard]] int operator[](std::size_t j) const { return levels_[j]; }
    [[nodiscard]] const std::vector<int> &values() const { return levels_; }
    [[nodiscard]] int l1_norm() const {
        int s = 0;
        for (int l : levels_) s += l;
        return s;
    }
    [[nodiscard]] int max_norm() const {
        return levels_.empty() ? 0 : *std::max_element(levels_.begin(), levels_.end());
    }
    /// h_{l_j} = 2^{-l_j}
    [[nodiscard]] double mesh_width(std::size_t j) const { return std::ldexp(1.0, -levels_[j]); }

    auto operator<=>(const LevelVector &) const = default;

  private:
    std::vector<int> levels_;
};

/// A sparse-grid node (l, i); every i_j is odd with 1 <= i_j <= 2^{l_j} - 1.
class GridIndex {
  public:
    GridIndex(LevelVector level, std::vector<std::int64_t> index)
        : level_(std::move(level)), index_(std::move(index)) {
        if (index_.size() != level_.dimension()) {
            throw std::invalid_argument("grid index and level differ in dimension");
        }
        for (std::size_t j = 0; j < index_.size(); ++j) {
            const std::int64_t upper = (std::int64_t{1} << level_[j]) - 1;
            if (index_[j] < 1 || index_[j] > upper || index_[j] % 2 == 0) {
                throw std::invalid_argument("grid index component " + std::to_string(index_[j]) +
                                            " is not an odd integer in [1, 2^l - 1]");
            }
        }
    }

    [[nodiscard]] const LevelVector &level() const { return level_; }
    [[nodiscard]] const std::vector<std::int64_t> &index() const { return index_; }
    [[nodiscard]] std::size_t dimension() const { return index_.size(); }
    [[nodiscard]] double node(std::size_t j) const {
        return std::ldexp(static_cast<double>(index_[j]), -level_[j]);
    }
    [[nodiscard]] std::vector<double> node_point() const {
        std::vector<double> x(dimension());
        for (std::size_t j = 0; j < x.size(); ++j) x[j] = node(j);
        return x;
    }

    [[nodiscard]] std::string to_string() const {
        std::ostringstream os;
        os << "(l=[";
        for (std::size_t j = 0; j < dimension(); ++j) os << (j ? "," : "") << level_[j];
        os << "], i=[";
        for (std::size_t j = 0; j < dimension(); ++j) os << (j ? "," : "") << index_[j];
        os << "])";
        return os.str();
    }

    auto operator<=>(const GridIndex &) const = default;

  private:
    LevelVector level_;
    std::vector<std::int64_t> index_;
};

/// max(0, 1 - |u|)
inline double hat(double u) { return std::max(0.0, 1.0 - std::abs(u)); }

inline double scaled_hat(const GridIndex &g, std::span<const double> x) {
    if (x.size() != g.dimension()) {
        throw std::invalid_argument("scaled_hat: point dimension mismatch");
    }
    double value = 1.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
        value *= hat(std::ldexp(x[j] - g.node(j), g.level()[j]));
    }
    return value;
}

/// All l >= 1 with |l|_1 <= n + d - 1, lexicographic.
inline std::vector<LevelVector> enumerate_levels(int n, int d) {
    if (n < 1 || d < 1) {
        throw std::invalid_argument("enumerate_levels needs n >= 1 and d >= 1");
    }
    std::vector<LevelVector> out;
    std::vector<int> current(static_cast<std::size_t>(d), 1);
    const int budget = n + d - 1;
    std::function<void(std::size_t, int)> fill = [&](std::size_t j, int remaining) {
        if (j == current.size()) {
            out.emplace_back(current);
            return;
        }
        const int tail = static_cast<int>(current.size() - j - 1);
        for (int l = 1; l + tail <= remaining; ++l) {
            current[j] = l;
            fill(j + 1, remaining - l);
        }
    };
    fill(0, budget);
    return out;
}

/// Odd indices per dimension, Cartesian product in lexicographic order.
inline std::vector<GridIndex> index_set(const LevelVector &level) {
    const std::size_t d = level.dimension();
    std::vector<GridIndex> out;
    std::vector<std::int64_t> i(d, 1);
    while (true) {
        out.emplace_back(level, i);
        std::size_t j = d;
        while (true) {
            if (j == 0) return out;
            --j;
            i[j] += 2;
            if (i[j] < (std::int64_t{1} << level[j])) break;
            i[j] = 1;
        }
    }
}

/// Exact number of sparse-grid nodes.
inline std::uint64_t grid_count(int n, int d) {
    std::uint64_t total = 0;
    for (const auto &level : enumerate_levels(n, d)) {
        total += std::uint64_t{1} << (level.l1_norm() - d);
    }
    return total;
}

namespace detail {

/// Writes the odd index of the level-l hat whose open support contains x;
/// false if x sits on an even node of that level (all hats vanish there).
inline bool locate_1d(int level, double x, std::int64_t &index) {
    const double t = std::ldexp(x, level);
    const double fl = std::floor(t);
    if (!(t > 0.0) || !(t < std::ldexp(1.0, level))) return false;
    const auto k = static_cast<std::int64_t>(fl);
    if (fl == t) {
        if (k % 2 == 0) return false;
        index = k;
        return true;
    }
    index = (k % 2 == 1) ? k : k + 1;
    return true;
}

} // namespace detail

/// The unique i with x in the open support of phi_{l,i}, if any.
inline std::optional<GridIndex> locate_support(const LevelVector &level, std::span<const double> x) {
    if (x.size() != level.dimension()) {
        throw std::invalid_argument("locate_support: point dimension mismatch");
    }
    std::vector<std::int64_t> index(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) {
        if (!detail::locate_1d(level[j], x[j], index[j])) return std::nullopt;
    }
    return GridIndex(level, std::move(index));
}

/// Hierarchical surplus coefficients over the level-n sparse grid.
///
/// Storage is one dense block per level vector; blocks and the indices
/// within a block iterate lexicographically.
class SurplusMap {
  public:
    SurplusMap(int n, int d) : n_(n), d_(d) {
        if (d > 16 || n + d - 1 - d > 40) {
            throw std::invalid_argument("sparse grid too large to store");
        }
        for (auto &level : enumerate_levels(n, d)) {
            std::size_t count = std::size_t{1} << (level.l1_norm() - d);
            blocks_.push_back({std::move(level), std::vector<double>(count, 0.0)});
        }
    }

    [[nodiscard]] int n() const { return n_; }
    [[nodiscard]] int d() const { return d_; }
    [[nodiscard]] std::size_t level_count() const { return blocks_.size(); }
    [[nodiscard]] const LevelVector &level(std::size_t k) const { return blocks_[k].level; }
    [[nodiscard]] std::span<const double> level_values(std::size_t k) const { return blocks_[k].values; }

    [[nodiscard]] std::size_t size() const {
        std::size_t s = 0;
        for (const auto &b : blocks_) s += b.values.size();
        return s;
    }

    [[nodiscard]] bool contains(const GridIndex &g) const { return find_block(g.level()) != nullptr; }

    [[nodiscard]] double at(const GridIndex &g) const {
        const Block *b = find_block(g.level());
        if (b == nullptr) throw std::out_of_range("node " + g.to_string() + " is not on the sparse grid");
        return b->values[offset(g.level(), g.index())];
    }

    void set(const GridIndex &g, double value) {
        Block *b = const_cast<Block *>(find_block(g.level()));
        if (b == nullptr) throw std::out_of_range("node " + g.to_string() + " is not on the sparse grid");
        b->values[offset(g.level(), g.index())] = value;
    }

    /// Calls fn(const GridIndex&, double) in lexicographic (level, index) order.
    template <class Fn>
    void for_each(Fn &&fn) const {
        for (const auto &b : blocks_) {
            std::size_t k = 0;
            for (const auto &g : index_set(b.level)) fn(g, b.values[k++]);
        }
    }

    [[nodiscard]] std::vector<std::pair<GridIndex, double>> entries() const {
        std::vector<std::pair<GridIndex, double>> out;
        for_each([&out](const GridIndex &g, double v) { out.emplace_back(g, v); });
        return out;
    }

    /// Coefficient at (level k, index) without building a GridIndex.
    [[nodiscard]] double value_at(std::size_t k, std::span<const std::int64_t> index) const {
        return blocks_[k].values[offset(blocks_[k].level, index)];
    }

  private:
    struct Block {
        LevelVector level;
        std::vector<double> values;
    };

    [[nodiscard]] const Block *find_block(const LevelVector &level) const {
        auto it = std::lower_bound(blocks_.begin(), blocks_.end(), level,
                                   [](const Block &b, const LevelVector &l) { return b.level < l; });
        return (it != blocks_.end() && it->level == level) ? &*it : nullptr;
    }

    static std::size_t offset(const LevelVector &level, std::span<const std::int64_t> index) {
        std::size_t flat = 0;
        for (std::size_t j = 0; j < index.size(); ++j) {
            flat = (flat << (level[j] - 1)) + static_cast<std::size_t>((index[j] - 1) / 2);
        }
        return flat;
    }

    int n_;
    int d_;
    std::vector<Block> blocks_;
};

class NonFiniteValueError : public std::runtime_error {
  public:
    NonFiniteValueError(const GridIndex &node, std::vector<double> point)
        : std::runtime_error("function is not finite near node " + node.to_string()), node_(node),
          point_(std::move(point)) {}

    [[nodiscard]] const GridIndex &node() const { return node_; }
    [[nodiscard]] const std::vector<double> &point() const { return point_; }

  private:
    GridIndex node_;
    std::vector<double> point_;
};

/// Surplus of one node: the tensor product of the 1-D stencil
/// [-1/2, 1, -1/2] at spacing h_l, applied to f around the node.
inline double stencil_surplus(const Function &f, const GridIndex &g) {
    const std::size_t d = g.dimension();
    std::size_t combos = 1;
    for (std::size_t j = 0; j < d; ++j) combos *= 3;
    std::vector<double> x(d);
    double total = 0.0;
    for (std::size_t c = 0; c < combos; ++c) {
        std::size_t code = c;
        double weight = 1.0;
        for (std::size_t j = 0; j < d; ++j) {
            const int shift = static_cast<int>(code % 3) - 1;
            code /= 3;
            x[j] = g.node(j) + shift * g.level().mesh_width(j);
            if (shift != 0) weight *= -0.5;
        }
        const double value = f(x);
        if (!std::isfinite(value)) throw NonFiniteValueError(g, x);
        total += weight * value;
    }
    return total;
}

inline SurplusMap surplus_coefficients(const Function &f, int n, int d) {
    SurplusMap map(n, d);
    for (std::size_t k = 0; k < map.level_count(); ++k) {
        for (const auto &g : index_set(map.level(k))) map.set(g, stencil_surplus(f, g));
    }
    return map;
}

/// Integral form of the surplus,
///   v = int prod_j (-2^{-(l_j+1)} phi_{l_j,i_j}(x_j)) D f(x) dx,
/// with D f the mixed second derivative d^{2d} f / dx_1^2 ... dx_d^2,
/// integrated with the given rule on both cells of every hat.
inline double integral_surplus(const Function &mixed_derivative, const GridIndex &g,
                               const GaussRule &rule) {
    const std::size_t d = g.dimension();
    std::vector<std::vector<double>> breakpoints(d);
    double scale = 1.0;
    for (std::size_t j = 0; j < d; ++j) {
        const double h = g.level().mesh_width(j);
        breakpoints[j] = {g.node(j) - h, g.node(j), g.node(j) + h};
        scale *= -std::ldexp(1.0, -(g.level()[j] + 1));
    }
    return scale * integrate_cells(breakpoints, rule, [&](std::span<const double> x) {
               return scaled_hat(g, x) * mixed_derivative(x);
           });
}

inline void check_point(std::span<const double> x, int d, const char *what) {
    if (x.size() != static_cast<std::size_t>(d)) {
        throw std::invalid_argument(std::string(what) + ": point has dimension " +
                                    std::to_string(x.size()) + ", expected " + std::to_string(d));
    }
    for (double v : x) {
        if (!(v >= 0.0 && v <= 1.0)) {
            throw std::domain_error(std::string(what) + ": point component outside [0, 1]");
        }
    }
}

/// f_n^s(x) = sum over the sparse grid of v_{l,i} phi_{l,i}(x). At most one
/// node per level contributes.
inline double evaluate_interpolant(const SurplusMap &s, std::span<const double> x) {
    check_point(x, s.d(), "evaluate_interpolant");
    const std::size_t d = x.size();
    std::int64_t index_buf[64];
    std::span<std::int64_t> index(index_buf, d);
    double total = 0.0;
    for (std::size_t k = 0; k < s.level_count(); ++k) {
        const LevelVector &level = s.level(k);
        double basis = 1.0;
        bool supported = true;
        for (std::size_t j = 0; j < d && supported; ++j) {
            supported = detail::locate_1d(level[j], x[j], index[j]);
            if (supported) {
                basis *= hat(std::ldexp(x[j], level[j]) - static_cast<double>(index[j]));
            }
        }
        if (supported) total += s.value_at(k, index) * basis;
    }
    return total;
}

/// The interpolant tabulated on the full level-n mesh. f_n^s is d-linear on
/// every cell of that mesh, so d-linear interpolation of the table
/// reproduces it exactly up to rounding, at O(2^d) cost per point.
class NodalInterpolant {
  public:
    explicit NodalInterpolant(const SurplusMap &s)
        : d_(static_cast<std::size_t>(s.d())), n_(s.n()), side_((std::size_t{1} << s.n()) + 1) {
        if (d_ > 16) throw std::length_error("nodal table supports d <= 16");
        std::size_t total = 1;
        for (std::size_t j = 0; j < d_; ++j) {
            if (total > (std::size_t{1} << 26) / side_) throw std::length_error("nodal table too large");
            total *= side_;
        }
        values_.assign(total, 0.0);
        std::vector<std::size_t> counter(d_, 0);
        std::vector<double> x(d_);
        for (std::size_t flat = 0; flat < total; ++flat) {
            for (std::size_t j = 0; j < d_; ++j) x[j] = std::ldexp(static_cast<double>(counter[j]), -n_);
            values_[flat] = evaluate_interpolant(s, x);
            for (std::size_t j = d_; j-- > 0;) {
                if (++counter[j] < side_) break;
                counter[j] = 0;
            }
        }
    }

    /// Whether the table for (n, d) fits the size limit.
    static bool fits(int n, int d) {
        return d <= 16 && std::pow(std::ldexp(1.0, n) + 1.0, d) <= static_cast<double>(std::size_t{1} << 26);
    }

    [[nodiscard]] double operator()(std::span<const double> x) const {
        check_point(x, static_cast<int>(d_), "NodalInterpolant");
        const std::size_t cells = side_ - 1;
        std::size_t base = 0;
        std::size_t stride[16];
        double frac[16];
        std::size_t step = 1;
        for (std::size_t j = d_; j-- > 0;) {
            const double t = std::ldexp(x[j], n_);
            auto c = static_cast<std::size_t>(t);
            if (c >= cells) c = cells - 1;
            frac[j] = t - static_cast<double>(c);
            base += c * step;
            stride[j] = step;
            step *= side_;
        }
        double total = 0.0;
        for (std::size_t corner = 0; corner < (std::size_t{1} << d_); ++corner) {
            double w = 1.0;
            std::size_t at = base;
            for (std::size_t j = 0; j < d_; ++j) {
                if ((corner >> j) & 1U) {
                    w *= frac[j];
                    at += stride[j];
                } else {
                    w *= 1.0 - frac[j];
                }
            }
            if (w != 0.0) total += w * values_[at];
        }
        return total;
    }

  private:
    std::size_t d_;
    int n_;
    std::size_t side_;
    std::vector<double> values_;
};

/// One signed product w * prod_j T_{k_j}(u_j) with u_j = (x_j - x_{i_j}) / h_{l_j}.
struct ChebyshevTerm {
    double weight;
    std::vector<int> degrees;
    std::vector<double> arguments;
    GridIndex source;
};

/// Value of sgn(0) in the weight rule. Both choices give the same sum
/// because T_1(0) = 0.
enum class ZeroSign { positive, negative };

/// Expands f_n^s(x) into Chebyshev products of degree 0 and 1 per dimension,
/// using phi(u) = T_0(u) + T_1(u) for u < 0 and T_0(u) - T_1(u) for u > 0.
/// Only nodes whose support contains x are expanded; each contributes 2^d
/// terms with k in {0,1}^d in lexicographic order.
inline std::vector<ChebyshevTerm> chebyshev_expansion(const SurplusMap &s, std::span<const double> x,
                                                      ZeroSign zero_sign = ZeroSign::positive) {
    check_point(x, s.d(), "chebyshev_expansion");
    const std::size_t d = x.size();
    std::vector<ChebyshevTerm> terms;
    for (std::size_t k = 0; k < s.level_count(); ++k) {
        auto node = locate_support(s.level(k), x);
        if (!node) continue;
        const double v = s.at(*node);
        std::vector<double> u(d);
        std::vector<int> positive(d);
        for (std::size_t j = 0; j < d; ++j) {
            u[j] = std::ldexp(x[j] - node->node(j), node->level()[j]);
            const bool pos = u[j] > 0.0 || (u[j] == 0.0 && zero_sign == ZeroSign::positive);
            positive[j] = pos ? 1 : 0;
        }
        for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
            std::vector<int> degrees(d);
            int exponent = 0;
            for (std::size_t j = 0; j < d; ++j) {
                degrees[j] = static_cast<int>((mask >> (d - 1 - j)) & 1U);
                exponent += degrees[j] * positive[j];
            }
            terms.push_back({exponent % 2 == 0 ? v : -v, std::move(degrees), u, *node});
        }
    }
    return terms;
}

/// Classical value of an expansion: sum of w * prod_j T_{k_j}(u_j).
inline double evaluate_terms(std::span<const ChebyshevTerm> terms) {
    double total = 0.0;
    for (const auto &t : terms) {
        double p = t.weight;
        for (std::size_t j = 0; j < t.degrees.size(); ++j) {
            p *= t.degrees[j] == 0 ? 1.0 : t.arguments[j];
        }
        total += p;
    }
    return total;
}

} // namespace qkorobov
