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
 * Dense statevector simulation of small circuits.
 *
 * Qubits are little-endian: qubit q is bit q of the amplitude index, so
 * qubit 0 is the "first" qubit read out by expectation_z_first().
 *
 * A GateOp is one of
 *  - a single-qubit unitary,
 *  - a dense unitary on k qubits (targets[b] is local bit b),
 *  - a signal placeholder, a slot that bind_signals() in qsp.hpp replaces
 *    with a concrete single-qubit matrix,
 *  - a multiplexed block: the selector register value j picks branch j,
 *    a sub-circuit on the target qubits followed by a scalar phase,
 *  - a controlled wrapper around any other GateOp.
 *
 * Multiplexers are simulated branch by branch, never as a dense matrix.
 */

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace qkorobov {

using Complex = std::complex<double>;
using Matrix2 = Eigen::Matrix2cd;
using MatrixX = Eigen::MatrixXcd;
using Qubit = std::size_t;

inline constexpr double kUnitarityTolerance = 1e-12;
/// Practical ceiling for dense simulation.
inline constexpr std::size_t kMaxSimulatedWidth = 22;

/// max |U^dagger U - I| over all entries.
inline double unitarity_defect(const MatrixX &u) {
    if (u.rows() != u.cols()) {
        return INFINITY;
    }
    const MatrixX gram = u.adjoint() * u;
    return (gram - MatrixX::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
}

class GateOp;

/// Ordered list of operations on a fixed-width register.
class Circuit {
  public:
    Circuit() = default;
    explicit Circuit(std::size_t width) : width_(width) {}

    [[nodiscard]] std::size_t width() const { return width_; }
    [[nodiscard]] const std::vector<GateOp> &ops() const { return ops_; }
    [[nodiscard]] std::size_t size() const { return ops_.size(); }
    [[nodiscard]] bool empty() const { return ops_.empty(); }

    /// Throws std::out_of_range if the op touches a qubit >= width().
    Circuit &append(GateOp op);
    Circuit &append(const Circuit &other);

  private:
    std::size_t width_ = 0;
    std::vector<GateOp> ops_;
};

struct SingleQubitGate {
    Matrix2 matrix;
    Qubit target;
};

struct DenseGate {
    MatrixX matrix;
    std::vector<Qubit> targets;
};

struct SignalGate {
    Qubit target;
    std::size_t slot;
};

struct MultiplexBranch {
    Circuit body;
    Complex phase{1.0, 0.0};
};

struct MultiplexedGate {
    std::vector<Qubit> selectors;
    std::vector<Qubit> targets;
    std::vector<MultiplexBranch> branches;
};

struct ControlledGate {
    Qubit control;
    std::shared_ptr<const GateOp> inner;
};

/// Immutable gate. Construct through the static factories, which validate
/// unitarity and index disjointness.
class GateOp {
  public:
    using Kind = std::variant<SingleQubitGate, DenseGate, SignalGate, MultiplexedGate,
                              ControlledGate>;

    static GateOp single(const Matrix2 &matrix, Qubit target) {
        check_unitary(matrix, "single-qubit gate");
        return GateOp(SingleQubitGate{matrix, target});
    }

    static GateOp dense(const MatrixX &matrix, std::vector<Qubit> targets) {
        if (targets.empty() || targets.size() > 30 ||
            matrix.rows() != (Eigen::Index{1} << targets.size())) {
            throw std::invalid_argument("dense gate: matrix dimension must be 2^(number of targets)");
        }
        require_distinct(targets, "dense gate");
        check_unitary(matrix, "dense gate");
        return GateOp(DenseGate{matrix, std::move(targets)});
    }

    static GateOp signal(Qubit target, std::size_t slot) { return GateOp(SignalGate{target, slot}); }

    /// Branch j acts when the selector register (selectors[b] is bit b of j)
    /// holds j. Selector values without a branch act as identity.
    static GateOp multiplexed(std::vector<Qubit> selectors, std::vector<Qubit> targets,
                              std::vector<MultiplexBranch> branches) {
        if (selectors.size() >= 63 || branches.size() > (std::size_t{1} << selectors.size())) {
            throw std::invalid_argument("multiplexer: more branches than selector states");
        }
        std::vector<Qubit> all = selectors;
        all.insert(all.end(), targets.begin(), targets.end());
        require_distinct(all, "multiplexer");
        for (const auto &branch : branches) {
            if (branch.body.width() != targets.size()) {
                throw std::invalid_argument("multiplexer: branch width differs from target count");
            }
            if (std::abs(std::abs(branch.phase) - 1.0) > kUnitarityTolerance) {
                throw std::invalid_argument("multiplexer: branch phase is not unimodular");
            }
        }
        return GateOp(MultiplexedGate{std::move(selectors), std::move(targets), std::move(branches)});
    }

    static GateOp controlled(Qubit control, GateOp inner) {
        const auto qubits = inner.qubits();
        if (std::find(qubits.begin(), qubits.end(), control) != qubits.end()) {
            throw std::invalid_argument("controlled gate: control overlaps the wrapped gate");
        }
        return GateOp(ControlledGate{control, std::make_shared<const GateOp>(std::move(inner))});
    }

    [[nodiscard]] const Kind &kind() const { return kind_; }

    /// Every qubit the op can act on or is conditioned on, sorted.
    [[nodiscard]] std::vector<Qubit> qubits() const {
        std::set<Qubit> out;
        collect_qubits(out);
        return {out.begin(), out.end()};
    }

    /// Targets of the op proper, excluding control and selector qubits.
    [[nodiscard]] std::vector<Qubit> targets() const {
        return std::visit(
            [](const auto &g) -> std::vector<Qubit> {
                using T = std::decay_t<decltype(g)>;
                if constexpr (std::is_same_v<T, SingleQubitGate>) {
                    return {g.target};
                } else if constexpr (std::is_same_v<T, SignalGate>) {
                    return {g.target};
                } else if constexpr (std::is_same_v<T, DenseGate>) {
                    return g.targets;
                } else if constexpr (std::is_same_v<T, MultiplexedGate>) {
                    return g.targets;
                } else {
                    return g.inner->targets();
                }
            },
            kind_);
    }

    /// Control and selector qubits, outermost first.
    [[nodiscard]] std::vector<Qubit> controls() const {
        if (const auto *c = std::get_if<ControlledGate>(&kind_)) {
            std::vector<Qubit> out{c->control};
            const auto inner = c->inner->controls();
            out.insert(out.end(), inner.begin(), inner.end());
            return out;
        }
        if (const auto *m = std::get_if<MultiplexedGate>(&kind_)) {
            return m->selectors;
        }
        return {};
    }

  private:
    explicit GateOp(Kind kind) : kind_(std::move(kind)) {}

    static void check_unitary(const MatrixX &m, const char *what) {
        if (m.rows() != m.cols() || unitarity_defect(m) > kUnitarityTolerance) {
            throw std::invalid_argument(std::string(what) + ": matrix is not unitary");
        }
    }

    static void require_distinct(std::vector<Qubit> qubits, const char *what) {
        std::sort(qubits.begin(), qubits.end());
        if (std::adjacent_find(qubits.begin(), qubits.end()) != qubits.end()) {
            throw std::invalid_argument(std::string(what) + ": repeated qubit index");
        }
    }

    void collect_qubits(std::set<Qubit> &out) const {
        std::visit(
            [&out](const auto &g) {
                using T = std::decay_t<decltype(g)>;
                if constexpr (std::is_same_v<T, SingleQubitGate> || std::is_same_v<T, SignalGate>) {
                    out.insert(g.target);
                } else if constexpr (std::is_same_v<T, DenseGate>) {
                    out.insert(g.targets.begin(), g.targets.end());
                } else if constexpr (std::is_same_v<T, MultiplexedGate>) {
                    out.insert(g.selectors.begin(), g.selectors.end());
                    out.insert(g.targets.begin(), g.targets.end());
                } else {
                    out.insert(g.control);
                    g.inner->collect_qubits(out);
                }
            },
            kind_);
    }

    Kind kind_;
};

inline Circuit &Circuit::append(GateOp op) {
    for (Qubit q : op.qubits()) {
        if (q >= width_) {
            throw std::out_of_range("gate references qubit " + std::to_string(q) +
                                    " on a circuit of width " + std::to_string(width_));
        }
    }
    ops_.push_back(std::move(op));
    return *this;
}

inline Circuit &Circuit::append(const Circuit &other) {
    if (other.width() > width_) {
        throw std::out_of_range("appended circuit is wider than the target circuit");
    }
    for (const auto &op : other.ops()) {
        append(op);
    }
    return *this;
}

namespace gates {

inline Matrix2 identity() { return Matrix2::Identity(); }

inline Matrix2 pauli_x() {
    Matrix2 m;
    m << 0, 1, 1, 0;
    return m;
}

inline Matrix2 pauli_z() {
    Matrix2 m;
    m << 1, 0, 0, -1;
    return m;
}

inline Matrix2 hadamard() {
    const double s = 1.0 / std::sqrt(2.0);
    Matrix2 m;
    m << s, s, s, -s;
    return m;
}

/// exp(i phi sigma_z) = diag(e^{i phi}, e^{-i phi}).
inline Matrix2 z_phase(double phi) {
    Matrix2 m = Matrix2::Zero();
    m(0, 0) = std::polar(1.0, phi);
    m(1, 1) = std::polar(1.0, -phi);
    return m;
}

} // namespace gates

/// Returns a copy of `op` with every qubit index q replaced by map[q].
/// Multiplexer branch bodies use local indices and are left untouched.
inline GateOp remap(const GateOp &op, std::span<const Qubit> map) {
    auto m = [&](Qubit q) {
        if (q >= map.size()) {
            throw std::out_of_range("remap: qubit outside the map");
        }
        return map[q];
    };
    return std::visit(
        [&](const auto &g) -> GateOp {
            using T = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<T, SingleQubitGate>) {
                return GateOp::single(g.matrix, m(g.target));
            } else if constexpr (std::is_same_v<T, SignalGate>) {
                return GateOp::signal(m(g.target), g.slot);
            } else if constexpr (std::is_same_v<T, DenseGate>) {
                std::vector<Qubit> t;
                for (Qubit q : g.targets) t.push_back(m(q));
                return GateOp::dense(g.matrix, std::move(t));
            } else if constexpr (std::is_same_v<T, MultiplexedGate>) {
                std::vector<Qubit> s, t;
                for (Qubit q : g.selectors) s.push_back(m(q));
                for (Qubit q : g.targets) t.push_back(m(q));
                return GateOp::multiplexed(std::move(s), std::move(t), g.branches);
            } else {
                return GateOp::controlled(m(g.control), remap(*g.inner, map));
            }
        },
        op.kind());
}

/// Places `circuit` on qubits [offset, offset + circuit.width()) of a
/// register of `width` qubits.
inline Circuit shifted(const Circuit &circuit, std::size_t offset, std::size_t width) {
    if (offset + circuit.width() > width) {
        throw std::out_of_range("shifted: circuit does not fit");
    }
    std::vector<Qubit> map(circuit.width());
    for (std::size_t q = 0; q < map.size(); ++q) map[q] = q + offset;
    Circuit out(width);
    for (const auto &op : circuit.ops()) out.append(remap(op, map));
    return out;
}

/// Every op of `circuit` conditioned on `control`.
inline Circuit controlled(const Circuit &circuit, Qubit control) {
    Circuit out(circuit.width());
    for (const auto &op : circuit.ops()) out.append(GateOp::controlled(control, op));
    return out;
}

class Statevector {
  public:
    /// |0...0> on `width` qubits.
    explicit Statevector(std::size_t width) : width_(width) {
        if (width > kMaxSimulatedWidth) {
            throw std::invalid_argument("statevector width " + std::to_string(width) +
                                        " exceeds the dense ceiling");
        }
        amplitudes_.assign(std::size_t{1} << width, Complex{0.0, 0.0});
        amplitudes_[0] = 1.0;
    }

    static Statevector basis(std::size_t width, std::uint64_t index) {
        Statevector s(width);
        if (index >= s.amplitudes_.size()) {
            throw std::out_of_range("basis index outside the register");
        }
        s.amplitudes_[0] = 0.0;
        s.amplitudes_[index] = 1.0;
        return s;
    }

    /// Length must be a power of two and the l2 norm 1 within 1e-10.
    static Statevector from_amplitudes(std::vector<Complex> amplitudes) {
        const std::size_t n = amplitudes.size();
        if (n == 0 || (n & (n - 1)) != 0) {
            throw std::invalid_argument("amplitude count must be a power of two");
        }
        std::size_t width = 0;
        while ((std::size_t{1} << width) < n) ++width;
        Statevector s(width);
        s.amplitudes_ = std::move(amplitudes);
        if (std::abs(s.norm() - 1.0) > 1e-10) {
            throw std::invalid_argument("amplitudes are not normalized");
        }
        return s;
    }

    [[nodiscard]] std::size_t width() const { return width_; }
    [[nodiscard]] std::span<const Complex> amplitudes() const { return amplitudes_; }
    [[nodiscard]] std::span<Complex> mutable_amplitudes() { return amplitudes_; }
    [[nodiscard]] Complex amplitude(std::uint64_t index) const { return amplitudes_.at(index); }

    [[nodiscard]] double norm() const {
        double sum = 0.0;
        for (const auto &a : amplitudes_) sum += std::norm(a);
        return std::sqrt(sum);
    }

  private:
    std::size_t width_;
    std::vector<Complex> amplitudes_;
};

namespace detail {

/// Amplitude index i is acted on only when (i & mask) == value.
struct Condition {
    std::uint64_t mask = 0;
    std::uint64_t value = 0;

    [[nodiscard]] Condition with(Qubit q, bool bit) const {
        const std::uint64_t b = std::uint64_t{1} << q;
        return {mask | b, bit ? (value | b) : (value & ~b)};
    }
    [[nodiscard]] bool holds(std::uint64_t i) const { return (i & mask) == value; }
};

inline Qubit mapped(std::span<const Qubit> map, Qubit q) { return map.empty() ? q : map[q]; }

inline void apply_single(std::span<Complex> amps, const Matrix2 &u, Qubit target, Condition cond) {
    const std::uint64_t bit = std::uint64_t{1} << target;
    const Complex u00 = u(0, 0), u01 = u(0, 1), u10 = u(1, 0), u11 = u(1, 1);
    for (std::uint64_t i = 0; i < amps.size(); ++i) {
        if ((i & bit) != 0 || !cond.holds(i)) continue;
        const Complex a0 = amps[i];
        const Complex a1 = amps[i | bit];
        amps[i] = u00 * a0 + u01 * a1;
        amps[i | bit] = u10 * a0 + u11 * a1;
    }
}

inline void apply_dense(std::span<Complex> amps, const MatrixX &u, std::span<const Qubit> targets,
                        Condition cond) {
    const std::size_t k = targets.size();
    const std::size_t dim = std::size_t{1} << k;
    std::uint64_t target_mask = 0;
    for (Qubit q : targets) target_mask |= std::uint64_t{1} << q;
    std::vector<std::uint64_t> offsets(dim, 0);
    for (std::size_t local = 0; local < dim; ++local) {
        for (std::size_t b = 0; b < k; ++b) {
            if ((local >> b) & 1U) offsets[local] |= std::uint64_t{1} << targets[b];
        }
    }
    Eigen::VectorXcd in(static_cast<Eigen::Index>(dim));
    for (std::uint64_t base = 0; base < amps.size(); ++base) {
        if ((base & target_mask) != 0 || !cond.holds(base)) continue;
        for (std::size_t l = 0; l < dim; ++l) in[static_cast<Eigen::Index>(l)] = amps[base | offsets[l]];
        const Eigen::VectorXcd out = u * in;
        for (std::size_t l = 0; l < dim; ++l) amps[base | offsets[l]] = out[static_cast<Eigen::Index>(l)];
    }
}

inline void apply_phase(std::span<Complex> amps, Complex phase, Condition cond) {
    for (std::uint64_t i = 0; i < amps.size(); ++i) {
        if (cond.holds(i)) amps[i] *= phase;
    }
}

inline void apply(std::span<Complex> amps, const GateOp &op, std::span<const Qubit> map,
                  Condition cond) {
    std::visit(
        [&](const auto &g) {
            using T = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<T, SingleQubitGate>) {
                apply_single(amps, g.matrix, mapped(map, g.target), cond);
            } else if constexpr (std::is_same_v<T, SignalGate>) {
                throw std::logic_error("signal gate in slot " + std::to_string(g.slot) +
                                       " was never bound");
            } else if constexpr (std::is_same_v<T, DenseGate>) {
                std::vector<Qubit> t;
                for (Qubit q : g.targets) t.push_back(mapped(map, q));
                apply_dense(amps, g.matrix, t, cond);
            } else if constexpr (std::is_same_v<T, MultiplexedGate>) {
                std::vector<Qubit> body_map;
                for (Qubit q : g.targets) body_map.push_back(mapped(map, q));
                for (std::size_t j = 0; j < g.branches.size(); ++j) {
                    Condition branch = cond;
                    for (std::size_t b = 0; b < g.selectors.size(); ++b) {
                        branch = branch.with(mapped(map, g.selectors[b]), ((j >> b) & 1U) != 0);
                    }
                    for (const auto &inner : g.branches[j].body.ops()) {
                        apply(amps, inner, body_map, branch);
                    }
                    if (g.branches[j].phase != Complex{1.0, 0.0}) {
                        apply_phase(amps, g.branches[j].phase, branch);
                    }
                }
            } else {
                apply(amps, *g.inner, map, cond.with(mapped(map, g.control), true));
            }
        },
        op.kind());
}

} // namespace detail

/// Applies `gate` in place. Throws std::out_of_range for a qubit index
/// outside the register.
inline void apply_gate_inplace(Statevector &state, const GateOp &gate) {
    for (Qubit q : gate.qubits()) {
        if (q >= state.width()) {
            throw std::out_of_range("gate references qubit " + std::to_string(q) +
                                    " on a register of width " + std::to_string(state.width()));
        }
    }
    detail::apply(state.mutable_amplitudes(), gate, {}, {});
}

inline Statevector apply_gate(Statevector state, const GateOp &gate) {
    apply_gate_inplace(state, gate);
    return state;
}

inline Statevector run_circuit(const Circuit &circuit, Statevector initial) {
    if (initial.width() != circuit.width()) {
        throw std::invalid_argument("run_circuit: state width " + std::to_string(initial.width()) +
                                    " does not match circuit width " +
                                    std::to_string(circuit.width()));
    }
    for (const auto &op : circuit.ops()) {
        detail::apply(initial.mutable_amplitudes(), op, {}, {});
    }
    return initial;
}

inline Statevector run_circuit(const Circuit &circuit) {
    return run_circuit(circuit, Statevector(circuit.width()));
}

/// <psi| Z (x) I (x) ... (x) I |psi> with Z on qubit 0.
inline double expectation_z_first(const Statevector &state) {
    double value = 0.0;
    const auto amps = state.amplitudes();
    for (std::uint64_t i = 0; i < amps.size(); ++i) {
        value += (i & 1U) ? -std::norm(amps[i]) : std::norm(amps[i]);
    }
    return value;
}

/// Dense matrix of the whole circuit, column k = U|k>. Width <= 10.
inline MatrixX circuit_unitary(const Circuit &circuit) {
    if (circuit.width() > 10) {
        throw std::invalid_argument("circuit_unitary is limited to width 10");
    }
    const std::size_t dim = std::size_t{1} << circuit.width();
    MatrixX u(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::size_t k = 0; k < dim; ++k) {
        const auto out = run_circuit(circuit, Statevector::basis(circuit.width(), k));
        for (std::size_t r = 0; r < dim; ++r) {
            u(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(k)) = out.amplitude(r);
        }
    }
    return u;
}

/// Gate and depth counters of a circuit.
///
/// Counting happens on the expanded circuit: every multiplexer branch
/// contributes its body gates, each conditioned on all selector qubits, and
/// a non-trivial branch phase counts as one gate on the selectors. Control
/// wrappers add their control to every gate they contain. A gate touches its
/// targets plus every qubit it is conditioned on.
///
///  - multi_qubit_depth: max over qubits of multi-qubit gates touching it
///  - layered_depth: ASAP layers of gates with disjoint qubit sets
///  - touch_depth: max over qubits of all gates touching it
struct ResourceReport {
    std::size_t width = 0;
    std::size_t gate_count = 0;
    std::size_t multi_qubit_depth = 0;
    std::size_t layered_depth = 0;
    std::size_t touch_depth = 0;
};

namespace detail {

class ResourceCounter {
  public:
    explicit ResourceCounter(std::size_t width)
        : multi_(width, 0), touch_(width, 0), layer_(width, 0) {}

    void visit(const GateOp &op, std::span<const Qubit> map, std::vector<Qubit> &conditions) {
        std::visit(
            [&](const auto &g) {
                using T = std::decay_t<decltype(g)>;
                if constexpr (std::is_same_v<T, SingleQubitGate> || std::is_same_v<T, SignalGate>) {
                    leaf({mapped(map, g.target)}, conditions);
                } else if constexpr (std::is_same_v<T, DenseGate>) {
                    std::vector<Qubit> t;
                    for (Qubit q : g.targets) t.push_back(mapped(map, q));
                    leaf(t, conditions);
                } else if constexpr (std::is_same_v<T, MultiplexedGate>) {
                    std::vector<Qubit> body_map;
                    for (Qubit q : g.targets) body_map.push_back(mapped(map, q));
                    const std::size_t before = conditions.size();
                    for (Qubit q : g.selectors) conditions.push_back(mapped(map, q));
                    for (const auto &branch : g.branches) {
                        for (const auto &inner : branch.body.ops()) visit(inner, body_map, conditions);
                        if (branch.phase != Complex{1.0, 0.0}) leaf({}, conditions);
                    }
                    conditions.resize(before);
                } else {
                    conditions.push_back(mapped(map, g.control));
                    visit(*g.inner, map, conditions);
                    conditions.pop_back();
                }
            },
            op.kind());
    }

    [[nodiscard]] ResourceReport report(std::size_t width) const {
        ResourceReport r;
        r.width = width;
        r.gate_count = gates_;
        for (std::size_t q = 0; q < width; ++q) {
            r.multi_qubit_depth = std::max(r.multi_qubit_depth, multi_[q]);
            r.touch_depth = std::max(r.touch_depth, touch_[q]);
            r.layered_depth = std::max(r.layered_depth, layer_[q]);
        }
        return r;
    }

  private:
    void leaf(std::vector<Qubit> touched, const std::vector<Qubit> &conditions) {
        touched.insert(touched.end(), conditions.begin(), conditions.end());
        if (touched.empty()) return; // a bare global phase is not a gate
        ++gates_;
        std::size_t layer = 0;
        for (Qubit q : touched) layer = std::max(layer, layer_[q]);
        for (Qubit q : touched) {
            ++touch_[q];
            if (touched.size() > 1) ++multi_[q];
            layer_[q] = layer + 1;
        }
    }

    std::size_t gates_ = 0;
    std::vector<std::size_t> multi_;
    std::vector<std::size_t> touch_;
    std::vector<std::size_t> layer_;
};

} // namespace detail

inline ResourceReport resource_report(const Circuit &circuit) {
    detail::ResourceCounter counter(circuit.width());
    std::vector<Qubit> conditions;
    for (const auto &op : circuit.ops()) counter.visit(op, {}, conditions);
    return counter.report(circuit.width());
}

} // namespace qkorobov
