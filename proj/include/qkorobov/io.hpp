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

// JSON, CSV and SVG serialization. Doubles are written with 17 significant
// digits so they read back bit-identical.

#pragma once

#include "qkorobov/analysis.hpp"
#include "qkorobov/resources.hpp"
#include "qkorobov/simulator.hpp"
#include "qkorobov/sparsegrid.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace qkorobov {

using Json = nlohmann::ordered_json;

inline std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// JSON cannot hold inf; it is written as the string "inf".
inline Json json_number(double v) {
    if (std::isfinite(v)) return v;
    return format_double(v);
}

// ---------------------------------------------------------------------------
// Surplus maps.

/// {d, n, entries: [{level, index, value[, quadrature]}]}
inline Json surplus_to_json(const SurplusMap &s, const std::vector<double> *quadrature = nullptr) {
    Json doc;
    doc["d"] = s.d();
    doc["n"] = s.n();
    Json entries = Json::array();
    std::size_t k = 0;
    s.for_each([&](const GridIndex &g, double v) {
        Json e;
        e["level"] = g.level().values();
        e["index"] = g.index();
        e["value"] = v;
        if (quadrature != nullptr) e["quadrature"] = (*quadrature)[k];
        ++k;
        entries.push_back(std::move(e));
    });
    doc["entries"] = std::move(entries);
    return doc;
}

inline SurplusMap surplus_from_json(const Json &doc) {
    try {
        SurplusMap s(doc.at("n").get<int>(), doc.at("d").get<int>());
        for (const auto &e : doc.at("entries")) {
            GridIndex g(LevelVector(e.at("level").get<std::vector<int>>()),
                        e.at("index").get<std::vector<std::int64_t>>());
            if (g.dimension() != static_cast<std::size_t>(s.d())) {
                throw std::invalid_argument("surplus entry has the wrong dimension");
            }
            s.set(g, e.at("value").get<double>());
        }
        return s;
    } catch (const nlohmann::json::exception &e) {
        throw std::invalid_argument(std::string("malformed surplus document: ") + e.what());
    }
}

// ---------------------------------------------------------------------------
// Circuit traces.

namespace detail {

inline Json matrix_json(const MatrixX &m) {
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
        rows.push_back(std::move(row));
    }
    return rows;
}

struct TraceControl {
    Qubit qubit;
    bool state;
};

inline void trace_op(const GateOp &op, std::span<const Qubit> map, std::vector<TraceControl> &controls,
                     Json &out) {
    const auto emit = [&](const char *kind, std::vector<Qubit> targets, const MatrixX *matrix) {
        Json e;
        e["kind"] = kind;
        e["targets"] = std::move(targets);
        Json c = Json::array();
        Json state = Json::array();
        for (const auto &ctl : controls) {
            c.push_back(ctl.qubit);
            state.push_back(ctl.state ? 1 : 0);
        }
        e["controls"] = std::move(c);
        e["control_state"] = std::move(state);
        if (matrix != nullptr) e["matrix"] = matrix_json(*matrix);
        out.push_back(std::move(e));
    };
    std::visit(
        [&](const auto &g) {
            using T = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<T, SingleQubitGate>) {
                const MatrixX m = g.matrix;
                emit("single", {mapped(map, g.target)}, &m);
            } else if constexpr (std::is_same_v<T, SignalGate>) {
                emit("signal", {mapped(map, g.target)}, nullptr);
                out.back()["slot"] = g.slot;
            } else if constexpr (std::is_same_v<T, DenseGate>) {
                std::vector<Qubit> t;
                for (Qubit q : g.targets) t.push_back(mapped(map, q));
                emit("dense", std::move(t), &g.matrix);
            } else if constexpr (std::is_same_v<T, MultiplexedGate>) {
                std::vector<Qubit> body_map;
                for (Qubit q : g.targets) body_map.push_back(mapped(map, q));
                const std::size_t before = controls.size();
                for (std::size_t j = 0; j < g.branches.size(); ++j) {
                    controls.resize(before);
                    for (std::size_t b = 0; b < g.selectors.size(); ++b) {
                        controls.push_back({mapped(map, g.selectors[b]), ((j >> b) & 1U) != 0});
                    }
                    for (const auto &inner : g.branches[j].body.ops()) trace_op(inner, body_map, controls, out);
                    const Complex phase = g.branches[j].phase;
                    if (phase != Complex{1.0, 0.0}) {
                        emit("phase", {}, nullptr);
                        out.back()["phase"] = {phase.real(), phase.imag()};
                    }
                }
                controls.resize(before);
            } else {
                controls.push_back({mapped(map, g.control), true});
                trace_op(*g.inner, map, controls, out);
                controls.pop_back();
            }
        },
        op.kind());
}

} // namespace detail

/// Flattened gate list: every leaf with its targets, the qubits it is
/// conditioned on and the required control values.
inline Json circuit_trace(const Circuit &circuit) {
    Json doc;
    doc["width"] = circuit.width();
    const ResourceReport r = resource_report(circuit);
    doc["resources"] = {{"width", r.width},
                        {"gate_count", r.gate_count},
                        {"multi_qubit_depth", r.multi_qubit_depth},
                        {"layered_depth", r.layered_depth},
                        {"touch_depth", r.touch_depth}};
    Json ops = Json::array();
    std::vector<detail::TraceControl> controls;
    for (const auto &op : circuit.ops()) detail::trace_op(op, {}, controls, ops);
    doc["ops"] = std::move(ops);
    return doc;
}

// ---------------------------------------------------------------------------
// Convergence studies.

/// Slope of the fit through the first k+1 usable rows, per row.
inline std::vector<std::optional<double>> running_slopes(const ConvergenceStudy &study) {
    std::vector<std::optional<double>> out;
    std::vector<double> xs;
    std::vector<double> ys;
    for (const auto &row : study.rows) {
        const double e = study.error(row);
        if (e >= kRoundingFloor && row.N >= 2) {
            xs.push_back(std::log2(static_cast<double>(row.N)));
            ys.push_back(std::log2(e));
        }
        out.push_back(xs.size() >= 2 ? std::optional<double>(fit_line(xs, ys).slope) : std::nullopt);
    }
    return out;
}

inline std::string convergence_csv(const ConvergenceStudy &study) {
    const bool with_p = !std::isinf(study.p) && study.p != 2.0;
    std::ostringstream os;
    os << "n,N,error_inf,error_2" << (with_p ? ",error_p" : "") << ",slope_running\n";
    const auto slopes = running_slopes(study);
    for (std::size_t k = 0; k < study.rows.size(); ++k) {
        const auto &row = study.rows[k];
        os << row.n << ',' << row.N << ',' << format_double(row.error_inf) << ','
           << format_double(row.error_2);
        if (with_p) os << ',' << format_double(row.error_p.value_or(0.0));
        os << ',' << (slopes[k] ? format_double(*slopes[k]) : "") << '\n';
    }
    return os.str();
}

inline Json convergence_json(const ConvergenceStudy &study) {
    const auto optional_number = [](const std::optional<double> &v) { return v ? json_number(*v) : Json(); };
    Json doc;
    doc["function"] = study.function;
    doc["d"] = study.d;
    doc["p"] = json_number(study.p);
    Json rows = Json::array();
    for (const auto &row : study.rows) {
        Json r;
        r["n"] = row.n;
        r["N"] = row.N;
        r["error_inf"] = row.error_inf;
        r["error_2"] = row.error_2;
        if (row.error_2_standard_error > 0.0) r["error_2_standard_error"] = row.error_2_standard_error;
        if (row.error_p) r["error_p"] = *row.error_p;
        rows.push_back(std::move(r));
    }
    doc["rows"] = std::move(rows);
    doc["slope"] = optional_number(study.slope);
    doc["slope_ci"] = optional_number(study.slope_ci);
    doc["corrected_slope"] = optional_number(study.corrected_slope);
    doc["log_exponent"] = study.log_exponent;
    doc["shape_constant"] = optional_number(study.shape_constant);
    return doc;
}

/// Log-log polyline of error against N with a slope -2 reference line.
inline std::string convergence_svg(const ConvergenceStudy &study) {
    constexpr double kW = 480.0;
    constexpr double kH = 360.0;
    constexpr double kPad = 40.0;
    std::vector<std::pair<double, double>> pts;
    for (const auto &row : study.rows) {
        const double e = study.error(row);
        if (e >= kRoundingFloor && row.N >= 1) pts.emplace_back(std::log2(static_cast<double>(row.N)), std::log2(e));
    }
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH << "\">\n";
    os << "<text x=\"" << kPad << "\" y=\"20\" font-size=\"12\">" << study.function << " d=" << study.d
       << " log exponent " << study.log_exponent << "</text>\n";
    if (!pts.empty()) {
        double x0 = pts.front().first;
        double x1 = pts.front().first;
        double y0 = pts.front().second;
        double y1 = pts.front().second;
        for (const auto &[x, y] : pts) {
            x0 = std::min(x0, x);
            x1 = std::max(x1, x);
            y0 = std::min(y0, y);
            y1 = std::max(y1, y);
        }
        const double ref_end = pts.front().second - 2.0 * (x1 - pts.front().first);
        y0 = std::min(y0, ref_end);
        if (x1 == x0) x1 = x0 + 1.0;
        if (y1 == y0) y1 = y0 + 1.0;
        const auto sx = [&](double x) { return format_double(kPad + (x - x0) / (x1 - x0) * (kW - 2 * kPad)); };
        const auto sy = [&](double y) { return format_double(kH - kPad - (y - y0) / (y1 - y0) * (kH - 2 * kPad)); };
        os << "<polyline fill=\"none\" stroke=\"black\" points=\"";
        for (std::size_t k = 0; k < pts.size(); ++k) {
            os << (k ? " " : "") << sx(pts[k].first) << ',' << sy(pts[k].second);
        }
        os << "\"/>\n";
        os << "<line stroke=\"gray\" stroke-dasharray=\"4\" x1=\"" << sx(pts.front().first) << "\" y1=\""
           << sy(pts.front().second) << "\" x2=\"" << sx(x1) << "\" y2=\"" << sy(ref_end) << "\"/>\n";
    }
    os << "</svg>\n";
    return os.str();
}

// ---------------------------------------------------------------------------
// Resource estimates.

inline Json resource_json(const ResourceEstimate &r) {
    return Json{{"epsilon", r.epsilon},
                {"d", r.d},
                {"p", json_number(r.p)},
                {"formula", to_string(r.formula)},
                {"alpha", r.alpha},
                {"beta", r.beta},
                {"lambert_w_value", r.lambert_w_value},
                {"predicted_depth_bound", r.predicted_depth_bound},
                {"predicted_width_bound", r.predicted_width_bound},
                {"simplified_depth_bound", r.simplified_depth_bound},
                {"simplified_width_bound", r.simplified_width_bound},
                {"units", "relative"}};
}

inline constexpr const char *kResourceCsvHeader =
    "epsilon,d,p,formula,alpha,beta,lambert_w_value,predicted_depth_bound,predicted_width_bound,"
    "simplified_depth_bound,simplified_width_bound";

inline std::string resource_csv_row(const ResourceEstimate &r) {
    std::ostringstream os;
    os << format_double(r.epsilon) << ',' << r.d << ',' << format_double(r.p) << ',' << to_string(r.formula)
       << ',' << format_double(r.alpha) << ',' << format_double(r.beta) << ','
       << format_double(r.lambert_w_value) << ',' << format_double(r.predicted_depth_bound) << ','
       << format_double(r.predicted_width_bound) << ',' << format_double(r.simplified_depth_bound) << ','
       << format_double(r.simplified_width_bound);
    return os.str();
}

} // namespace qkorobov
