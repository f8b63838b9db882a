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
 * The `qkorobov` command-line front end.
 *
 *   qkorobov <eval|coeffs|convergence|resources|audit|circuit>
 *            [--fn NAME | --expr SPEC] [--d D] [--n N | --n-range A..B]
 *            [--p 2|inf|P] [--x CSV] [--epsilon CSV] [--out PATH]
 *            [--format csv|json|svg] [--seed S] [--normalized]
 *            [--include-identity-gates] [--config PATH]
 *
 * Exit status is 0 on success, 2 for a bad configuration and 3 when an
 * audit finds a violated bound.
 */

#pragma once

#include "qkorobov/analysis.hpp"
#include "qkorobov/corpus.hpp"
#include "qkorobov/io.hpp"
#include "qkorobov/lcu.hpp"
#include "qkorobov/resources.hpp"
#include "qkorobov/sparsegrid.hpp"

#include "CLI11.hpp"

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace qkorobov::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitViolation = 3;

/// A configuration problem; reported with exit status 2.
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string command;
    std::string function = "prod-quad";
    std::optional<std::string> expression;
    std::optional<int> d;
    std::optional<int> n;
    std::optional<std::pair<int, int>> n_range;
    double p = 2.0;
    std::vector<std::vector<double>> points;
    std::vector<double> epsilons;
    std::string format;
    std::string out;
    std::uint64_t seed = 0;
    bool normalized = false;
    bool include_identity_gates = false;
    double coefficient_scale = 1.0; // test hook for the audit failure path
};

inline double parse_p(const std::string &text) {
    if (text == "inf" || text == "Inf" || text == "infinity") return kInfinity;
    try {
        std::size_t used = 0;
        const double p = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return p;
    } catch (const std::logic_error &) {
        throw ConfigError("--p must be a number or 'inf', got '" + text + "'");
    }
}

inline std::pair<int, int> parse_n_range(const std::string &text) {
    const auto dots = text.find("..");
    try {
        if (dots == std::string::npos) {
            const int n = std::stoi(text);
            return {n, n};
        }
        return {std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
    } catch (const std::logic_error &) {
        throw ConfigError("--n-range must look like A..B, got '" + text + "'");
    }
}

inline std::vector<double> parse_numbers(const std::string &text) {
    std::vector<double> out;
    std::string token;
    std::istringstream is(text);
    while (std::getline(is, token, ',')) {
        const auto first = token.find_first_not_of(" \t");
        if (first == std::string::npos) continue;
        try {
            std::size_t used = 0;
            out.push_back(std::stod(token.substr(first), &used));
        } catch (const std::logic_error &) {
            throw ConfigError("not a number: '" + token + "'");
        }
    }
    return out;
}

/// Points separated by ';' ("0.1,0.2;0.3,0.4"), or a flat list split into
/// d-tuples.
inline std::vector<std::vector<double>> parse_points(const std::string &text, int d) {
    std::vector<std::vector<double>> points;
    if (text.find(';') != std::string::npos) {
        std::istringstream is(text);
        std::string chunk;
        while (std::getline(is, chunk, ';')) {
            auto values = parse_numbers(chunk);
            if (!values.empty()) points.push_back(std::move(values));
        }
    } else {
        const auto values = parse_numbers(text);
        if (values.size() % static_cast<std::size_t>(d) != 0) {
            throw ConfigError("--x holds " + std::to_string(values.size()) +
                              " values, not a multiple of d = " + std::to_string(d));
        }
        for (std::size_t k = 0; k < values.size(); k += static_cast<std::size_t>(d)) {
            points.emplace_back(values.begin() + static_cast<std::ptrdiff_t>(k),
                                values.begin() + static_cast<std::ptrdiff_t>(k) + d);
        }
    }
    for (const auto &x : points) {
        if (x.size() != static_cast<std::size_t>(d)) {
            throw ConfigError("point of dimension " + std::to_string(x.size()) + " does not match d = " +
                              std::to_string(d));
        }
        for (double v : x) {
            if (!(v >= 0.0 && v <= 1.0)) throw ConfigError("point components must lie in [0, 1]");
        }
    }
    return points;
}

inline KorobovTestFunction resolve_function(const RunConfig &config) {
    try {
        if (config.expression) {
            auto fn = parse_expression(*config.expression);
            if (config.d && *config.d != fn.d) {
                throw ConfigError("--d " + std::to_string(*config.d) + " does not match the " +
                                  std::to_string(fn.d) + " factors of --expr");
            }
            return fn;
        }
        return make_function(config.function, config.d.value_or(1));
    } catch (const std::invalid_argument &e) {
        throw ConfigError(e.what());
    }
}

inline int dimension(const RunConfig &config) {
    if (config.expression) return resolve_function(config).d;
    return config.d.value_or(1);
}

inline std::pair<int, int> level_range(const RunConfig &config, int default_first, int default_last) {
    if (config.n_range) return *config.n_range;
    if (config.n) return {*config.n, *config.n};
    return {default_first, default_last};
}

inline int single_level(const RunConfig &config) {
    if (config.n) return *config.n;
    if (config.n_range && config.n_range->first == config.n_range->second) return config.n_range->first;
    if (config.n_range) throw ConfigError("this command takes a single --n");
    return 2;
}

/// The requested format, or the first allowed one when none was given.
inline std::string output_format(const RunConfig &config, std::initializer_list<const char *> allowed) {
    if (config.format.empty()) return *allowed.begin();
    for (const char *f : allowed) {
        if (config.format == f) return config.format;
    }
    throw ConfigError("format '" + config.format + "' is not supported by '" + config.command + "'");
}

// ---------------------------------------------------------------------------
// Commands. Each writes its artifact to `out` and returns an exit status.

inline int cmd_eval(const RunConfig &config, std::ostream &out) {
    const std::string format = output_format(config, {"csv", "json"});
    const auto fn = resolve_function(config);
    const int n = single_level(config);
    if (config.points.empty()) throw ConfigError("eval needs at least one point (--x)");
    const SurplusMap s = surplus_coefficients(fn.f, n, fn.d);
    const ChebyshevCircuitOptions options{config.include_identity_gates};

    Json rows = Json::array();
    std::ostringstream csv;
    csv << "x,classical,circuit,abs_diff,f,width,gate_count,multi_qubit_depth,layered_depth,touch_depth\n";
    for (const auto &x : config.points) {
        const double classical = evaluate_interpolant(s, x);
        const CircuitEvaluation e = evaluate_via_circuit(s, x, options);
        const double circuit = config.normalized ? e.test_output : e.value;
        const double reference = config.normalized && e.one_norm > 0.0 ? classical / e.one_norm : classical;
        const double diff = std::abs(circuit - reference);
        const double exact = fn.f(x);
        std::string point;
        for (std::size_t j = 0; j < x.size(); ++j) point += (j ? " " : "") + format_double(x[j]);
        csv << point << ',' << format_double(classical) << ',' << format_double(circuit) << ','
            << format_double(diff) << ',' << format_double(exact) << ',' << e.report.width << ','
            << e.report.gate_count << ',' << e.report.multi_qubit_depth << ',' << e.report.layered_depth << ','
            << e.report.touch_depth << '\n';
        rows.push_back({{"x", x},
                        {"classical", classical},
                        {"circuit", circuit},
                        {"abs_diff", diff},
                        {"f", exact},
                        {"one_norm", e.one_norm},
                        {"term_count", e.term_count},
                        {"width", e.report.width},
                        {"gate_count", e.report.gate_count},
                        {"multi_qubit_depth", e.report.multi_qubit_depth},
                        {"layered_depth", e.report.layered_depth},
                        {"touch_depth", e.report.touch_depth}});
    }
    if (format == "json") {
        out << Json{{"function", fn.name}, {"d", fn.d}, {"n", n}, {"normalized", config.normalized},
                    {"points", rows}}
                   .dump(2)
            << '\n';
    } else {
        out << csv.str();
    }
    return kExitOk;
}

inline int cmd_coeffs(const RunConfig &config, std::ostream &out) {
    const std::string format = output_format(config, {"json", "csv"});
    const auto fn = resolve_function(config);
    const int n = single_level(config);
    const SurplusMap s = surplus_coefficients(fn.f, n, fn.d);
    static const GaussRule rule = gauss_legendre_rule<32>();
    std::vector<double> quadrature;
    s.for_each([&](const GridIndex &g, double) {
        quadrature.push_back(integral_surplus(fn.mixed_derivative, g, rule));
    });
    if (format == "json") {
        Json doc = surplus_to_json(s, &quadrature);
        doc["function"] = fn.name;
        out << doc.dump(2) << '\n';
        return kExitOk;
    }
    out << "level,index,value,quadrature\n";
    std::size_t k = 0;
    s.for_each([&](const GridIndex &g, double v) {
        std::string level;
        std::string index;
        for (std::size_t j = 0; j < g.dimension(); ++j) {
            level += (j ? " " : "") + std::to_string(g.level()[j]);
            index += (j ? " " : "") + std::to_string(g.index()[j]);
        }
        out << level << ',' << index << ',' << format_double(v) << ',' << format_double(quadrature[k++]) << '\n';
    });
    return kExitOk;
}

inline int cmd_convergence(const RunConfig &config, std::ostream &out) {
    const std::string format = output_format(config, {"csv", "json", "svg"});
    const auto fn = resolve_function(config);
    const auto [first, last] = level_range(config, 1, 6);
    if (first < 1 || last < first) throw ConfigError("--n-range must be nonempty and increasing");
    if (config.p < 2.0) throw ConfigError("--p must be at least 2");
    const ConvergenceStudy study = convergence_study(fn, config.p, first, last, config.seed);
    if (format == "json") {
        out << convergence_json(study).dump(2) << '\n';
    } else if (format == "svg") {
        out << convergence_svg(study);
    } else {
        out << convergence_csv(study);
    }
    return kExitOk;
}

/// Generic evaluation point used for measured resources: every coordinate
/// lies strictly inside a support of every level.
inline std::vector<double> generic_point(int d) {
    std::vector<double> x(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j) x[static_cast<std::size_t>(j)] = 0.3 + 0.1 * j / d + 1e-3;
    return x;
}

inline int cmd_resources(const RunConfig &config, std::ostream &out) {
    const std::string format = output_format(config, {"json", "csv"});
    const int d = dimension(config);
    std::vector<double> epsilons = config.epsilons;
    if (epsilons.empty()) epsilons = {0.5, 0.1, 0.05, 0.01, 0.001};

    std::vector<ResourceEstimate> estimates;
    try {
        for (double eps : epsilons) estimates.push_back(resource_estimate(eps, d, config.p));
    } catch (const std::exception &e) {
        throw ConfigError(e.what());
    }

    Json measured = Json::array();
    std::ostringstream measured_csv;
    measured_csv << "d,n,terms,width,gate_count,multi_qubit_depth,layered_depth,touch_depth,estimate_only\n";
    const auto [first, last] = level_range(config, 1, 4);
    const auto fn = make_function("prod-quad", d);
    const auto x = generic_point(d);
    for (int n = first; n <= last; ++n) {
        const std::size_t levels = enumerate_levels(n, d).size();
        const std::size_t terms = levels << d;
        const std::size_t width = static_cast<std::size_t>(d) + ancilla_qubits_for(terms) + 1;
        Json row{{"d", d}, {"n", n}, {"terms", terms}, {"width", width}};
        if (width > kMaxSimulatedWidth) {
            row["estimate_only"] = true;
            measured_csv << d << ',' << n << ',' << terms << ',' << width << ",,,,,true\n";
        } else {
            const SurplusMap s = surplus_coefficients(fn.f, n, d);
            const Circuit c = evaluation_circuit(s, x, ChebyshevCircuitOptions{config.include_identity_gates});
            const ResourceReport r = resource_report(c);
            row["width"] = r.width;
            row["gate_count"] = r.gate_count;
            row["multi_qubit_depth"] = r.multi_qubit_depth;
            row["layered_depth"] = r.layered_depth;
            row["touch_depth"] = r.touch_depth;
            row["estimate_only"] = false;
            measured_csv << d << ',' << n << ',' << terms << ',' << r.width << ',' << r.gate_count << ','
                         << r.multi_qubit_depth << ',' << r.layered_depth << ',' << r.touch_depth << ",false\n";
        }
        measured.push_back(std::move(row));
    }

    if (format == "json") {
        Json doc;
        Json rows = Json::array();
        for (const auto &r : estimates) rows.push_back(resource_json(r));
        doc["estimates"] = std::move(rows);
        doc["measured"] = std::move(measured);
        out << doc.dump(2) << '\n';
    } else {
        out << kResourceCsvHeader << '\n';
        for (const auto &r : estimates) out << resource_csv_row(r) << '\n';
        out << '\n' << measured_csv.str();
    }
    return kExitOk;
}

inline int cmd_audit(const RunConfig &config, std::ostream &out) {
    const std::string format = output_format(config, {"json", "csv"});
    std::vector<KorobovTestFunction> functions;
    if (config.expression || config.d) {
        functions.push_back(resolve_function(config));
    } else {
        for (auto &fn : corpus()) {
            if (fn.d <= 2) functions.push_back(std::move(fn));
        }
    }
    const auto [first, last] = level_range(config, 1, 4);
    if (first < 1 || last < first) throw ConfigError("--n-range must be nonempty and increasing");

    bool ok = true;
    Json rows = Json::array();
    std::ostringstream csv;
    csv << "function,d,n,coefficients,max_ratio_inf,max_ratio_2,dual_oracle_max_diff,violations\n";
    for (const auto &fn : functions) {
        for (int n = first; n <= last; ++n) {
            const CoefficientAudit audit = coefficient_bound_audit(fn, n, config.coefficient_scale);
            const double diff = dual_oracle_difference(fn, n);
            ok = ok && audit.passed();
            Json violations = Json::array();
            std::string listing;
            for (const auto &v : audit.violations) {
                violations.push_back({{"node", v.node.to_string()},
                                      {"bound", to_string(v.bound)},
                                      {"coefficient", v.coefficient},
                                      {"limit", v.limit}});
                listing += (listing.empty() ? "" : " ") + to_string(v.bound) + v.node.to_string();
            }
            rows.push_back({{"function", fn.name},
                            {"d", fn.d},
                            {"n", n},
                            {"coefficients", audit.coefficient_count},
                            {"max_ratio_inf", audit.max_ratio_inf},
                            {"max_ratio_2", audit.max_ratio_2},
                            {"dual_oracle_max_diff", diff},
                            {"violations", std::move(violations)}});
            csv << fn.name << ',' << fn.d << ',' << n << ',' << audit.coefficient_count << ','
                << format_double(audit.max_ratio_inf) << ',' << format_double(audit.max_ratio_2) << ','
                << format_double(diff) << ',' << listing << '\n';
        }
    }
    if (format == "json") {
        out << Json{{"passed", ok}, {"rows", rows}}.dump(2) << '\n';
    } else {
        out << csv.str();
    }
    return ok ? kExitOk : kExitViolation;
}

inline int cmd_circuit(const RunConfig &config, std::ostream &out) {
    const std::string format = output_format(config, {"json"});
    const auto fn = resolve_function(config);
    const int n = single_level(config);
    if (config.points.size() != 1) throw ConfigError("circuit needs exactly one point (--x)");
    const SurplusMap s = surplus_coefficients(fn.f, n, fn.d);
    Json doc = circuit_trace(evaluation_circuit(s, config.points.front(),
                                                ChebyshevCircuitOptions{config.include_identity_gates}));
    doc["function"] = fn.name;
    doc["n"] = n;
    doc["x"] = config.points.front();
    out << doc.dump(2) << '\n';
    return kExitOk;
}

// ---------------------------------------------------------------------------
// Argument handling.

/// Fills fields of `config` from a JSON file, skipping any key whose flag
/// was given on the command line.
inline void apply_config_file(const std::string &path, const CLI::App &app, RunConfig &config,
                              std::string &x_text, std::string &p_text, std::string &range_text,
                              std::string &eps_text) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    Json doc;
    try {
        doc = Json::parse(in);
    } catch (const nlohmann::json::exception &e) {
        throw ConfigError(std::string("config file is not valid JSON: ") + e.what());
    }
    const auto given = [&](const char *flag) { return app.count(flag) > 0; };
    const auto text = [](const Json &v) {
        if (v.is_string()) return v.get<std::string>();
        if (v.is_array()) {
            // [[a, b], [c, d]] becomes "a,b;c,d;" and [a, b] becomes "a,b".
            std::string s;
            for (const auto &item : v) {
                if (item.is_array()) {
                    for (const auto &c : item) s += format_double(c.get<double>()) + ",";
                    s += ";";
                } else {
                    s += format_double(item.get<double>()) + ",";
                }
            }
            return s;
        }
        if (v.is_number()) return format_double(v.get<double>());
        throw ConfigError("unsupported config value " + v.dump());
    };
    try {
        for (const auto &[key, value] : doc.items()) {
            if (key == "command") {
                if (config.command.empty()) config.command = value.get<std::string>();
            } else if (key == "fn") {
                if (!given("--fn")) config.function = value.get<std::string>();
            } else if (key == "expr") {
                if (!given("--expr")) config.expression = value.get<std::string>();
            } else if (key == "d") {
                if (!given("--d")) config.d = value.get<int>();
            } else if (key == "n") {
                if (!given("--n")) config.n = value.get<int>();
            } else if (key == "n_range") {
                if (!given("--n-range")) range_text = text(value);
            } else if (key == "p") {
                if (!given("--p")) p_text = text(value);
            } else if (key == "x") {
                if (!given("--x")) x_text = text(value);
            } else if (key == "epsilon") {
                if (!given("--epsilon")) eps_text = text(value);
            } else if (key == "out") {
                if (!given("--out")) config.out = value.get<std::string>();
            } else if (key == "format") {
                if (!given("--format")) config.format = value.get<std::string>();
            } else if (key == "seed") {
                if (!given("--seed")) config.seed = value.get<std::uint64_t>();
            } else if (key == "normalized") {
                if (!given("--normalized")) config.normalized = value.get<bool>();
            } else if (key == "include_identity_gates") {
                if (!given("--include-identity-gates")) config.include_identity_gates = value.get<bool>();
            } else {
                throw ConfigError("unknown config key '" + key + "'");
            }
        }
    } catch (const nlohmann::json::exception &e) {
        throw ConfigError(std::string("bad config value: ") + e.what());
    }
}

inline int dispatch(const RunConfig &config, std::ostream &out) {
    if (config.command == "eval") return cmd_eval(config, out);
    if (config.command == "coeffs") return cmd_coeffs(config, out);
    if (config.command == "convergence") return cmd_convergence(config, out);
    if (config.command == "resources") return cmd_resources(config, out);
    if (config.command == "audit") return cmd_audit(config, out);
    if (config.command == "circuit") return cmd_circuit(config, out);
    throw ConfigError("unknown command '" + config.command + "'");
}

/// Entry point shared by the executable and the tests.
inline int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Sparse-grid interpolation of Korobov functions with QSP/LCU circuits", "qkorobov"};
    RunConfig config;
    std::string x_text;
    std::string p_text;
    std::string range_text;
    std::string eps_text;
    std::string config_path;
    std::string expression;
    int d = 0;
    int n = 0;

    app.add_option("command", config.command, "eval | coeffs | convergence | resources | audit | circuit");
    app.add_option("--fn", config.function, "corpus function: prod-quad, prod-sin, prod-cubic, zero");
    app.add_option("--expr", expression, "product of x(1-x), sin(pi x), x^2(1-x) joined by '*'");
    app.add_option("--d", d, "dimension")->check(CLI::Range(1, 16));
    app.add_option("--n", n, "sparse-grid level")->check(CLI::Range(1, 30));
    app.add_option("--n-range", range_text, "level range A..B");
    app.add_option("--p", p_text, "norm exponent: 2, inf or a number above 2");
    app.add_option("--x", x_text, "points: 'a,b;c,d' or a flat list split into d-tuples");
    app.add_option("--epsilon", eps_text, "accuracy targets for 'resources', comma separated");
    app.add_option("--out", config.out, "output file (default: stdout)");
    app.add_option("--format", config.format, "csv | json | svg");
    app.add_option("--seed", config.seed, "seed for Monte Carlo norms");
    app.add_flag("--normalized", config.normalized, "report circuit values divided by |w|_1");
    app.add_flag("--include-identity-gates", config.include_identity_gates,
                 "keep the zero-phase gates in QSP blocks");
    app.add_option("--config", config_path, "JSON file with defaults for any option");
    app.add_option("--scale-coefficients", config.coefficient_scale)->group("");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << '\n';
        return kExitConfig;
    }

    try {
        if (app.count("--expr")) config.expression = expression;
        if (app.count("--d")) config.d = d;
        if (app.count("--n")) config.n = n;
        if (!config_path.empty()) {
            apply_config_file(config_path, app, config, x_text, p_text, range_text, eps_text);
        }
        if (config.command.empty()) throw ConfigError("missing command");
        if (!p_text.empty()) config.p = parse_p(p_text);
        if (config.command == "convergence" && p_text.empty()) config.p = kInfinity;
        if (!range_text.empty()) config.n_range = parse_n_range(range_text);
        if (!eps_text.empty()) config.epsilons = parse_numbers(eps_text);
        if (!x_text.empty()) config.points = parse_points(x_text, dimension(config));

        if (config.out.empty()) return dispatch(config, out);
        std::ostringstream buffer;
        const int status = dispatch(config, buffer);
        std::ofstream file(config.out, std::ios::binary);
        if (!file) throw ConfigError("cannot write '" + config.out + "'");
        file << buffer.str();
        return status;
    } catch (const ConfigError &e) {
        err << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::domain_error &e) {
        err << "error: " << e.what() << '\n';
        return kExitConfig;
    }
}

} // namespace qkorobov::cli
