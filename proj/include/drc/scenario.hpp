#pragma once

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "drc/controller.hpp"
#include "drc/csv.hpp"
#include "drc/disturbance.hpp"
#include "drc/errors.hpp"
#include "drc/graph.hpp"
#include "drc/sim.hpp"

namespace drc {

// A fully validated scenario: graph + controller + disturbance + initial
// conditions + integration settings. The file dialect is line-oriented
// `key = value` under `[section]` headers (grammar in the README).
struct Scenario {
    std::string name;
    std::string topology = "custom";  // cycle | path | complete | custom
    Graph graph;
    ControllerConfig cfg;
    DisturbanceSignal dist;
    Vector phase_deg;  // as written in the file; dist.phase holds radians
    Vector x0, xhat0, what0;
    double T = 20.0, h = 1e-3;
    int sample_every = 10;
    std::string out_csv, out_report;
};

namespace detail {

inline bool vec_eq(const Vector& a, const Vector& b) {
    return a.size() == b.size() && (a.size() == 0 || (a.array() == b.array()).all());
}

inline bool dist_eq(const DisturbanceSignal& a, const DisturbanceSignal& b) {
    return a.kind == b.kind && vec_eq(a.w, b.w) && vec_eq(a.amplitude, b.amplitude) &&
           vec_eq(a.omega, b.omega) && vec_eq(a.phase, b.phase);
}

inline bool cfg_eq(const ControllerConfig& a, const ControllerConfig& b) {
    if (!(vec_eq(a.k_diag, b.k_diag) && a.m == b.m && a.q == b.q && a.kappa == b.kappa &&
          a.mode == b.mode && a.zeta.has_value() == b.zeta.has_value()))
        return false;
    return !a.zeta || vec_eq(*a.zeta, *b.zeta);
}

} // namespace detail

inline bool operator==(const Scenario& a, const Scenario& b) {
    return a.name == b.name && a.topology == b.topology && a.graph == b.graph &&
           detail::cfg_eq(a.cfg, b.cfg) && detail::dist_eq(a.dist, b.dist) &&
           detail::vec_eq(a.phase_deg, b.phase_deg) && detail::vec_eq(a.x0, b.x0) &&
           detail::vec_eq(a.xhat0, b.xhat0) && detail::vec_eq(a.what0, b.what0) && a.T == b.T &&
           a.h == b.h && a.sample_every == b.sample_every && a.out_csv == b.out_csv &&
           a.out_report == b.out_report;
}

namespace detail {

struct ScenarioLine {
    std::size_t no;
    std::string section, key, value;
};

inline std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

[[noreturn]] inline void parse_fail(std::size_t line, const std::string& msg) {
    throw validation_error("scenario: line " + std::to_string(line) + ": " + msg);
}

inline double to_double(const ScenarioLine& ln, const std::string& tok) {
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (end != tok.c_str() + tok.size() || tok.empty())
        parse_fail(ln.no, "expected number, got '" + tok + "'");
    return v;
}

inline int to_int(const ScenarioLine& ln, const std::string& tok) {
    const double v = to_double(ln, tok);
    if (v != std::floor(v)) parse_fail(ln.no, "expected integer, got '" + tok + "'");
    return static_cast<int>(v);
}

inline std::string to_string_value(const ScenarioLine& ln) {
    std::string v = trim(ln.value);
    if (v.size() >= 2 && v.front() == '"' && v.back() == '"') return v.substr(1, v.size() - 2);
    if (!v.empty() && v.find_first_of("\"[], ") == std::string::npos) return v;
    parse_fail(ln.no, "expected string for key '" + ln.key + "'");
}

inline std::vector<std::string> split_top_level(const ScenarioLine& ln, const std::string& body) {
    std::vector<std::string> items;
    std::string cur;
    int depth = 0;
    for (char c : body) {
        if (c == '[') ++depth;
        if (c == ']') --depth;
        if (depth < 0) parse_fail(ln.no, "unbalanced ']'");
        if (c == ',' && depth == 0) {
            items.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (depth != 0) parse_fail(ln.no, "unbalanced '['");
    if (!trim(cur).empty() || !items.empty()) items.push_back(trim(cur));
    return items;
}

inline Vector to_vector(const ScenarioLine& ln) {
    std::string v = trim(ln.value);
    if (v.size() < 2 || v.front() != '[' || v.back() != ']')
        parse_fail(ln.no, "expected [list] for key '" + ln.key + "'");
    const auto items = split_top_level(ln, v.substr(1, v.size() - 2));
    Vector out(static_cast<Eigen::Index>(items.size()));
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (items[i].empty()) parse_fail(ln.no, "empty list element");
        out(static_cast<Eigen::Index>(i)) = to_double(ln, items[i]);
    }
    return out;
}

inline std::vector<std::pair<int, int>> to_edges(const ScenarioLine& ln) {
    std::string v = trim(ln.value);
    if (v.size() < 2 || v.front() != '[' || v.back() != ']')
        parse_fail(ln.no, "expected [[i,j], ...] for key 'edges'");
    std::vector<std::pair<int, int>> out;
    for (const auto& item : split_top_level(ln, v.substr(1, v.size() - 2))) {
        if (item.size() < 2 || item.front() != '[' || item.back() != ']')
            parse_fail(ln.no, "expected [i,j] pair, got '" + item + "'");
        const auto pair = split_top_level(ln, item.substr(1, item.size() - 2));
        if (pair.size() != 2) parse_fail(ln.no, "edge must have exactly two indices");
        out.emplace_back(to_int(ln, pair[0]), to_int(ln, pair[1]));
    }
    return out;
}

} // namespace detail

inline Scenario parse_scenario(const std::string& text) {
    using detail::parse_fail;
    std::istringstream in(text);
    std::string raw;
    std::size_t lineno = 0;
    std::string section;
    std::vector<detail::ScenarioLine> lines;
    std::map<std::string, std::size_t> seen;  // "section.key" -> line
    static const std::map<std::string, std::vector<std::string>> known = {
        {"scenario", {"name", "out_csv", "out_report"}},
        {"graph", {"n", "topology", "edges"}},
        {"controller", {"mode", "k", "m", "q", "kappa", "zeta"}},
        {"disturbance", {"variant", "w", "amplitude", "omega", "phase_deg"}},
        {"init", {"x0", "xhat0", "what0"}},
        {"sim", {"T", "h", "sample_every"}},
    };

    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw;
        if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
        line = detail::trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') parse_fail(lineno, "unterminated section header");
            section = detail::trim(line.substr(1, line.size() - 2));
            if (!known.count(section)) parse_fail(lineno, "unknown section [" + section + "]");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) parse_fail(lineno, "expected 'key = value'");
        detail::ScenarioLine ln{lineno, section, detail::trim(line.substr(0, eq)),
                                detail::trim(line.substr(eq + 1))};
        if (ln.section.empty()) parse_fail(lineno, "key outside any [section]");
        const auto& keys = known.at(ln.section);
        if (std::find(keys.begin(), keys.end(), ln.key) == keys.end())
            parse_fail(lineno, "unknown key '" + ln.key + "' in [" + ln.section + "]");
        if (!seen.emplace(ln.section + "." + ln.key, lineno).second)
            parse_fail(lineno, "duplicate key '" + ln.key + "' in [" + ln.section + "]");
        if (ln.value.empty()) parse_fail(lineno, "missing value for '" + ln.key + "'");
        lines.push_back(std::move(ln));
    }

    Scenario s;
    int n = -1;
    std::vector<std::pair<int, int>> edges;
    bool have_edges = false;
    std::string mode_str, variant = "zero";
    std::optional<Vector> k_vec;
    std::optional<double> k_scalar;
    Vector amp, omg, phd, w_const;
    std::size_t graph_line = 0, dist_line = 0, ctrl_line = 0;

    for (const auto& ln : lines) {
        auto num = [&] { return detail::to_double(ln, detail::trim(ln.value)); };
        if (ln.section == "scenario") {
            if (ln.key == "name") s.name = detail::to_string_value(ln);
            else if (ln.key == "out_csv") s.out_csv = detail::to_string_value(ln);
            else s.out_report = detail::to_string_value(ln);
        } else if (ln.section == "graph") {
            graph_line = ln.no;
            if (ln.key == "n") n = detail::to_int(ln, detail::trim(ln.value));
            else if (ln.key == "topology") s.topology = detail::to_string_value(ln);
            else { edges = detail::to_edges(ln); have_edges = true; }
        } else if (ln.section == "controller") {
            ctrl_line = ln.no;
            if (ln.key == "mode") mode_str = detail::to_string_value(ln);
            else if (ln.key == "k") {
                if (!ln.value.empty() && detail::trim(ln.value).front() == '[') k_vec = detail::to_vector(ln);
                else k_scalar = num();
            }
            else if (ln.key == "m") s.cfg.m = num();
            else if (ln.key == "q") s.cfg.q = num();
            else if (ln.key == "kappa") s.cfg.kappa = num();
            else s.cfg.zeta = detail::to_vector(ln);
        } else if (ln.section == "disturbance") {
            dist_line = ln.no;
            if (ln.key == "variant") variant = detail::to_string_value(ln);
            else if (ln.key == "w") w_const = detail::to_vector(ln);
            else if (ln.key == "amplitude") amp = detail::to_vector(ln);
            else if (ln.key == "omega") omg = detail::to_vector(ln);
            else phd = detail::to_vector(ln);
        } else if (ln.section == "init") {
            if (ln.key == "x0") s.x0 = detail::to_vector(ln);
            else if (ln.key == "xhat0") s.xhat0 = detail::to_vector(ln);
            else s.what0 = detail::to_vector(ln);
        } else {  // sim
            if (ln.key == "T") s.T = num();
            else if (ln.key == "h") s.h = num();
            else s.sample_every = detail::to_int(ln, detail::trim(ln.value));
        }
    }

    // graph
    if (n < 1) throw validation_error("scenario: [graph] n missing or < 1");
    if (s.topology == "custom") {
        if (!have_edges)
            parse_fail(graph_line ? graph_line : 1, "need 'edges' or 'topology' in [graph]");
        s.graph = build_graph(n, edges);
    } else {
        if (have_edges)
            parse_fail(graph_line, "give either 'topology' or 'edges', not both");
        if (s.topology == "cycle") s.graph = cycle_graph(n);
        else if (s.topology == "path") s.graph = path_graph(n);
        else if (s.topology == "complete") s.graph = complete_graph(n);
        else parse_fail(graph_line, "unknown topology '" + s.topology + "'");
    }

    // controller
    if (mode_str.empty()) throw validation_error("scenario: [controller] mode missing");
    if (mode_str == "Baseline") s.cfg.mode = Mode::Baseline;
    else if (mode_str == "Reject") s.cfg.mode = Mode::Reject;
    else if (mode_str == "ConstantPoint") s.cfg.mode = Mode::ConstantPoint;
    else if (mode_str == "Damped") s.cfg.mode = Mode::Damped;
    else parse_fail(ctrl_line, "unknown mode '" + mode_str + "'");
    if (k_vec) s.cfg.k_diag = *k_vec;
    else if (k_scalar) s.cfg.k_diag = Vector::Constant(n, *k_scalar);
    else throw validation_error("scenario: [controller] k missing");
    // Mode invariants (e.g. Damped needs kappa > 0) surface here with field names.
    try {
        s.cfg.validate(n);
    } catch (const validation_error& e) {
        throw validation_error("scenario: [controller] " + std::string(e.what()));
    }

    // disturbance
    if (variant == "zero") {
        s.dist = DisturbanceSignal::zero();
    } else if (variant == "constant") {
        if (w_const.size() == 0)
            parse_fail(dist_line, "constant disturbance needs 'w'");
        s.dist = DisturbanceSignal::constant(w_const);
    } else if (variant == "sinusoid") {
        if (amp.size() == 0 || omg.size() == 0 || phd.size() == 0)
            parse_fail(dist_line, "sinusoid disturbance needs amplitude, omega, phase_deg");
        s.phase_deg = phd;
        s.dist = DisturbanceSignal::sinusoid_bank(
            amp, omg, (phd.array() * (std::numbers::pi / 180.0)).matrix());
    } else {
        parse_fail(dist_line ? dist_line : 1, "unknown disturbance variant '" + variant + "'");
    }
    if (s.dist.kind != DisturbanceSignal::Kind::Zero && s.dist.size() != n)
        throw validation_error("scenario: [disturbance] length != n");

    // init
    if (s.x0.size() == 0) throw validation_error("scenario: [init] x0 missing");
    if (s.x0.size() != n) throw validation_error("scenario: [init] x0 length != n");
    if (s.xhat0.size() == 0) s.xhat0 = Vector::Zero(n);
    if (s.what0.size() == 0) s.what0 = Vector::Zero(n);
    if (s.xhat0.size() != n || s.what0.size() != n)
        throw validation_error("scenario: [init] xhat0/what0 length != n");

    if (!(s.T > 0.0) || !(s.h > 0.0) || s.sample_every < 1)
        throw validation_error("scenario: [sim] requires T > 0, h > 0, sample_every >= 1");
    return s;
}

inline std::string render_list(const Vector& v) {
    std::string out = "[";
    for (int i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        out += csv_number(v(i));
    }
    return out + "]";
}

inline std::string render_scenario(const Scenario& s) {
    std::string out;
    out += "[scenario]\n";
    out += "name = \"" + s.name + "\"\n";
    if (!s.out_csv.empty()) out += "out_csv = \"" + s.out_csv + "\"\n";
    if (!s.out_report.empty()) out += "out_report = \"" + s.out_report + "\"\n";
    out += "\n[graph]\n";
    out += "n = " + std::to_string(s.graph.n) + "\n";
    if (s.topology != "custom") {
        out += "topology = \"" + s.topology + "\"\n";
    } else {
        out += "edges = [";
        for (std::size_t i = 0; i < s.graph.edges.size(); ++i) {
            if (i) out += ", ";
            out += "[" + std::to_string(s.graph.edges[i].first) + "," +
                   std::to_string(s.graph.edges[i].second) + "]";
        }
        out += "]\n";
    }
    out += "\n[controller]\n";
    out += "mode = \"" + to_string(s.cfg.mode) + "\"\n";
    out += "k = " + render_list(s.cfg.k_diag) + "\n";
    out += "m = " + csv_number(s.cfg.m) + "\n";
    if (s.cfg.q != 0.0) out += "q = " + csv_number(s.cfg.q) + "\n";
    if (s.cfg.kappa != 0.0) out += "kappa = " + csv_number(s.cfg.kappa) + "\n";
    if (s.cfg.zeta) out += "zeta = " + render_list(*s.cfg.zeta) + "\n";
    out += "\n[disturbance]\n";
    switch (s.dist.kind) {
        case DisturbanceSignal::Kind::Zero:
            out += "variant = \"zero\"\n";
            break;
        case DisturbanceSignal::Kind::Constant:
            out += "variant = \"constant\"\n";
            out += "w = " + render_list(s.dist.w) + "\n";
            break;
        case DisturbanceSignal::Kind::SinusoidBank:
            out += "variant = \"sinusoid\"\n";
            out += "amplitude = " + render_list(s.dist.amplitude) + "\n";
            out += "omega = " + render_list(s.dist.omega) + "\n";
            out += "phase_deg = " + render_list(s.phase_deg) + "\n";
            break;
    }
    out += "\n[init]\n";
    out += "x0 = " + render_list(s.x0) + "\n";
    if (!s.xhat0.isZero(0.0)) out += "xhat0 = " + render_list(s.xhat0) + "\n";
    if (!s.what0.isZero(0.0)) out += "what0 = " + render_list(s.what0) + "\n";
    out += "\n[sim]\n";
    out += "T = " + csv_number(s.T) + "\n";
    out += "h = " + csv_number(s.h) + "\n";
    out += "sample_every = " + std::to_string(s.sample_every) + "\n";
    return out;
}

// The three stock examples. All share C6, x0, K = 100 I, m = 5, zero controller
// initial conditions.
inline Scenario builtin_example(int id) {
    Scenario s;
    const int n = 6;
    s.topology = "cycle";
    s.graph = cycle_graph(n);
    s.cfg.k_diag = Vector::Constant(n, 100.0);
    s.cfg.m = 5.0;
    s.x0 = Vector(n);
    s.x0 << -0.4, -0.2, 0.0, 0.4, 0.6, 0.8;
    s.xhat0 = Vector::Zero(n);
    s.what0 = Vector::Zero(n);
    s.h = 1e-3;
    s.sample_every = 10;

    Vector w(n);
    w << -4.75, -2.75, -0.75, 1.25, 3.25, 5.25;
    switch (id) {
        case 1:
            s.name = "example1";
            s.cfg.mode = Mode::Reject;
            s.dist = DisturbanceSignal::constant(w);
            s.T = 10.0;
            break;
        case 2: {
            s.name = "example2";
            s.cfg.mode = Mode::Damped;
            s.cfg.kappa = 0.0025;
            Vector amp = Vector::Constant(n, 1.0), omg(n), phd(n);
            omg << 0.2, 0.4, 0.6, 0.8, 1.0, 1.2;
            phd << 10, 20, 30, 40, 50, 60;
            s.phase_deg = phd;
            s.dist = DisturbanceSignal::sinusoid_bank(
                amp, omg, (phd.array() * (std::numbers::pi / 180.0)).matrix());
            s.T = 60.0;
            break;
        }
        case 3: {
            s.name = "example3";
            s.cfg.mode = Mode::ConstantPoint;
            s.cfg.q = 0.025;
            Vector zeta(n);
            zeta << 0.0, 0.2, 0.4, 0.6, 0.8, 1.0;
            s.cfg.zeta = zeta;
            s.dist = DisturbanceSignal::constant(w);
            s.T = 40.0;
            break;
        }
        default:
            throw validation_error("builtin_example: unknown id " + std::to_string(id));
    }
    return s;
}

// --variant overrides; "constant-point" on a q = 0 scenario uses the stock
// q = 0.025 sub-variant.
inline Scenario apply_variant(Scenario s, const std::string& variant) {
    if (variant == "baseline") {
        s.cfg.mode = Mode::Baseline;
        s.cfg.q = s.cfg.kappa = 0.0;
    } else if (variant == "reject") {
        s.cfg.mode = Mode::Reject;
        s.cfg.q = s.cfg.kappa = 0.0;
    } else if (variant == "constant-point") {
        s.cfg.mode = Mode::ConstantPoint;
        s.cfg.kappa = 0.0;
        if (s.cfg.q == 0.0) s.cfg.q = 0.025;
    } else {
        throw validation_error("unknown variant '" + variant + "'");
    }
    s.name += "-" + variant;
    return s;
}

inline Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw validation_error("scenario: cannot open " + path.string());
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_scenario(ss.str());
}

inline Trajectory simulate_scenario(const Scenario& s) {
    const GraphMatrices gm = build_matrices(s.graph);
    return simulate(s.cfg, gm, s.dist, s.x0, s.xhat0, s.what0, s.T, s.h, s.sample_every);
}

} // namespace drc
