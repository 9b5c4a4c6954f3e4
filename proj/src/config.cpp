#include "warpflow/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "warpflow/expr.hpp"

namespace warpflow {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

/// Strip a trailing comment, respecting double quotes.
std::string strip_comment(const std::string& line) {
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') quoted = !quoted;
        else if (line[i] == '#' && !quoted) return line.substr(0, i);
    }
    return line;
}

struct KeyValue {
    int line;
    std::string key;
    std::string value; // quotes removed for strings
    bool was_quoted;
};

bool parse_bool(const std::string& v, bool& out) {
    if (v == "true") { out = true; return true; }
    if (v == "false") { out = false; return true; }
    return false;
}

bool parse_number(const std::string& v, double& out) {
    try {
        std::size_t used = 0;
        out = std::stod(v, &used);
        return used == v.size();
    } catch (const std::exception&) {
        return false;
    }
}

bool parse_int(const std::string& v, int& out) {
    try {
        std::size_t used = 0;
        out = std::stoi(v, &used);
        return used == v.size();
    } catch (const std::exception&) {
        return false;
    }
}

} // namespace

ParseResult parse_config(const std::string& text, ConfigPurpose purpose) {
    ParseResult result;
    std::vector<ConfigIssue>& issues = result.issues;
    RunConfig cfg;

    bool seen_phi = false, seen_rho0 = false, seen_K = false, seen_tmax = false;

    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    std::vector<KeyValue> pairs;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = trim(strip_comment(raw));
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            issues.push_back({line_no, "", "expected 'key = value'"});
            continue;
        }
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) {
            issues.push_back({line_no, key, "empty key or value"});
            continue;
        }
        bool quoted = false;
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
            value = value.substr(1, value.size() - 2);
            quoted = true;
        } else if (value.front() == '"' || value.back() == '"') {
            issues.push_back({line_no, key, "unbalanced quotes"});
            continue;
        }
        pairs.push_back({line_no, std::move(key), std::move(value), quoted});
    }

    auto number_for = [&](const KeyValue& kv, double lo, double hi, bool lo_strict,
                          double& out) {
        double v;
        if (!parse_number(kv.value, v)) {
            issues.push_back({kv.line, kv.key, "not a number"});
            return;
        }
        if ((lo_strict ? v <= lo : v < lo) || v > hi) {
            issues.push_back({kv.line, kv.key, "out of range"});
            return;
        }
        out = v;
    };

    for (const auto& kv : pairs) {
        if (kv.key == "phi") {
            cfg.phi_spec = kv.value;
            seen_phi = true;
        } else if (kv.key == "base") {
            cfg.base_spec = kv.value;
        } else if (kv.key == "resolution") {
            int v;
            if (!parse_int(kv.value, v) || v < 4)
                issues.push_back({kv.line, kv.key, "must be an integer >= 4"});
            else
                cfg.resolution = v;
        } else if (kv.key == "r0") {
            double v;
            if (!parse_number(kv.value, v)) issues.push_back({kv.line, kv.key, "not a number"});
            else cfg.r0 = v;
        } else if (kv.key == "r_bar") {
            double v;
            if (!parse_number(kv.value, v)) issues.push_back({kv.line, kv.key, "not a number"});
            else cfg.r_bar = v;
        } else if (kv.key == "n") {
            int v;
            if (!parse_int(kv.value, v) || v < 1)
                issues.push_back({kv.line, kv.key, "must be an integer >= 1"});
            else
                cfg.n = v;
        } else if (kv.key == "base_area") {
            double v;
            if (!parse_number(kv.value, v) || !(v > 0.0))
                issues.push_back({kv.line, kv.key, "must be a positive number"});
            else
                cfg.base_area = v;
        } else if (kv.key == "lambda1") {
            double v;
            if (!parse_number(kv.value, v) || v < 0.0)
                issues.push_back({kv.line, kv.key, "must be >= 0"});
            else
                cfg.lambda1 = v;
        } else if (kv.key == "iso_nodes") {
            int v;
            if (!parse_int(kv.value, v) || v < 64)
                issues.push_back({kv.line, kv.key, "must be an integer >= 64"});
            else
                cfg.iso_nodes = v;
        } else if (kv.key == "cfl") {
            number_for(kv, 0.0, 1.0, true, cfg.cfl);
        } else if (kv.key == "t_max") {
            double v;
            if (!parse_number(kv.value, v) || !(v > 0.0))
                issues.push_back({kv.line, kv.key, "must be a positive number"});
            else {
                cfg.t_max = v;
                seen_tmax = true;
            }
        } else if (kv.key == "tol_osc") {
            double v;
            if (!parse_number(kv.value, v) || !(v > 0.0))
                issues.push_back({kv.line, kv.key, "must be a positive number"});
            else
                cfg.tol_osc = v;
        } else if (kv.key == "record_every") {
            int v;
            if (!parse_int(kv.value, v) || v < 1)
                issues.push_back({kv.line, kv.key, "must be an integer >= 1"});
            else
                cfg.record_every = v;
        } else if (kv.key == "K") {
            double v;
            if (!parse_number(kv.value, v) || v < 0.0)
                issues.push_back({kv.line, kv.key, "must be >= 0"});
            else {
                cfg.K = v;
                seen_K = true;
            }
        } else if (kv.key == "override_conditions") {
            bool v;
            if (!parse_bool(kv.value, v))
                issues.push_back({kv.line, kv.key, "expected true or false"});
            else
                cfg.override_conditions = v;
        } else if (kv.key == "rho0") {
            cfg.rho0 = kv.value;
            seen_rho0 = true;
        } else if (kv.key == "output_dir") {
            cfg.output_dir = kv.value;
        } else if (kv.key == "emit_states") {
            bool v;
            if (!parse_bool(kv.value, v))
                issues.push_back({kv.line, kv.key, "expected true or false"});
            else
                cfg.emit_states = v;
        } else if (kv.key == "h_evolution") {
            bool v;
            if (!parse_bool(kv.value, v))
                issues.push_back({kv.line, kv.key, "expected true or false"});
            else
                cfg.h_evolution = v;
        } else {
            issues.push_back({kv.line, kv.key, "unknown key"});
        }
    }

    // cross-key validation
    if (!seen_phi) issues.push_back({0, "phi", "missing"});
    if (cfg.r0 && cfg.r_bar && !(*cfg.r0 < *cfg.r_bar))
        issues.push_back({0, "r0", "requires r0 < r_bar"});
    if (purpose == ConfigPurpose::Run) {
        if (!cfg.base_spec) issues.push_back({0, "base", "missing (required for runs)"});
        if (!seen_rho0) issues.push_back({0, "rho0", "missing (required for runs)"});
        if (!seen_tmax) issues.push_back({0, "t_max", "missing (required for runs)"});
        if (!seen_K) issues.push_back({0, "K", "missing (required for runs)"});
        if (cfg.n && *cfg.n != 2)
            issues.push_back({0, "n", "flow runs require n = 2"});
        if (seen_rho0 && cfg.rho0.rfind("expr:", 0) != 0 && cfg.rho0.rfind("file:", 0) != 0)
            issues.push_back({0, "rho0", "must start with expr: or file:"});
    } else if (purpose == ConfigPurpose::Check) {
        if (!seen_K) issues.push_back({0, "K", "missing (required for checks)"});
    } else { // Profile
        if (!cfg.base_spec && !cfg.base_area)
            issues.push_back({0, "base_area", "needed when no base is configured"});
    }
    if (cfg.base_spec) {
        const std::string& b = *cfg.base_spec;
        const bool torus = b.rfind("torus(", 0) == 0 && b.back() == ')';
        if (b != "sphere" && !torus)
            issues.push_back({0, "base", "expected sphere or torus(L)"});
        if (torus) {
            double L;
            if (!parse_number(b.substr(6, b.size() - 7), L) || !(L > 0.0))
                issues.push_back({0, "base", "torus period must be positive"});
        }
    }

    if (issues.empty()) result.config = std::move(cfg);
    return result;
}

WarpingProfile make_profile(const RunConfig& cfg) {
    int n = cfg.n.value_or(2);
    return WarpingProfile::parse(cfg.phi_spec, cfg.r0, cfg.r_bar, n);
}

BaseGrid make_grid(const RunConfig& cfg) {
    if (!cfg.base_spec) throw std::invalid_argument("config has no base");
    const std::string& b = *cfg.base_spec;
    if (b == "sphere") return BaseGrid::sphere(cfg.resolution);
    const double L = std::stod(b.substr(6, b.size() - 7));
    return BaseGrid::torus(cfg.resolution, L);
}

Field build_rho0(const RunConfig& cfg, const BaseGrid& grid, const WarpingProfile& profile) {
    Field rho(grid.node_count());
    if (cfg.rho0.rfind("expr:", 0) == 0) {
        const Expr e = Expr::parse(cfg.rho0.substr(5));
        for (const auto& v : e.variables()) {
            const bool sphere = grid.kind() == GridKind::AxisymSphere;
            if (sphere && v != "theta")
                throw ExprError("rho0 on the sphere may only use theta");
            if (!sphere && v == "theta")
                throw ExprError("rho0 on the torus may only use x and y");
        }
        if (grid.kind() == GridKind::AxisymSphere) {
            for (Eigen::Index i = 0; i < rho.size(); ++i)
                rho[i] = e.eval_theta(grid.theta()[i]);
        } else {
            const Field x = grid.coord1(), y = grid.coord2();
            for (Eigen::Index i = 0; i < rho.size(); ++i) rho[i] = e.eval_xy(x[i], y[i]);
        }
    } else if (cfg.rho0.rfind("file:", 0) == 0) {
        std::ifstream in(cfg.rho0.substr(5));
        if (!in) throw std::runtime_error("rho0: cannot open '" + cfg.rho0.substr(5) + "'");
        for (Eigen::Index i = 0; i < rho.size(); ++i)
            if (!(in >> rho[i]))
                throw std::runtime_error("rho0: file has fewer values than grid nodes");
    } else {
        throw std::invalid_argument("rho0 must start with expr: or file:");
    }
    if (!rho.allFinite()) throw NonFiniteError("rho0 evaluates to NaN/Inf");
    profile.require_in_band(rho);
    return rho;
}

} // namespace warpflow
