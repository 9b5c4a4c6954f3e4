#ifndef WARPFLOW_CONFIG_HPP
#define WARPFLOW_CONFIG_HPP

#include <optional>
#include <string>
#include <vector>

#include "warpflow/base_grid.hpp"
#include "warpflow/warping.hpp"

namespace warpflow {

/// Which keys a subcommand requires: `run` needs the full flow setup,
/// `check` only profile + conditions, `profile` only the warping/iso data.
enum class ConfigPurpose { Run, Check, Profile };

struct RunConfig {
    // warping
    std::string phi_spec;
    std::optional<double> r0;
    std::optional<double> r_bar;
    std::optional<int> n; // base dimension for profile-only use (default 2)

    // base
    std::optional<std::string> base_spec; // "sphere" | "torus(L)"
    int resolution = 128;
    std::optional<double> base_area;    // profile purpose without a base
    std::optional<double> lambda1;      // user override for stability checks
    int iso_nodes = 2048;

    // flow
    double cfl = 0.2;
    double t_max = 0.0;
    double tol_osc = 1e-8;
    int record_every = 10;
    double K = 0.0;
    bool override_conditions = false;
    std::string rho0; // "expr:<formula>" | "file:<path>"

    // output
    std::string output_dir = "out";
    bool emit_states = false;
    bool h_evolution = false;
};

struct ConfigIssue {
    int line = 0; // 0 when not tied to a line
    std::string key;
    std::string message;
};

struct ParseResult {
    std::optional<RunConfig> config;
    std::vector<ConfigIssue> issues;
    bool ok() const { return config.has_value() && issues.empty(); }
};

/// Parse `key = value` lines (# comments, strings double-quoted). Collects
/// every parse and validation problem instead of stopping at the first.
ParseResult parse_config(const std::string& text, ConfigPurpose purpose = ConfigPurpose::Run);

/// Construct the profile named by the config (band defaults per kind).
WarpingProfile make_profile(const RunConfig& cfg);

/// Construct the discretized base. Requires base_spec.
BaseGrid make_grid(const RunConfig& cfg);

/// Evaluate rho0 ("expr:" over theta or x,y, or "file:" with one value per
/// node) on the grid. Band membership is validated here.
Field build_rho0(const RunConfig& cfg, const BaseGrid& grid, const WarpingProfile& profile);

} // namespace warpflow

#endif
