#include "warpflow/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "warpflow/flow.hpp"
#include "warpflow/io.hpp"

namespace warpflow::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

json condition_json(const ConditionReport& rep) {
    return json{{"K", rep.K},
                {"min_Q", rep.min_Q},
                {"max_Q", rep.max_Q},
                {"satisfied_lower", rep.satisfied_lower},
                {"satisfied_upper", rep.satisfied_upper},
                {"strict_upper", rep.strict_upper},
                {"phi_prime_positive", rep.phi_prime_positive},
                {"admissible", rep.admissible()}};
}

json photon_json(const PhotonSphereScan& scan) {
    return json{{"identically_zero", scan.identically_zero}, {"roots", scan.roots}};
}

json stability_json(const WarpingProfile& profile, const ConditionReport& rep,
                    double lambda1) {
    // worst-case slice margin over the band
    const double margin = lambda1 - profile.n() * rep.max_Q;
    return json{{"lambda1", lambda1},
                {"margin", margin},
                {"satisfied", margin >= -kConditionTol}};
}

bool write_text(const fs::path& path, const std::string& text, std::ostream& log) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        log << "error: cannot open " << path.string() << " for writing\n";
        return false;
    }
    out << text;
    return bool(out);
}

const char* termination_name(Termination t) {
    switch (t) {
        case Termination::Converged: return "converged";
        case Termination::TMaxReached: return "t_max_reached";
        case Termination::NumericalFailure: return "numerical_failure";
    }
    return "?";
}

} // namespace

std::string resolve_output_dir(const RunConfig& cfg) {
    if (const char* env = std::getenv("WARPFLOW_OUTPUT"); env != nullptr && *env != '\0')
        return env;
    return cfg.output_dir;
}

int run_command(const RunConfig& cfg, std::ostream& log) {
    const fs::path out_dir = resolve_output_dir(cfg);
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) {
        log << "error: cannot create output directory " << out_dir.string() << "\n";
        return kExitIo;
    }

    WarpingProfile profile = make_profile(cfg);
    BaseGrid grid = make_grid(cfg);
    const ConditionReport conditions = check_conditions(profile, cfg.K);
    const PhotonSphereScan photon = photon_sphere_roots(profile);
    const double lambda1 = cfg.lambda1.value_or(grid.lambda1());

    json report;
    report["profile"] = profile.describe();
    report["base"] = *cfg.base_spec;
    report["resolution"] = cfg.resolution;
    report["conditions"] = condition_json(conditions);
    report["photon_sphere"] = photon_json(photon);
    report["stability"] = stability_json(profile, conditions, lambda1);
    report["admissible_run"] = conditions.admissible();
    report["override_used"] = cfg.override_conditions;

    if (!conditions.admissible() && !cfg.override_conditions) {
        report["termination"] = "conditions_failed";
        log << "conditions violated: Q range [" << conditions.min_Q << ", " << conditions.max_Q
            << "] vs K = " << cfg.K << " (set override_conditions = true to run anyway)\n";
        if (!write_text(out_dir / "report.json", report.dump(2) + "\n", log)) return kExitIo;
        return kExitConditions;
    }
    if (!conditions.admissible())
        log << "warning: running outside the admissibility conditions (override)\n";

    IsoProfile iso(profile, grid.area(), cfg.iso_nodes);
    Field rho0 = build_rho0(cfg, grid, profile);
    GraphState initial(std::move(rho0), 0.0);
    const double V0 = enclosed_volume(grid, profile, initial);
    const double A0 = area(grid, profile, initial);

    FlowConfig fc;
    fc.cfl = cfg.cfl;
    fc.t_max = cfg.t_max;
    fc.tol_osc = cfg.tol_osc;
    fc.record_every = cfg.record_every;
    fc.K = cfg.K;
    fc.h_evolution = cfg.h_evolution;
    fc.store_states = cfg.emit_states || cfg.h_evolution;

    Trajectory traj = run(grid, profile, fc, std::move(initial), iso);

    report["V0"] = V0;
    report["A0"] = A0;
    report["r_star"] = iso.r_star(V0);
    report["termination"] = termination_name(traj.termination);
    if (!traj.failure_reason.empty()) report["failure_reason"] = traj.failure_reason;

    const GraphState& final_state = traj.states.back();
    const DiagnosticsRecord& last = traj.records.back();
    const double xi_v0 = iso.xi(V0);
    report["final"] = json{{"t", last.t},
                           {"V", last.V},
                           {"A", last.A},
                           {"osc_rho", last.osc_rho},
                           {"xi_of_V0", xi_v0},
                           {"area_gap_rel", (last.A - xi_v0) / last.A}};

    try {
        const DecayFit fit = decay_fit(traj.records, cfg.K);
        report["decay"] = json{
            {"mode", fit.mode == DecayMode::Exponential ? "Exponential" : "Algebraic"},
            {"rate", fit.rate},
            {"quality", fit.quality}};
    } catch (const InsufficientDataError&) {
        report["decay"] = nullptr;
    }

    {
        std::ostringstream series;
        io::write_series_csv(series, traj.records);
        if (!write_text(out_dir / "series.csv", series.str(), log)) return kExitIo;
    }
    if (cfg.emit_states) {
        for (std::size_t k = 0; k < traj.states.size(); ++k) {
            std::ostringstream st;
            io::write_state_csv(st, grid, traj.states[k]);
            if (!write_text(out_dir / ("state_" + std::to_string(k) + ".csv"), st.str(), log))
                return kExitIo;
        }
    }
    if (!write_text(out_dir / "report.json", report.dump(2) + "\n", log)) return kExitIo;

    log << "termination: " << termination_name(traj.termination) << " at t = " << last.t
        << ", osc rho = " << last.osc_rho << ", final state nodes = " << final_state.rho.size()
        << "\n";
    switch (traj.termination) {
        case Termination::Converged: return kExitConverged;
        case Termination::TMaxReached: return kExitTMax;
        case Termination::NumericalFailure: return kExitNumericalFailure;
    }
    return kExitNumericalFailure;
}

int check_command(const RunConfig& cfg, std::ostream& log) {
    const fs::path out_dir = resolve_output_dir(cfg);
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) {
        log << "error: cannot create output directory " << out_dir.string() << "\n";
        return kExitIo;
    }
    WarpingProfile profile = make_profile(cfg);
    const ConditionReport conditions = check_conditions(profile, cfg.K);
    const PhotonSphereScan photon = photon_sphere_roots(profile);

    json report;
    report["profile"] = profile.describe();
    report["conditions"] = condition_json(conditions);
    report["photon_sphere"] = photon_json(photon);
    std::optional<double> lambda1 = cfg.lambda1;
    if (!lambda1 && cfg.base_spec) lambda1 = make_grid(cfg).lambda1();
    if (lambda1) report["stability"] = stability_json(profile, conditions, *lambda1);

    if (!write_text(out_dir / "report.json", report.dump(2) + "\n", log)) return kExitIo;
    log << "profile " << profile.describe() << ": Q in [" << conditions.min_Q << ", "
        << conditions.max_Q << "], K = " << cfg.K
        << (conditions.admissible() ? " (admissible)" : " (NOT admissible)") << "\n";
    if (photon.identically_zero)
        log << "photon sphere: Q vanishes identically on the band\n";
    else if (!photon.roots.empty()) {
        log << "photon sphere roots:";
        for (double r : photon.roots) log << " " << r;
        log << "\n";
    }
    return kExitConverged;
}

int profile_command(const RunConfig& cfg, std::ostream& log) {
    const fs::path out_dir = resolve_output_dir(cfg);
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) {
        log << "error: cannot create output directory " << out_dir.string() << "\n";
        return kExitIo;
    }
    WarpingProfile profile = make_profile(cfg);
    double base_area;
    if (cfg.base_spec)
        base_area = make_grid(cfg).area();
    else
        base_area = *cfg.base_area;
    IsoProfile iso(profile, base_area, cfg.iso_nodes);
    std::ostringstream csv;
    iso.write_csv(csv);
    if (!write_text(out_dir / "profile.csv", csv.str(), log)) return kExitIo;
    log << "wrote isoperimetric table for " << profile.describe() << " (base area "
        << base_area << ")\n";
    return kExitConverged;
}

} // namespace warpflow::cli
