// warpflow: volume-preserving graph flow in warped product spaces.
//
//   warpflow run <config>      flow run with full diagnostics output
//   warpflow check <config>    admissibility / photon-sphere / stability report
//   warpflow profile <config>  isoperimetric table (r, A, V) as CSV

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "warpflow/cli.hpp"

namespace {

int load_config(const std::string& path, warpflow::ConfigPurpose purpose,
                warpflow::RunConfig& cfg) {
    std::ifstream in(path);
    if (!in) {
        std::cerr << "error: cannot read config file '" << path << "'\n";
        return warpflow::cli::kExitIo;
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    auto parsed = warpflow::parse_config(buffer.str(), purpose);
    if (!parsed.ok()) {
        for (const auto& issue : parsed.issues) {
            std::cerr << path;
            if (issue.line > 0) std::cerr << ":" << issue.line;
            if (!issue.key.empty()) std::cerr << ": key '" << issue.key << "'";
            std::cerr << ": " << issue.message << "\n";
        }
        return warpflow::cli::kExitUsage;
    }
    cfg = *parsed.config;
    return 0;
}

template <typename Command>
int dispatch(const std::string& path, warpflow::ConfigPurpose purpose, Command&& command) {
    warpflow::RunConfig cfg;
    if (int rc = load_config(path, purpose, cfg); rc != 0) return rc;
    try {
        return command(cfg);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return warpflow::cli::kExitUsage;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"volume-preserving hypersurface flow in warped products"};
    app.require_subcommand(1);

    std::string run_config, check_config, profile_config;
    auto* run_cmd = app.add_subcommand("run", "execute a flow run");
    run_cmd->add_option("config", run_config, "config file")->required();
    auto* check_cmd = app.add_subcommand("check", "conditions / photon sphere / stability");
    check_cmd->add_option("config", check_config, "config file")->required();
    auto* profile_cmd = app.add_subcommand("profile", "isoperimetric table only");
    profile_cmd->add_option("config", profile_config, "config file")->required();

    CLI11_PARSE(app, argc, argv);

    if (run_cmd->parsed())
        return dispatch(run_config, warpflow::ConfigPurpose::Run, [](const auto& cfg) {
            return warpflow::cli::run_command(cfg, std::cout);
        });
    if (check_cmd->parsed())
        return dispatch(check_config, warpflow::ConfigPurpose::Check, [](const auto& cfg) {
            return warpflow::cli::check_command(cfg, std::cout);
        });
    return dispatch(profile_config, warpflow::ConfigPurpose::Profile, [](const auto& cfg) {
        return warpflow::cli::profile_command(cfg, std::cout);
    });
}
