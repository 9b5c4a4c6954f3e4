#ifndef WARPFLOW_CLI_HPP
#define WARPFLOW_CLI_HPP

#include <iosfwd>

#include "warpflow/config.hpp"

namespace warpflow::cli {

// exit codes: 0 converged, 1 usage/config, 2 t_max reached,
// 3 numerical failure, 4 admissibility gate, 5 I/O
inline constexpr int kExitConverged = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitTMax = 2;
inline constexpr int kExitNumericalFailure = 3;
inline constexpr int kExitConditions = 4;
inline constexpr int kExitIo = 5;

/// Output directory after applying the WARPFLOW_OUTPUT override.
std::string resolve_output_dir(const RunConfig& cfg);

/// Condition gate + flow run + emission of series.csv / report.json /
/// optional state_<k>.csv.
int run_command(const RunConfig& cfg, std::ostream& log);

/// Conditions, photon-sphere scan and stability margin only.
int check_command(const RunConfig& cfg, std::ostream& log);

/// Isoperimetric table (profile.csv) only.
int profile_command(const RunConfig& cfg, std::ostream& log);

} // namespace warpflow::cli

#endif
