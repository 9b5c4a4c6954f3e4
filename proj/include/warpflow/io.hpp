#ifndef WARPFLOW_IO_HPP
#define WARPFLOW_IO_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "warpflow/diagnostics.hpp"

namespace warpflow::io {

/// Shortest decimal that round-trips the exact double.
std::string format_double(double v);

inline constexpr const char* kSeriesHeader =
    "t,V,A,max_grad_sq,osc_rho,min_u,max_H,minkowski_residual,laplace_phi_residual,"
    "iso_slack,shape_consistency";

void write_series_csv(std::ostream& os, const std::vector<DiagnosticsRecord>& records);
std::vector<DiagnosticsRecord> read_series_csv(std::istream& is);

/// One row per node: theta,rho on the sphere, x,y,rho on the torus.
void write_state_csv(std::ostream& os, const BaseGrid& grid, const GraphState& state);

} // namespace warpflow::io

#endif
