#ifndef WARPFLOW_FLOW_HPP
#define WARPFLOW_FLOW_HPP

#include <string>
#include <vector>

#include "warpflow/diagnostics.hpp"

namespace warpflow {

struct FlowConfig {
    double cfl = 0.2;        // in (0, 1]
    double t_max = 0.0;
    double tol_osc = 1e-8;   // stop once max rho - min rho falls below
    int record_every = 10;   // steps between diagnostics records
    double K = 0.0;          // curvature constant for residuals/fits
    bool store_states = true;
    bool h_evolution = false; // fill h_evolution_residual on interior records
};

enum class Termination { Converged, TMaxReached, NumericalFailure };

struct Trajectory {
    std::vector<GraphState> states; // snapshots at record times (t=0 and final always)
    std::vector<DiagnosticsRecord> records;
    Termination termination = Termination::TMaxReached;
    std::string failure_reason; // set on NumericalFailure
};

/// Parabolic step bound: cfl * h^2 * min(omega); the diffusion coefficient
/// of the graph flow is bounded by 1/omega.
double stable_dt(const BaseGrid& grid, const WarpingProfile& profile,
                 const GraphState& state, double cfl);

/// One classical RK4 update of rho. Throws OutOfBandError if any stage
/// leaves the band, NonFiniteError on NaN/Inf.
GraphState step(const BaseGrid& grid, const WarpingProfile& profile,
                const GraphState& state, double dt);

/// Iterate stable_dt + step until convergence (osc rho < tol_osc), t_max, or
/// failure; records diagnostics at t = 0, every record_every steps, and at
/// termination. Step errors become Termination::NumericalFailure (with one
/// halved-dt retry on a non-finite result), never an exception.
///
/// Callers are expected to have verified the admissibility conditions (or to
/// be running deliberately outside them); run() itself does not gate on them.
Trajectory run(const BaseGrid& grid, const WarpingProfile& profile, const FlowConfig& cfg,
               GraphState initial, const IsoProfile& iso);

} // namespace warpflow

#endif
