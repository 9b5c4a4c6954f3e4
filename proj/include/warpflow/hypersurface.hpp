#ifndef WARPFLOW_HYPERSURFACE_HPP
#define WARPFLOW_HYPERSURFACE_HPP

#include "warpflow/base_grid.hpp"
#include "warpflow/warping.hpp"

namespace warpflow {

/// The flow's sole unknown: radial field rho over the base at time t.
struct GraphState {
    Field rho;
    double t = 0.0;

    GraphState() = default;
    GraphState(Field r, double time) : rho(std::move(r)), t(time) {
        if (!rho.allFinite()) throw NonFiniteError("GraphState: rho contains NaN/Inf");
    }
};

/// Extrinsic geometry of the graph r = rho(p). All tensors are scalarized:
/// shape11/12/21/22 are the mixed Weingarten components (sphere states are
/// diagonal with 12 = 21 = 0).
struct ExtrinsicBundle {
    Field omega;        // sqrt(phi^2 + |grad rho|^2)
    Field u;            // support function phi^2 / omega
    Field H;            // mean curvature (trace of shape)
    Field sigma2;       // det of shape (n = 2)
    Field area_element; // phi^{n-1} omega
    Field shape11, shape12, shape21, shape22;
    Field grad_sq;      // |grad rho|^2 (kept for diagnostics)
};

/// Full extrinsic bundle; throws OutOfBandError when rho leaves the band.
ExtrinsicBundle extrinsic(const BaseGrid& grid, const WarpingProfile& profile,
                          const GraphState& state);

/// Hypersurface area = integral of the area element.
double area(const BaseGrid& grid, const WarpingProfile& profile, const GraphState& state);

/// Volume enclosed between the graph and the inner band slice.
double enclosed_volume(const BaseGrid& grid, const WarpingProfile& profile,
                       const GraphState& state);

/// Normal speed transported to the graph parametrization:
/// (n phi' - H u) omega / phi per node.
Field speed(const BaseGrid& grid, const WarpingProfile& profile, const GraphState& state);

/// Mean curvature through the induced-metric route (covariant second
/// fundamental form contracted with the full graph inverse metric);
/// algebraically identical to the bundle's H, numerically independent.
Field mean_curvature_metric_route(const BaseGrid& grid, const WarpingProfile& profile,
                                  const GraphState& state);

namespace detail {

/// Scratch space for the speed kernel so stepping allocates nothing.
struct SpeedWorkspace {
    Field d1, d2, g2, s1, s2, phi, dphi, w2, w, h11, h22, h12, b11, b22, b12, b21,
        H, u, tmp;
};

/// Speed evaluation into `out`; shared by speed() and the time stepper.
void speed_into(const BaseGrid& grid, const WarpingProfile& profile, const Field& rho,
                SpeedWorkspace& ws, Field& out);

} // namespace detail

} // namespace warpflow

#endif
