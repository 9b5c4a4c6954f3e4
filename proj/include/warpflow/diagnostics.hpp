#ifndef WARPFLOW_DIAGNOSTICS_HPP
#define WARPFLOW_DIAGNOSTICS_HPP

#include <optional>
#include <vector>

#include "warpflow/hypersurface.hpp"
#include "warpflow/isoperimetric.hpp"

namespace warpflow {

/// Per-record scalars written to series.csv (h_evolution_residual is kept
/// out of the CSV contract; it is filled only when enabled).
struct DiagnosticsRecord {
    double t = 0.0;
    double V = 0.0;
    double A = 0.0;
    double max_grad_sq = 0.0;
    double osc_rho = 0.0;
    double min_u = 0.0;
    double max_H = 0.0;
    double minkowski_residual = 0.0;
    double laplace_phi_residual = 0.0;
    double iso_slack = 0.0;
    double shape_consistency = 0.0;
    std::optional<double> h_evolution_residual;
};

enum class DecayMode { Exponential, Algebraic };

struct DecayFit {
    DecayMode mode = DecayMode::Exponential;
    double rate = 0.0;    // alpha-hat for exponential, C-hat for algebraic
    double quality = 0.0; // R^2 of the underlying linear fit
};

/// Integral gap in the Minkowski balance
///   (n-1) int phi' s1 dmu - 2 int s2 u dmu - int (curvature term) dmu,
/// normalized by the area. The curvature term integrand is
///   -[(n-1)(K - phi'^2 + phi phi'') + (n-1)(K_base - K)] |grad rho|^2 / w^3
/// and its first coefficient is exactly zero for the constant-Q equality
/// kinds with K matching.
double minkowski_residual(const BaseGrid& grid, const WarpingProfile& profile,
                          const GraphState& state, double K);

/// RMS (area-weighted, divided by sqrt(A)) of the pointwise gap between the
/// induced-metric Laplacian of the primitive of phi composed with rho and
/// n phi' - H u.
double laplace_phi_residual(const BaseGrid& grid, const WarpingProfile& profile,
                            const GraphState& state);

/// Residual of the mean-curvature evolution identity over a three-state
/// window: three-point dH/dt (graph parametrization, so the tangential
/// advection along the speed enters) minus the parabolic right side.
/// Throws InsufficientDataError when the window spacings differ by more
/// than a factor of two.
double h_evolution_residual(const BaseGrid& grid, const WarpingProfile& profile, double K,
                            const GraphState& prev, const GraphState& mid,
                            const GraphState& next);

/// Gradient-decay fit over the second half of the eligible records
/// (max_grad_sq > 1e-14). K > 0: slope of log(max_grad_sq) vs t gives the
/// exponential rate; K = 0: slope of 1/max_grad_sq vs t gives the algebraic
/// constant. Needs at least 20 eligible records.
DecayFit decay_fit(const std::vector<DiagnosticsRecord>& records, double K);

/// Max-node gap between the two mean-curvature routes, relative to the
/// field scale.
double shape_consistency(const BaseGrid& grid, const WarpingProfile& profile,
                         const GraphState& state);

/// Assemble the full record for one state (single extrinsic evaluation).
DiagnosticsRecord collect_record(const BaseGrid& grid, const WarpingProfile& profile,
                                 const GraphState& state, double K, const IsoProfile* iso);

namespace detail {
/// Laplace–Beltrami of psi in the induced graph metric; exposed for tests.
Field induced_laplacian(const BaseGrid& grid, const Field& phi, const Field& omega,
                        const GradientField& grad_rho, const Field& psi);
} // namespace detail

} // namespace warpflow

#endif
