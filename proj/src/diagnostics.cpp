#include "warpflow/diagnostics.hpp"

#include <cmath>
#include <limits>

namespace warpflow {

namespace detail {

Field induced_laplacian(const BaseGrid& grid, const Field& phi, const Field& omega,
                        const GradientField& grad_rho, const Field& psi) {
    if (grid.kind() == GridKind::AxisymSphere) {
        const int N = grid.resolution();
        const double h = grid.spacing();
        const Field coeff = phi * grid.sin_theta() / omega; // flux coefficient
        const Field denom = phi * omega * grid.sin_theta() * (h * h);
        Field out(N);
        double flux_prev = 0.0; // vanishes at both poles
        for (int i = 0; i < N; ++i) {
            const double flux_next =
                (i + 1 < N) ? 0.5 * (coeff[i] + coeff[i + 1]) * (psi[i + 1] - psi[i]) : 0.0;
            out[i] = (flux_next - flux_prev) / denom[i];
            flux_prev = flux_next;
        }
        return out;
    }
    const Field w2 = omega.square();
    const Field P = omega / phi; // phi*omega*g^{ii} prefactor
    Field px, py;
    grid.d1_into(psi, px);
    grid.d1y_into(psi, py);
    const Field fx = P * ((1.0 - grad_rho.d1.square() / w2) * px -
                          (grad_rho.d1 * grad_rho.d2 / w2) * py);
    const Field fy = P * ((1.0 - grad_rho.d2.square() / w2) * py -
                          (grad_rho.d1 * grad_rho.d2 / w2) * px);
    Field div_x, div_y;
    grid.d1_into(fx, div_x);
    grid.d1y_into(fy, div_y);
    return (div_x + div_y) / (phi * omega);
}

namespace {

/// g^{ij} a_i b_j for the induced graph metric.
Field induced_inner(const BaseGrid& grid, const Field& phi, const Field& w2,
                    const GradientField& grad_rho, const GradientField& a,
                    const GradientField& b) {
    if (grid.kind() == GridKind::AxisymSphere) {
        return (a.d1 * b.d1 - grad_rho.d1 * a.d1 * grad_rho.d1 * b.d1 / w2) / phi.square();
    }
    const Field ra = grad_rho.d1 * a.d1 + grad_rho.d2 * a.d2;
    const Field rb = grad_rho.d1 * b.d1 + grad_rho.d2 * b.d2;
    return (a.d1 * b.d1 + a.d2 * b.d2 - ra * rb / w2) / phi.square();
}

double minkowski_impl(const BaseGrid& grid, const WarpingProfile& profile,
                      const GraphState& state, const ExtrinsicBundle& b, double K) {
    Field phi, dphi;
    profile.eval_fields(state.rho, phi, dphi);
    const int n = grid.n();
    const Field dmu = b.area_element * grid.weights();
    const double lhs = double(n - 1) * (dphi * b.H * dmu).sum();
    const double rhs = 2.0 * (b.sigma2 * b.u * dmu).sum();
    const Field qgap = profile.q_gap_field(K, state.rho); // K - Q(rho), exact 0 on equality
    const double deficit = grid.k_base() - K;
    const Field w3 = b.omega * b.omega * b.omega;
    const double corr =
        (-(double(n - 1)) * (qgap + deficit) * b.grad_sq / w3 * dmu).sum();
    const double A = dmu.sum();
    return (lhs - rhs - corr) / A;
}

double laplace_phi_impl(const BaseGrid& grid, const WarpingProfile& profile,
                        const GraphState& state, const ExtrinsicBundle& b) {
    Field phi, dphi;
    profile.eval_fields(state.rho, phi, dphi);
    Field big(state.rho.size());
    for (Eigen::Index i = 0; i < state.rho.size(); ++i)
        big[i] = profile.big_phi(state.rho[i]);
    const GradientField gr = gradient(grid, state.rho);
    const Field lap = induced_laplacian(grid, phi, b.omega, gr, big);
    const Field res = lap - (double(grid.n()) * dphi - b.H * b.u);
    const Field dmu = b.area_element * grid.weights();
    const double A = dmu.sum();
    return std::sqrt((res.square() * dmu).sum() / A);
}

double shape_impl(const BaseGrid& grid, const WarpingProfile& profile,
                  const GraphState& state, const ExtrinsicBundle& b) {
    const Field other = mean_curvature_metric_route(grid, profile, state);
    return (b.H - other).abs().maxCoeff() / (1.0 + b.H.abs().maxCoeff());
}

} // namespace
} // namespace detail

double minkowski_residual(const BaseGrid& grid, const WarpingProfile& profile,
                          const GraphState& state, double K) {
    return detail::minkowski_impl(grid, profile, state, extrinsic(grid, profile, state), K);
}

double laplace_phi_residual(const BaseGrid& grid, const WarpingProfile& profile,
                            const GraphState& state) {
    return detail::laplace_phi_impl(grid, profile, state, extrinsic(grid, profile, state));
}

double shape_consistency(const BaseGrid& grid, const WarpingProfile& profile,
                         const GraphState& state) {
    return detail::shape_impl(grid, profile, state, extrinsic(grid, profile, state));
}

double h_evolution_residual(const BaseGrid& grid, const WarpingProfile& profile, double K,
                            const GraphState& prev, const GraphState& mid,
                            const GraphState& next) {
    const double d1 = mid.t - prev.t;
    const double d2 = next.t - mid.t;
    if (!(d1 > 0.0) || !(d2 > 0.0) || d2 > 2.0 * d1 || d1 > 2.0 * d2)
        throw InsufficientDataError("h_evolution_residual: window spacing unusable");

    const auto b_prev = extrinsic(grid, profile, prev);
    const auto b_next = extrinsic(grid, profile, next);
    const auto b = extrinsic(grid, profile, mid);
    // three-point first derivative, second order for any spacing
    const Field dHdt = (d1 * d1 * b_next.H + (d2 * d2 - d1 * d1) * b.H -
                        d2 * d2 * b_prev.H) /
                       (d1 * d2 * (d1 + d2));

    Field phi, dphi, d2phi, d3phi;
    profile.eval_jet_fields(mid.rho, phi, dphi, d2phi, d3phi);
    const Field phi2 = phi.square();
    const Field w2 = b.omega.square();
    const GradientField gr = gradient(grid, mid.rho);
    const GradientField gH = gradient(grid, b.H);
    const GradientField gu = gradient(grid, b.u);

    const int n = grid.n();
    const Field lap_H = detail::induced_laplacian(grid, phi, b.omega, gr, b.H);
    // grad Phi = phi * grad rho in base coordinates
    GradientField gPhi{phi * gr.d1, phi * gr.d2};
    const Field hh = detail::induced_inner(grid, phi, w2, gr, gH, gPhi);
    const Field hu = detail::induced_inner(grid, phi, w2, gr, gH, gu);
    const Field a2 = b.shape11.square() + b.shape22.square() +
                     2.0 * b.shape12 * b.shape21;

    // 1 - u^2/phi^2 == |grad rho|^2 / w^2 (exact on slices)
    const Field sin2 = b.grad_sq / w2;
    const Field grouped = double(n - 1) * dphi * (K - dphi.square()) +
                          double(n - 2) * phi * dphi * d2phi + phi2 * d3phi;
    const Field curvature1 = -double(n) / phi2 * grouped * sin2;
    const double deficit = double(n - 1) * (grid.k_base() - K);
    const Field curvature2 = -double(n) * dphi / (phi2 * phi2 * phi2) * deficit *
                             b.grad_sq * b.u.square();

    const Field f = double(n) * dphi - b.H * b.u;
    Field advection;
    if (grid.kind() == GridKind::AxisymSphere) {
        advection = f / (phi * b.omega) * gr.d1 * gH.d1;
    } else {
        advection = f / (phi * b.omega) * (gr.d1 * gH.d1 + gr.d2 * gH.d2);
    }

    const Field rhs = b.u * lap_H + b.H * hh + 2.0 * hu +
                      dphi * (b.H.square() - double(n) * a2) + curvature1 + curvature2;
    const Field res = dHdt - advection - rhs;
    const Field dmu = b.area_element * grid.weights();
    return std::sqrt((res.square() * dmu).sum() / dmu.sum());
}

DecayFit decay_fit(const std::vector<DiagnosticsRecord>& records, double K) {
    std::vector<const DiagnosticsRecord*> eligible;
    for (const auto& r : records)
        if (r.max_grad_sq > 1e-14) eligible.push_back(&r);
    if (eligible.size() < 20)
        throw InsufficientDataError("decay_fit: need at least 20 records with active gradient");

    const double t_mid = 0.5 * (eligible.front()->t + eligible.back()->t);
    std::vector<double> t, y;
    for (const auto* r : eligible) {
        if (r->t < t_mid) continue;
        t.push_back(r->t);
        y.push_back(K > 0.0 ? std::log(r->max_grad_sq) : 1.0 / r->max_grad_sq);
    }
    if (t.size() < 2)
        throw InsufficientDataError("decay_fit: fit window too small");
    const num::LinearFit fit = num::fit_line(t, y);

    DecayFit out;
    if (K > 0.0) {
        out.mode = DecayMode::Exponential;
        out.rate = -fit.slope;
    } else {
        out.mode = DecayMode::Algebraic;
        out.rate = fit.slope;
    }
    out.quality = fit.r2;
    return out;
}

DiagnosticsRecord collect_record(const BaseGrid& grid, const WarpingProfile& profile,
                                 const GraphState& state, double K, const IsoProfile* iso) {
    const auto b = extrinsic(grid, profile, state);
    DiagnosticsRecord rec;
    rec.t = state.t;
    rec.A = integrate(grid, b.area_element);
    rec.V = enclosed_volume(grid, profile, state);
    rec.max_grad_sq = b.grad_sq.maxCoeff();
    rec.osc_rho = state.rho.maxCoeff() - state.rho.minCoeff();
    rec.min_u = b.u.minCoeff();
    rec.max_H = b.H.maxCoeff();
    rec.minkowski_residual = detail::minkowski_impl(grid, profile, state, b, K);
    rec.laplace_phi_residual = detail::laplace_phi_impl(grid, profile, state, b);
    rec.shape_consistency = detail::shape_impl(grid, profile, state, b);
    if (iso != nullptr) {
        try {
            rec.iso_slack = rec.A - iso->xi(rec.V);
        } catch (const OutOfRangeError&) {
            rec.iso_slack = std::numeric_limits<double>::quiet_NaN();
        }
    } else {
        rec.iso_slack = std::numeric_limits<double>::quiet_NaN();
    }
    return rec;
}

} // namespace warpflow
