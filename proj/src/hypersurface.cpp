#include "warpflow/hypersurface.hpp"

#include <cmath>

namespace warpflow {

namespace {

void require_n2(const BaseGrid& grid, const WarpingProfile& profile) {
    if (profile.n() != grid.n())
        throw UnsupportedError("graph geometry needs profile n matching the base dimension");
}

} // namespace

namespace detail {

// Mixed-index b tensor and the quantities shared by the speed kernel and the
// extrinsic bundle. On exit the workspace holds d1/d2, g2, phi, dphi, w2, w,
// u, b11/b22 (+ b12/b21 on the torus) and H.
static void geometry_core(const BaseGrid& grid, const WarpingProfile& profile,
                          const Field& rho, SpeedWorkspace& ws) {
    require_n2(grid, profile);
    const bool sphere = grid.kind() == GridKind::AxisymSphere;

    grid.d1_into(rho, ws.d1);
    if (sphere) {
        ws.g2 = ws.d1.square();
    } else {
        grid.d1y_into(rho, ws.d2);
        ws.g2 = ws.d1.square() + ws.d2.square();
    }
    profile.eval_fields(rho, ws.phi, ws.dphi);
    ws.w2 = ws.phi.square() + ws.g2;
    ws.w = ws.w2.sqrt();

    grid.d2_into(rho, ws.h11);
    // grad(|grad rho|^2 / 2) as the Hessian contraction rho^k rho_kj, which
    // keeps the mixed-index tensor algebraically identical to the covariant
    // route (the two mean-curvature paths then differ only in rounding)
    ws.tmp = ws.dphi * ws.phi.square(); // phi' phi^2, reused across components
    if (sphere) {
        ws.s1 = ws.d1 * ws.h11;
        ws.h22 = grid.cot_theta() * ws.d1; // mixed Hessian ^phi_phi
        ws.b11 = -ws.phi * ws.w2 * ws.h11 + ws.phi * ws.d1 * ws.s1 + ws.tmp * ws.g2 +
                 ws.tmp * ws.w2;
        ws.b22 = -ws.phi * ws.w2 * ws.h22 + ws.tmp * ws.w2;
    } else {
        grid.d2y_into(rho, ws.h22);
        grid.dxy_into(rho, ws.H /*scratch*/, ws.h12);
        ws.s1 = ws.d1 * ws.h11 + ws.d2 * ws.h12;
        ws.s2 = ws.d1 * ws.h12 + ws.d2 * ws.h22;
        ws.b11 = -ws.phi * ws.w2 * ws.h11 + ws.phi * ws.d1 * ws.s1 +
                 ws.tmp * ws.d1.square() + ws.tmp * ws.w2;
        ws.b22 = -ws.phi * ws.w2 * ws.h22 + ws.phi * ws.d2 * ws.s2 +
                 ws.tmp * ws.d2.square() + ws.tmp * ws.w2;
        ws.b12 = -ws.phi * ws.w2 * ws.h12 + ws.phi * ws.d1 * ws.s2 +
                 ws.tmp * ws.d1 * ws.d2;
        ws.b21 = -ws.phi * ws.w2 * ws.h12 + ws.phi * ws.d2 * ws.s1 +
                 ws.tmp * ws.d1 * ws.d2;
    }
    // H = b^i_i / (phi^2 w^3), u = phi^2 / w
    ws.tmp = ws.phi.square() * ws.w2 * ws.w;
    ws.H = (ws.b11 + ws.b22) / ws.tmp;
    ws.u = ws.phi.square() / ws.w;
}

void speed_into(const BaseGrid& grid, const WarpingProfile& profile, const Field& rho,
                SpeedWorkspace& ws, Field& out) {
    geometry_core(grid, profile, rho, ws);
    out = (2.0 * ws.dphi - ws.H * ws.u) * ws.w / ws.phi;
}

} // namespace detail

ExtrinsicBundle extrinsic(const BaseGrid& grid, const WarpingProfile& profile,
                          const GraphState& state) {
    require_n2(grid, profile);
    detail::SpeedWorkspace ws;
    detail::geometry_core(grid, profile, state.rho, ws);

    ExtrinsicBundle b;
    b.omega = std::move(ws.w);
    b.u = std::move(ws.u);
    b.H = std::move(ws.H);
    b.grad_sq = std::move(ws.g2);
    b.area_element = ws.phi * b.omega;

    const Field denom = ws.phi.square() * ws.w2 * b.omega;
    b.shape11 = ws.b11 / denom;
    b.shape22 = ws.b22 / denom;
    if (grid.kind() == GridKind::AxisymSphere) {
        b.shape12 = Field::Zero(state.rho.size());
        b.shape21 = Field::Zero(state.rho.size());
        b.sigma2 = b.shape11 * b.shape22;
    } else {
        b.shape12 = ws.b12 / denom;
        b.shape21 = ws.b21 / denom;
        b.sigma2 = b.shape11 * b.shape22 - b.shape12 * b.shape21;
    }
    return b;
}

double area(const BaseGrid& grid, const WarpingProfile& profile, const GraphState& state) {
    require_n2(grid, profile);
    Field phi, dphi;
    profile.eval_fields(state.rho, phi, dphi);
    Field ael = phi * (phi.square() + gradient_sq(grid, state.rho)).sqrt();
    return integrate(grid, ael);
}

double enclosed_volume(const BaseGrid& grid, const WarpingProfile& profile,
                       const GraphState& state) {
    profile.require_in_band(state.rho);
    Field shell(state.rho.size());
    for (Eigen::Index i = 0; i < state.rho.size(); ++i)
        shell[i] = profile.shell_primitive(state.rho[i]);
    return integrate(grid, shell);
}

Field speed(const BaseGrid& grid, const WarpingProfile& profile, const GraphState& state) {
    require_n2(grid, profile);
    detail::SpeedWorkspace ws;
    Field out;
    detail::speed_into(grid, profile, state.rho, ws, out);
    return out;
}

Field mean_curvature_metric_route(const BaseGrid& grid, const WarpingProfile& profile,
                                  const GraphState& state) {
    require_n2(grid, profile);
    const Field& rho = state.rho;
    Field phi, dphi;
    profile.eval_fields(rho, phi, dphi);
    const Field phi2 = phi.square();
    HessianField hess = covariant_hessian(grid, rho);
    GradientField gr = gradient(grid, rho);

    if (grid.kind() == GridKind::AxisymSphere) {
        const Field g2 = gr.d1.square();
        const Field w2 = phi2 + g2;
        const Field w = w2.sqrt();
        const Field hc11 = (-phi * hess.h11 + 2.0 * dphi * g2 + phi2 * dphi) / w;
        const Field hc22 =
            (-phi * hess.h22 + phi2 * dphi * grid.sin_theta().square()) / w;
        const Field ginv11 = (1.0 - g2 / w2) / phi2;
        const Field ginv22 = grid.inv_metric22() / phi2;
        return ginv11 * hc11 + ginv22 * hc22;
    }
    const Field g2 = gr.d1.square() + gr.d2.square();
    const Field w2 = phi2 + g2;
    const Field w = w2.sqrt();
    const Field hc11 = (-phi * hess.h11 + 2.0 * dphi * gr.d1.square() + phi2 * dphi) / w;
    const Field hc22 = (-phi * hess.h22 + 2.0 * dphi * gr.d2.square() + phi2 * dphi) / w;
    const Field hc12 = (-phi * hess.h12 + 2.0 * dphi * gr.d1 * gr.d2) / w;
    const Field ginv11 = (1.0 - gr.d1.square() / w2) / phi2;
    const Field ginv22 = (1.0 - gr.d2.square() / w2) / phi2;
    const Field ginv12 = (-gr.d1 * gr.d2 / w2) / phi2;
    return ginv11 * hc11 + ginv22 * hc22 + 2.0 * ginv12 * hc12;
}

} // namespace warpflow
