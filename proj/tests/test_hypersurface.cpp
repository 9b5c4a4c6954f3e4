#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "warpflow/hypersurface.hpp"
#include "warpflow/numeric.hpp"
#include "support.hpp"

using namespace warpflow;

namespace {

// Independent oracle for the cap-shaped test graph rho = 1 + 0.1 cos(theta)
// over the flat cone profile phi = r: every geometric quantity evaluated from
// closed-form derivatives (no grid differencing anywhere).
struct CapOracle {
    double rho(double t) const { return 1.0 + 0.1 * std::cos(t); }
    double rho_t(double t) const { return -0.1 * std::sin(t); }
    double rho_tt(double t) const { return -0.1 * std::cos(t); }

    double H(double t) const {
        const double r = rho(t), r1 = rho_t(t), r2 = rho_tt(t);
        const double g2 = r1 * r1;
        const double w2 = r * r + g2;
        const double s1 = r1 * r2; // d/dt of g2/2
        const double b11 = -r * w2 * r2 + r * r1 * s1 + r * r * g2 + r * r * w2;
        const double mix = (std::cos(t) / std::sin(t)) * r1;
        const double b22 = -r * w2 * mix + r * r * w2;
        return (b11 + b22) / (r * r * w2 * std::sqrt(w2));
    }
    double u(double t) const {
        const double r = rho(t);
        return r * r / std::sqrt(r * r + rho_t(t) * rho_t(t));
    }
    double speed(double t) const {
        const double r = rho(t);
        const double w = std::sqrt(r * r + rho_t(t) * rho_t(t));
        return (2.0 - H(t) * u(t)) * w / r;
    }
    double area_integrand(double t) const { // 2 pi sin(t) phi omega
        const double r = rho(t);
        return 2.0 * M_PI * std::sin(t) * r * std::sqrt(r * r + rho_t(t) * rho_t(t));
    }
    double volume_integrand(double t) const { // 2 pi sin(t) * rho^3/3
        const double r = rho(t);
        return 2.0 * M_PI * std::sin(t) * r * r * r / 3.0;
    }
};

} // namespace

TEST_CASE("slice geometry equals the warped slice formulas") {
    auto grid = BaseGrid::sphere(96);
    auto prof = WarpingProfile::sin_kind(0.0, M_PI, 2);
    const double c = 0.9;
    GraphState st(Field::Constant(grid.node_count(), c), 0.0);
    auto b = extrinsic(grid, prof, st);

    const double phi = std::sin(c), dphi = std::cos(c);
    CHECK((b.omega - phi).abs().maxCoeff() < 1e-13);
    CHECK((b.u - phi).abs().maxCoeff() < 1e-13);
    CHECK((b.H - 2.0 * dphi / phi).abs().maxCoeff() < 1e-13);
    CHECK((b.shape11 - dphi / phi).abs().maxCoeff() < 1e-13);
    CHECK((b.shape22 - dphi / phi).abs().maxCoeff() < 1e-13);
    CHECK((b.sigma2 - (dphi / phi) * (dphi / phi)).abs().maxCoeff() < 1e-13);
    CHECK((b.area_element - phi * phi).abs().maxCoeff() < 1e-13);
}

TEST_CASE("unit sphere in flat space: H = 2, u = 1, A = 4pi, V = 4pi/3") {
    auto grid = BaseGrid::sphere(128);
    auto prof = WarpingProfile::linear(0.0, 2.0, 2);
    GraphState st(Field::Ones(grid.node_count()), 0.0);
    auto b = extrinsic(grid, prof, st);
    CHECK((b.H - 2.0).abs().maxCoeff() < 1e-13);
    CHECK((b.u - 1.0).abs().maxCoeff() < 1e-13);
    CHECK(area(grid, prof, st) == doctest::Approx(4.0 * M_PI).epsilon(1e-12));
    CHECK(enclosed_volume(grid, prof, st) ==
          doctest::Approx(4.0 * M_PI / 3.0).epsilon(1e-12));
}

TEST_CASE("slice stationarity is exact at any resolution") {
    for (int N : {32, 128, 512}) {
        auto grid = BaseGrid::sphere(N);
        auto prof = WarpingProfile::sin_kind(0.0, M_PI, 2);
        GraphState st(Field::Constant(grid.node_count(), 0.73), 0.0);
        CHECK(speed(grid, prof, st).abs().maxCoeff() <= 1e-12);
    }
    auto torus = BaseGrid::torus(48, 2.0 * M_PI);
    auto prof = WarpingProfile::exponential(1.0, 0.5, 0.0, 3.0, 2);
    GraphState st(Field::Constant(torus.node_count(), 1.2), 0.0);
    CHECK(speed(torus, prof, st).abs().maxCoeff() <= 1e-12);
}

TEST_CASE("cap graph converges to the analytic oracle at second order") {
    CapOracle oracle;
    auto prof = WarpingProfile::linear(0.0, 2.0, 2);
    double prev_h = 0, prev_s = 0, prev_a = 0, prev_v = 0;
    const double A_ref = num::integrate_adaptive(
        [&](double t) { return oracle.area_integrand(t); }, 0.0, M_PI, 1e-13);
    const double V_ref = num::integrate_adaptive(
        [&](double t) { return oracle.volume_integrand(t); }, 0.0, M_PI, 1e-13);
    for (int k = 0; k < 3; ++k) {
        const int N = 64 << k;
        auto grid = BaseGrid::sphere(N);
        Field rho(N);
        for (int i = 0; i < N; ++i) rho[i] = oracle.rho(grid.theta()[i]);
        GraphState st(rho, 0.0);
        auto b = extrinsic(grid, prof, st);
        Field sp = speed(grid, prof, st);

        double eh = 0, es = 0;
        for (int i = 0; i < N; ++i) {
            eh = std::max(eh, std::abs(b.H[i] - oracle.H(grid.theta()[i])));
            es = std::max(es, std::abs(sp[i] - oracle.speed(grid.theta()[i])));
        }
        const double ea = std::abs(area(grid, prof, st) - A_ref);
        const double ev = std::abs(enclosed_volume(grid, prof, st) - V_ref);
        if (k > 0) {
            CHECK(wft::observed_order(prev_h, eh) > 1.9);
            CHECK(wft::observed_order(prev_s, es) > 1.9);
            CHECK(wft::observed_order(prev_a, ea) > 1.9);
            CHECK(wft::observed_order(prev_v, ev) > 1.9);
        }
        prev_h = eh;
        prev_s = es;
        prev_a = ea;
        prev_v = ev;
    }
}

TEST_CASE("constant warping reduces the speed to the mean curvature divergence form") {
    const double a = 1.3;
    auto prof = WarpingProfile::constant(a, 0.0, 3.0, 2);
    double prev = 0;
    for (int k = 0; k < 3; ++k) {
        const int N = 32 << k;
        auto grid = BaseGrid::torus(N, 2.0 * M_PI);
        Field rho = wft::torus_field(grid, [](double x, double y) {
            return 1.5 + 0.3 * std::cos(x) + 0.2 * std::sin(y);
        });
        GraphState st(rho, 0.0);
        Field sp = speed(grid, prof, st);

        // div( grad rho / sqrt(a^2 + |grad rho|^2) ) with centered stencils
        GradientField gr = gradient(grid, rho);
        Field W = (a * a + gr.d1.square() + gr.d2.square()).sqrt();
        Field fx = gr.d1 / W, fy = gr.d2 / W;
        Field dxx, dyy;
        grid.d1_into(fx, dxx);
        grid.d1y_into(fy, dyy);
        const double err = (sp - dxx - dyy).abs().maxCoeff();
        if (k > 0) CHECK(wft::observed_order(prev, err) > 1.9);
        prev = err;
    }
}

TEST_CASE("positivity and Newton-MacLaurin hold for random in-band states") {
    std::mt19937 rng(20240811);
    auto sphere = BaseGrid::sphere(96);
    auto torus = BaseGrid::torus(40, 2.0 * M_PI);
    auto psin = WarpingProfile::sin_kind(0.0, M_PI, 2);
    auto pexp = WarpingProfile::exponential(1.0, 0.5, 0.0, 3.0, 2);
    for (int trial = 0; trial < 40; ++trial) {
        GraphState st_s(wft::random_smooth_field(sphere, rng, 1.4, 0.5), 0.0);
        auto bs = extrinsic(sphere, psin, st_s);
        CHECK(bs.u.minCoeff() > 0.0);
        CHECK(bs.area_element.minCoeff() > 0.0);
        CHECK((bs.H.square() - 4.0 * bs.sigma2).minCoeff() > -1e-10);

        GraphState st_t(wft::random_smooth_field(torus, rng, 1.5, 0.4), 0.0);
        auto bt = extrinsic(torus, pexp, st_t);
        CHECK(bt.u.minCoeff() > 0.0);
        CHECK(bt.area_element.minCoeff() > 0.0);
        CHECK((bt.H.square() - 4.0 * bt.sigma2).minCoeff() > -1e-10);
    }
}

TEST_CASE("metric determinant identity") {
    std::mt19937 rng(7);
    auto torus = BaseGrid::torus(32, 2.0 * M_PI);
    auto prof = WarpingProfile::exponential(1.0, 0.5, 0.0, 3.0, 2);
    Field rho = wft::random_smooth_field(torus, rng, 1.5, 0.4);
    Field phi, dphi;
    prof.eval_fields(rho, phi, dphi);
    GradientField gr = gradient(torus, rho);
    const Field g2 = gr.d1.square() + gr.d2.square();
    // det(phi^2 I + drho x drho) vs phi^2 (phi^2 + |grad rho|^2)
    const Field lhs = (phi.square() + gr.d1.square()) * (phi.square() + gr.d2.square()) -
                      (gr.d1 * gr.d2).square();
    const Field rhs = phi.square() * (phi.square() + g2);
    CHECK(((lhs - rhs) / rhs).abs().maxCoeff() < 1e-12);
}

TEST_CASE("dV/dr consistency on slices") {
    auto grid = BaseGrid::sphere(64);
    auto prof = WarpingProfile::sin_kind(0.0, M_PI, 2);
    const double c = 1.1;
    const double A = area(grid, prof, GraphState(Field::Constant(64, c), 0.0));
    double prev_err = 0;
    for (int k = 0; k < 3; ++k) {
        const double d = 1e-2 / (1 << k);
        const double V1 = enclosed_volume(grid, prof, GraphState(Field::Constant(64, c + d), 0.0));
        const double V0 = enclosed_volume(grid, prof, GraphState(Field::Constant(64, c), 0.0));
        const double err = std::abs((V1 - V0) / d - A);
        if (k > 0) CHECK(err < 0.75 * prev_err); // first-order forward difference
        prev_err = err;
    }
}

TEST_CASE("band violations raise OutOfBand") {
    auto grid = BaseGrid::sphere(32);
    auto prof = WarpingProfile::sin_kind(0.2, 2.5, 2);
    GraphState st(Field::Constant(grid.node_count(), 2.8), 0.0);
    CHECK_THROWS_AS((void)extrinsic(grid, prof, st), OutOfBandError);
    CHECK_THROWS_AS((void)speed(grid, prof, st), OutOfBandError);
    CHECK_THROWS_AS((void)enclosed_volume(grid, prof, st), OutOfBandError);
    CHECK_THROWS_AS(GraphState(Field::Constant(4, std::nan("")), 0.0), NonFiniteError);
}
