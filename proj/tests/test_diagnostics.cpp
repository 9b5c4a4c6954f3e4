#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "warpflow/diagnostics.hpp"
#include "warpflow/flow.hpp"
#include "support.hpp"

using namespace warpflow;

namespace {

GraphState sphere_cap_state(const BaseGrid& grid, double mean, double amp) {
    Field rho(grid.node_count());
    for (Eigen::Index i = 0; i < rho.size(); ++i)
        rho[i] = mean + amp * std::cos(grid.theta()[i]);
    return GraphState(std::move(rho), 0.0);
}

} // namespace

TEST_CASE("all residuals vanish on slices") {
    auto grid = BaseGrid::sphere(128);
    auto prof = WarpingProfile::sin_kind(0.0, M_PI, 2);
    GraphState st(Field::Constant(grid.node_count(), 0.8), 0.0);
    CHECK(std::abs(minkowski_residual(grid, prof, st, 1.0)) < 1e-12);
    CHECK(laplace_phi_residual(grid, prof, st) < 1e-12);
    CHECK(shape_consistency(grid, prof, st) < 1e-13);

    auto torus = BaseGrid::torus(32, 2.0 * M_PI);
    auto pexp = WarpingProfile::exponential(1.0, 0.5, 0.0, 3.0, 2);
    GraphState st2(Field::Constant(torus.node_count(), 1.3), 0.0);
    CHECK(std::abs(minkowski_residual(torus, pexp, st2, 0.0)) < 1e-12);
    CHECK(laplace_phi_residual(torus, pexp, st2) < 1e-12);
    CHECK(shape_consistency(torus, pexp, st2) < 1e-13);
}

TEST_CASE("residuals decay at second order on the standard perturbed state") {
    auto prof = WarpingProfile::sin_kind(0.0, M_PI, 2);
    double prev_m = 0, prev_l = 0;
    for (int k = 0; k < 3; ++k) {
        const int N = 64 << k;
        auto grid = BaseGrid::sphere(N);
        GraphState st = sphere_cap_state(grid, 0.8, 0.2);
        const double m = std::abs(minkowski_residual(grid, prof, st, 1.0));
        const double l = laplace_phi_residual(grid, prof, st);
        if (k > 0) {
            CHECK(wft::observed_order(prev_m, m) > 1.9);
            CHECK(wft::observed_order(prev_l, l) > 1.9);
        }
        prev_m = m;
        prev_l = l;
    }
}

TEST_CASE("curvature correction term carries the K mismatch on the torus") {
    // linear profile (Q = 1) declared with K = 1 on the flat torus
    // (K_base = 0): the deficit term keeps the corrected identity exact
    // up to O(h^2).
    auto prof = WarpingProfile::linear(0.5, 3.0, 2);
    double prev = 0;
    for (int k = 0; k < 3; ++k) {
        const int N = 24 << k;
        auto grid = BaseGrid::torus(N, 2.0 * M_PI);
        Field rho = wft::torus_field(grid, [](double x, double y) {
            return 1.6 + 0.25 * std::cos(x) + 0.2 * std::sin(y);
        });
        GraphState st(std::move(rho), 0.0);
        const double m = std::abs(minkowski_residual(grid, prof, st, 1.0));
        if (k > 0) CHECK(wft::observed_order(prev, m) > 1.9);
        prev = m;
    }
}

TEST_CASE("laplace_phi residual on the constant-warping torus") {
    auto prof = WarpingProfile::constant(1.0, 0.5, 3.0, 2);
    double prev = 0;
    for (int k = 0; k < 3; ++k) {
        const int N = 24 << k;
        auto grid = BaseGrid::torus(N, 2.0 * M_PI);
        Field rho = wft::torus_field(grid, [](double x, double y) {
            return 1.5 + 0.3 * std::cos(x) * std::sin(y);
        });
        GraphState st(std::move(rho), 0.0);
        const double l = laplace_phi_residual(grid, prof, st);
        if (k > 0) CHECK(wft::observed_order(prev, l) > 1.9);
        prev = l;
    }
}

TEST_CASE("mean-curvature evolution residual") {
    auto prof = WarpingProfile::sin_kind(0.0, M_PI, 2);

    // slice trajectory: H constant in time and space
    {
        auto grid = BaseGrid::sphere(64);
        GraphState s0(Field::Constant(64, 0.9), 0.0);
        const double dt = 1e-4;
        GraphState s1 = step(grid, prof, s0, dt);
        GraphState s2 = step(grid, prof, s1, dt);
        CHECK(h_evolution_residual(grid, prof, 1.0, s0, s1, s2) < 1e-10);
    }

    // perturbed state: joint refinement (h -> h/2, dt -> dt/4) at order >= 1.9
    double prev = 0;
    for (int k = 0; k < 2; ++k) {
        const int N = 96 << k;
        auto grid = BaseGrid::sphere(N);
        GraphState s0 = sphere_cap_state(grid, 0.8, 0.2);
        const double dt = 2e-5 / (1 << (2 * k));
        GraphState s1 = step(grid, prof, s0, dt);
        GraphState s2 = step(grid, prof, s1, dt);
        const double res = h_evolution_residual(grid, prof, 1.0, s0, s1, s2);
        if (k > 0) CHECK(wft::observed_order(prev, res) > 1.9);
        prev = res;
    }

    // torus with constant warping
    {
        auto pexp = WarpingProfile::constant(1.0, 0.5, 3.0, 2);
        double prev_t = 0;
        for (int k = 0; k < 2; ++k) {
            const int N = 24 << k;
            auto grid = BaseGrid::torus(N, 2.0 * M_PI);
            Field rho = wft::torus_field(grid, [](double x, double y) {
                return 1.5 + 0.2 * std::cos(x) + 0.15 * std::sin(y);
            });
            GraphState s0(std::move(rho), 0.0);
            const double dt = 4e-4 / (1 << (2 * k));
            GraphState s1 = step(grid, pexp, s0, dt);
            GraphState s2 = step(grid, pexp, s1, dt);
            const double res = h_evolution_residual(grid, pexp, 0.0, s0, s1, s2);
            if (k > 0) CHECK(wft::observed_order(prev_t, res) > 1.9);
            prev_t = res;
        }
    }

    // wildly non-uniform window rejected
    {
        auto grid = BaseGrid::sphere(32);
        GraphState s0(Field::Constant(32, 0.9), 0.0);
        GraphState s1 = step(grid, prof, s0, 1e-4);
        GraphState s2 = step(grid, prof, s1, 3e-4);
        CHECK_THROWS_AS((void)h_evolution_residual(grid, prof, 1.0, s0, s1, s2),
                        InsufficientDataError);
    }
}

TEST_CASE("decay fit recovers synthetic rates exactly") {
    std::vector<DiagnosticsRecord> recs;
    for (int i = 0; i < 40; ++i) {
        DiagnosticsRecord r;
        r.t = 0.05 * i;
        r.max_grad_sq = std::exp(-3.0 * r.t);
        recs.push_back(r);
    }
    auto fit = decay_fit(recs, 1.0);
    CHECK(fit.mode == DecayMode::Exponential);
    CHECK(fit.rate == doctest::Approx(3.0).epsilon(1e-10));
    CHECK(fit.quality == doctest::Approx(1.0).epsilon(1e-10));

    recs.clear();
    for (int i = 0; i < 40; ++i) {
        DiagnosticsRecord r;
        r.t = 0.05 * i;
        r.max_grad_sq = 1.0 / (2.0 * r.t + 1.0);
        recs.push_back(r);
    }
    fit = decay_fit(recs, 0.0);
    CHECK(fit.mode == DecayMode::Algebraic);
    CHECK(fit.rate == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(fit.quality == doctest::Approx(1.0).epsilon(1e-10));

    recs.resize(10);
    CHECK_THROWS_AS((void)decay_fit(recs, 1.0), InsufficientDataError);
}

TEST_CASE("the two mean-curvature routes agree to rounding") {
    std::mt19937 rng(20240812);
    auto sphere = BaseGrid::sphere(96);
    auto torus = BaseGrid::torus(40, 2.0 * M_PI);
    auto psin = WarpingProfile::sin_kind(0.0, M_PI, 2);
    auto pexp = WarpingProfile::exponential(1.0, 0.5, 0.0, 3.0, 2);
    for (int trial = 0; trial < 50; ++trial) {
        GraphState st_s(wft::random_smooth_field(sphere, rng, 1.4, 0.5), 0.0);
        CHECK(shape_consistency(sphere, psin, st_s) < 1e-11);
        GraphState st_t(wft::random_smooth_field(torus, rng, 1.5, 0.4), 0.0);
        CHECK(shape_consistency(torus, pexp, st_t) < 1e-11);
    }
    // stressed near-band-edge states
    for (int trial = 0; trial < 25; ++trial) {
        GraphState st_s(wft::random_smooth_field(sphere, rng, 1.6, 1.35), 0.0);
        CHECK(shape_consistency(sphere, psin, st_s) < 1e-9);
    }
}

TEST_CASE("collect_record assembles consistent scalars") {
    auto grid = BaseGrid::sphere(96);
    auto prof = WarpingProfile::sin_kind(0.0, M_PI, 2);
    IsoProfile iso(prof, grid.area());
    GraphState st = sphere_cap_state(grid, 0.8, 0.2);
    auto rec = collect_record(grid, prof, st, 1.0, &iso);
    CHECK(rec.V == doctest::Approx(enclosed_volume(grid, prof, st)).epsilon(1e-14));
    CHECK(rec.A == doctest::Approx(area(grid, prof, st)).epsilon(1e-14));
    CHECK(rec.osc_rho == doctest::Approx(0.4).epsilon(1e-3)); // cell-centered nodes
    CHECK(rec.iso_slack == doctest::Approx(rec.A - iso.xi(rec.V)).epsilon(1e-12));
    CHECK(rec.iso_slack > 0.0); // perturbed graph beats the slice bound
    CHECK(rec.min_u > 0.0);
    CHECK(!rec.h_evolution_residual.has_value());
}
