#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "warpflow/base_grid.hpp"

using namespace warpflow;

namespace {

Field torus_field(const BaseGrid& g, const std::function<double(double, double)>& f) {
    const int N = g.resolution();
    Field out(g.node_count());
    for (int j = 0; j < N; ++j)
        for (int i = 0; i < N; ++i)
            out[i + Eigen::Index(N) * j] = f(i * g.spacing(), j * g.spacing());
    return out;
}

double observed_order(double coarse_err, double fine_err) {
    return std::log2(coarse_err / fine_err);
}

} // namespace

TEST_CASE("quadrature weights integrate exactly what they should") {
    auto s = BaseGrid::sphere(128);
    CHECK(std::abs(s.area() - 4.0 * M_PI) < 1e-12 * 4.0 * M_PI);
    CHECK(std::abs(integrate(s, Field::Ones(128)) - 4.0 * M_PI) < 1e-12 * 4.0 * M_PI);
    // odd symmetry about the equator
    CHECK(std::abs(integrate(s, s.theta().cos())) < 1e-12);

    auto t = BaseGrid::torus(64, 2.0 * M_PI);
    CHECK(std::abs(t.area() - 4.0 * M_PI * M_PI) < 1e-12 * t.area());
    CHECK(std::abs(integrate(t, Field::Ones(t.node_count())) - 4.0 * M_PI * M_PI) <
          1e-12 * t.area());
}

TEST_CASE("constant fields annihilate every derivative bitwise") {
    for (auto g : {BaseGrid::sphere(64), BaseGrid::torus(16, 3.0)}) {
        Field c = Field::Constant(g.node_count(), 2.75);
        CHECK(gradient_sq(g, c).abs().maxCoeff() == 0.0);
        auto h = covariant_hessian(g, c);
        CHECK(h.h11.abs().maxCoeff() == 0.0);
        CHECK(h.h22.abs().maxCoeff() == 0.0);
        CHECK(h.h12.abs().maxCoeff() == 0.0);
        CHECK(laplace(g, c).abs().maxCoeff() == 0.0);
    }
}

TEST_CASE("sphere operators against the first spherical harmonic") {
    // f = cos t: grad^2 = sin^2 t, Hessian = -cos t * metric, laplace = -2 cos t.
    double prev_g = 0, prev_h = 0, prev_l = 0;
    for (int k = 0; k < 3; ++k) {
        const int N = 64 << k;
        auto g = BaseGrid::sphere(N);
        Field f = g.theta().cos();

        const double eg = (gradient_sq(g, f) - g.sin_theta().square()).abs().maxCoeff();
        auto hess = covariant_hessian(g, f);
        const double eh = std::max(
            (hess.h11 + f).abs().maxCoeff(),
            (hess.h22 + g.sin_theta().square() * f).abs().maxCoeff());
        const double el = (laplace(g, f) + 2.0 * f).abs().maxCoeff();
        if (k > 0) {
            CHECK(observed_order(prev_g, eg) > 1.9);
            CHECK(observed_order(prev_h, eh) > 1.9);
            CHECK(observed_order(prev_l, el) > 1.9);
        }
        prev_g = eg;
        prev_h = eh;
        prev_l = el;
    }
}

TEST_CASE("torus operators against Fourier modes") {
    const double L = 2.0 * M_PI;
    const double k1 = 2.0 * M_PI / L;
    double prev_g = 0, prev_l = 0, prev_m = 0;
    for (int k = 0; k < 3; ++k) {
        const int N = 32 << k;
        auto g = BaseGrid::torus(N, L);
        Field f = torus_field(g, [&](double x, double y) {
            return std::sin(k1 * x) + 0.5 * std::cos(2.0 * k1 * y);
        });
        Field gs_exact = torus_field(g, [&](double x, double y) {
            const double fx = k1 * std::cos(k1 * x);
            const double fy = -k1 * std::sin(2.0 * k1 * y);
            return fx * fx + fy * fy;
        });
        Field lap_exact = torus_field(g, [&](double x, double y) {
            return -k1 * k1 * std::sin(k1 * x) - 2.0 * k1 * k1 * std::cos(2.0 * k1 * y);
        });
        const double eg = (gradient_sq(g, f) - gs_exact).abs().maxCoeff();
        const double el = (laplace(g, f) - lap_exact).abs().maxCoeff();

        Field fxy = torus_field(g, [&](double x, double y) {
            return std::sin(k1 * x) * std::sin(k1 * y);
        });
        Field mixed_exact = torus_field(g, [&](double x, double y) {
            return k1 * k1 * std::cos(k1 * x) * std::cos(k1 * y);
        });
        const double em = (covariant_hessian(g, fxy).h12 - mixed_exact).abs().maxCoeff();
        if (k > 0) {
            CHECK(observed_order(prev_g, eg) > 1.9);
            CHECK(observed_order(prev_l, el) > 1.9);
            CHECK(observed_order(prev_m, em) > 1.9);
        }
        prev_g = eg;
        prev_l = el;
        prev_m = em;
    }
}

TEST_CASE("mixed partials on a torus patch") {
    // f = x y is not periodic, so check only nodes away from the wrap seam.
    auto g = BaseGrid::torus(24, 3.0);
    Field f = torus_field(g, [](double x, double y) { return x * y; });
    auto h = covariant_hessian(g, f);
    const int N = 24;
    for (int j = 3; j < N - 3; ++j)
        for (int i = 3; i < N - 3; ++i) {
            const Eigen::Index idx = i + Eigen::Index(N) * j;
            CHECK(h.h12[idx] == doctest::Approx(1.0).epsilon(1e-12));
            CHECK(std::abs(h.h11[idx]) < 1e-12);
            CHECK(std::abs(h.h22[idx]) < 1e-12);
        }
}

TEST_CASE("discrete divergence compatibility on closed bases") {
    for (int N : {128, 256, 512}) {
        auto g = BaseGrid::sphere(N);
        Field f = (2.0 * g.theta()).cos() + 0.3 * (g.theta().cos()).exp();
        const double total = integrate(g, laplace(g, f));
        CHECK(std::abs(total) < 1e-10 * f.abs().maxCoeff());
    }
    auto t = BaseGrid::torus(96, 5.0);
    Field f = torus_field(t, [&](double x, double y) {
        return std::exp(std::sin(2.0 * M_PI * x / 5.0)) + std::cos(2.0 * M_PI * y / 5.0);
    });
    CHECK(std::abs(integrate(t, laplace(t, f))) < 1e-10 * f.abs().maxCoeff());
}

TEST_CASE("pole regularity of the sphere Laplacian") {
    // Smooth axisymmetric f has bounded laplace near the poles; the first
    // node value approaches the 2 f_tt pole limit under refinement.
    double prev_gap = 0;
    for (int k = 0; k < 3; ++k) {
        const int N = 128 << k;
        auto g = BaseGrid::sphere(N);
        Field f = g.theta().cos() * g.theta().cos(); // f_tt(0) = -2... f = cos^2
        Field lap = laplace(g, f);
        CHECK(std::isfinite(lap[0]));
        CHECK(std::isfinite(lap[N - 1]));
        // exact laplace of cos^2 t is 2 - 6 cos^2 t -> pole value -4
        const double gap = std::abs(lap[0] - (2.0 - 6.0 * f[0]));
        if (k > 0) CHECK(gap < prev_gap + 1e-12);
        prev_gap = gap;
        CHECK(std::abs(lap[0] + 4.0) < 0.01);
    }
}

TEST_CASE("lambda1 lookup") {
    CHECK(BaseGrid::sphere(32).lambda1() == 2.0);
    CHECK(BaseGrid::torus(16, 2.0 * M_PI).lambda1() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(BaseGrid::torus(16, M_PI).lambda1() == doctest::Approx(4.0).epsilon(1e-14));
}
