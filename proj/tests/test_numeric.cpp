#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "warpflow/numeric.hpp"

using namespace warpflow;

TEST_CASE("adaptive quadrature hits analytic integrals") {
    auto v = num::integrate_adaptive([](double x) { return std::sin(x); }, 0.0, M_PI);
    CHECK(std::abs(v - 2.0) < 1e-12);
    v = num::integrate_adaptive([](double x) { return std::exp(-x); }, 0.0, 20.0);
    CHECK(std::abs(v - (1.0 - std::exp(-20.0))) < 1e-12);
    v = num::integrate_adaptive([](double x) { return 1.0 / (1.0 + x * x); }, -1.0, 1.0);
    CHECK(std::abs(v - M_PI / 2.0) < 1e-12);
    // Mildly nonsmooth integrand still within relative tolerance.
    v = num::integrate_adaptive([](double x) { return std::sqrt(x); }, 0.0, 1.0, 1e-12);
    CHECK(std::abs(v - 2.0 / 3.0) < 1e-10);
}

TEST_CASE("bisection locates roots to tolerance") {
    auto r = num::bisect([](double x) { return x * x - 2.0; }, 0.0, 2.0, 1e-13);
    CHECK(std::abs(r - std::sqrt(2.0)) < 1e-12);
    r = num::bisect([](double x) { return std::cos(x); }, 0.0, 3.0, 1e-13);
    CHECK(std::abs(r - M_PI / 2.0) < 1e-12);
}

TEST_CASE("linear fit recovers exact lines and reports R^2") {
    std::vector<double> x, y;
    for (int i = 0; i < 40; ++i) {
        x.push_back(0.1 * i);
        y.push_back(-3.0 * 0.1 * i + 0.7);
    }
    auto fit = num::fit_line(x, y);
    CHECK(std::abs(fit.slope + 3.0) < 1e-12);
    CHECK(std::abs(fit.intercept - 0.7) < 1e-12);
    CHECK(fit.r2 == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("natural cubic spline reproduces smooth functions") {
    const int n = 200;
    std::vector<double> x(n), y(n);
    for (int i = 0; i < n; ++i) {
        x[i] = -1.0 + 2.0 * i / (n - 1);
        y[i] = std::sin(2.0 * x[i]);
    }
    num::CubicSpline s(x, y);
    double maxe = 0, maxe1 = 0, mid_d1 = 0;
    for (int k = 0; k < 777; ++k) {
        const double t = -0.95 + 1.9 * k / 776.0;
        double v, d1, d2, d3;
        s.eval(t, v, d1, d2, d3);
        maxe = std::max(maxe, std::abs(v - std::sin(2 * t)));
        maxe1 = std::max(maxe1, std::abs(d1 - 2 * std::cos(2 * t)));
        if (std::abs(t) < 0.5) mid_d1 = std::max(mid_d1, std::abs(d1 - 2 * std::cos(2 * t)));
    }
    CHECK(maxe < 1e-7);
    CHECK(maxe1 < 1e-4); // natural end conditions dominate near the boundary
    CHECK(mid_d1 < 5e-7);
}

TEST_CASE("monotone Hermite interpolates, differentiates and inverts") {
    const int n = 257;
    std::vector<double> x(n), y(n), m(n);
    for (int i = 0; i < n; ++i) {
        x[i] = 2.0 * i / (n - 1);
        y[i] = std::sinh(x[i]);
        m[i] = std::cosh(x[i]);
    }
    num::MonotoneHermite H(x, y, m);
    double maxe = 0;
    for (int k = 0; k <= 500; ++k) {
        const double t = 2.0 * k / 500.0;
        maxe = std::max(maxe, std::abs(H(t) - std::sinh(t)));
    }
    CHECK(maxe < 1e-9); // O(h^4) with exact slopes
    // Round-trip inversion.
    for (double t : {0.123, 0.5, 1.25, 1.999}) {
        CHECK(std::abs(H.invert(std::sinh(t)) - t) < 1e-10);
    }
    CHECK_THROWS_AS((void)H.invert(std::sinh(2.0) + 1.0), OutOfRangeError);
}
