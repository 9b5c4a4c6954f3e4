#ifndef WARPFLOW_TESTS_SUPPORT_HPP
#define WARPFLOW_TESTS_SUPPORT_HPP

#include <cmath>
#include <functional>
#include <random>

#include "warpflow/base_grid.hpp"

namespace wft {

inline warpflow::Field torus_field(const warpflow::BaseGrid& g,
                                   const std::function<double(double, double)>& f) {
    const int N = g.resolution();
    warpflow::Field out(g.node_count());
    for (int j = 0; j < N; ++j)
        for (int i = 0; i < N; ++i)
            out[i + Eigen::Index(N) * j] = f(i * g.spacing(), j * g.spacing());
    return out;
}

inline double observed_order(double coarse_err, double fine_err) {
    return std::log2(coarse_err / fine_err);
}

/// Smooth random in-band field: mean plus a few low Fourier/axisymmetric
/// modes with bounded total amplitude.
inline warpflow::Field random_smooth_field(const warpflow::BaseGrid& g, std::mt19937& rng,
                                           double mean, double amplitude) {
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    if (g.kind() == warpflow::GridKind::AxisymSphere) {
        // axisymmetric, pole-regular: combination of cos(k theta)
        const double a1 = unit(rng), a2 = unit(rng), a3 = unit(rng);
        const double norm = std::abs(a1) + std::abs(a2) + std::abs(a3) + 1e-12;
        warpflow::Field f(g.node_count());
        for (Eigen::Index i = 0; i < f.size(); ++i) {
            const double t = g.theta()[i];
            f[i] = mean + amplitude / norm *
                              (a1 * std::cos(t) + a2 * std::cos(2 * t) + a3 * std::cos(3 * t));
        }
        return f;
    }
    const double L = g.period();
    const double k1 = 2.0 * M_PI / L;
    double a[6];
    std::generate(a, a + 6, [&] { return unit(rng); });
    double norm = 0;
    for (double v : a) norm += std::abs(v);
    norm += 1e-12;
    return torus_field(g, [&](double x, double y) {
        return mean + amplitude / norm *
                          (a[0] * std::cos(k1 * x) + a[1] * std::sin(k1 * y) +
                           a[2] * std::cos(k1 * (x + y)) + a[3] * std::sin(2 * k1 * x) +
                           a[4] * std::cos(2 * k1 * y) + a[5] * std::sin(k1 * (x - y)));
    });
}

} // namespace wft

#endif
