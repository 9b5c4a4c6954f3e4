#ifndef WARPFLOW_NUMERIC_HPP
#define WARPFLOW_NUMERIC_HPP

#include <functional>
#include <vector>

#include "warpflow/common.hpp"

namespace warpflow::num {

/// Adaptive Gauss–Kronrod (G7,K15) quadrature of f over [a, b]
/// to the given relative tolerance.
double integrate_adaptive(const std::function<double(double)>& f,
                          double a, double b, double rel_tol = 1e-12);

/// Bisection for a root of f in [lo, hi]; requires f(lo), f(hi) of
/// opposite (or zero) sign. Returns the midpoint once |hi-lo| <= tol_x.
double bisect(const std::function<double(double)>& f,
              double lo, double hi, double tol_x = 1e-12);

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0; // coefficient of determination
};

LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

/// Natural cubic spline through strictly increasing abscissae.
class CubicSpline {
public:
    CubicSpline() = default;
    CubicSpline(std::vector<double> x, std::vector<double> y);

    double operator()(double x) const;
    /// Value and first three derivatives (third is piecewise constant).
    void eval(double x, double& v, double& d1, double& d2, double& d3) const;

    double x_front() const { return x_.front(); }
    double x_back() const { return x_.back(); }

private:
    std::size_t interval(double x) const;
    std::vector<double> x_, y_, m_; // m_ = second derivatives at nodes
};

/// Cubic Hermite interpolant on increasing nodes with caller-supplied
/// slopes. With limit_slopes the Fritsch–Carlson clamp keeps monotone data
/// monotone (inactive for smooth consistent slopes); leave it off for data
/// with interior extrema.
class MonotoneHermite {
public:
    MonotoneHermite() = default;
    MonotoneHermite(std::vector<double> x, std::vector<double> y,
                    std::vector<double> slope, bool limit_slopes = true);

    double operator()(double x) const;
    double derivative(double x) const;

    /// Inverse of a strictly increasing interpolant by bisection to tol_x.
    double invert(double y, double tol_x = 1e-12) const;

    const std::vector<double>& nodes() const { return x_; }
    const std::vector<double>& values() const { return y_; }

private:
    std::size_t interval(double x) const;
    std::vector<double> x_, y_, m_;
};

} // namespace warpflow::num

#endif
