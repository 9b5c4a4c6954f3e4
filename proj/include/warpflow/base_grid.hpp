#ifndef WARPFLOW_BASE_GRID_HPP
#define WARPFLOW_BASE_GRID_HPP

#include "warpflow/common.hpp"

namespace warpflow {

enum class GridKind { AxisymSphere, Torus2 };

/// First derivatives of a field; d1 is the theta (sphere) or x (torus)
/// derivative, d2 the y derivative (zero array for the sphere where fields
/// are axisymmetric).
struct GradientField {
    Field d1;
    Field d2;
};

/// Covariant Hessian components. Sphere (axisymmetric f): h11 = f_tt,
/// h22 = sin(t)cos(t) f_t (the phi-phi component), h12 = 0. Torus: plain
/// second partials.
struct HessianField {
    Field h11;
    Field h22;
    Field h12;
};

/// Discretized closed base manifold: either the unit sphere reduced to the
/// polar angle (cell-centered nodes, even reflection at the poles) or a flat
/// periodic square torus. Both are Einstein, so Ric = (n-1)*K_base*metric.
class BaseGrid {
public:
    static BaseGrid sphere(int resolution);
    static BaseGrid torus(int resolution, double period);

    GridKind kind() const { return kind_; }
    int resolution() const { return N_; }
    int n() const { return 2; }
    double k_base() const { return kind_ == GridKind::AxisymSphere ? 1.0 : 0.0; }
    double period() const { return L_; }
    double spacing() const { return h_; }
    Eigen::Index node_count() const { return weights_.size(); }

    const Field& weights() const { return weights_; }
    double area() const { return area_; }

    /// Built-in first nonzero Laplace eigenvalue: 2 for the unit sphere,
    /// (2 pi / L)^2 for the torus.
    double lambda1() const;

    // sphere node data
    const Field& theta() const { return theta_; }
    const Field& sin_theta() const { return sin_theta_; }
    const Field& cot_theta() const { return cot_theta_; }

    /// Node coordinates for serialization: theta, or (x, y).
    Field coord1() const;
    Field coord2() const;

    /// Inverse metric factor for the second coordinate: 1/sin^2(theta) on the
    /// sphere, ones on the torus (first factor is identically one).
    const Field& inv_metric22() const { return inv_metric22_; }

    // low-level stencils (even reflection at the poles / periodic wrap)
    void d1_into(const Field& f, Field& out) const;  // d/dtheta or d/dx
    void d1y_into(const Field& f, Field& out) const; // d/dy (torus)
    void d2_into(const Field& f, Field& out) const;  // second theta/x derivative
    void d2y_into(const Field& f, Field& out) const; // second y derivative (torus)
    void dxy_into(const Field& f, Field& tmp, Field& out) const; // mixed (torus)

private:
    BaseGrid() = default;

    GridKind kind_ = GridKind::AxisymSphere;
    int N_ = 0;
    double L_ = 0.0; // torus period
    double h_ = 0.0;
    double area_ = 0.0;
    Field weights_;
    Field theta_, sin_theta_, cot_theta_; // sphere precomputes
    Field inv_metric22_;
};

/// |grad f|^2 with indices raised by the base metric.
Field gradient_sq(const BaseGrid& grid, const Field& f);

GradientField gradient(const BaseGrid& grid, const Field& f);

HessianField covariant_hessian(const BaseGrid& grid, const Field& f);

/// Laplace–Beltrami of f on the base. The sphere stencil is the conservative
/// flux form of f_tt + cot(t) f_t; its boundary fluxes vanish at the poles,
/// which reproduces the 2 f_tt pole limit and makes the discrete integral of
/// laplace(f) vanish to rounding.
Field laplace(const BaseGrid& grid, const Field& f);

/// Quadrature: sum of f against the node weights.
double integrate(const BaseGrid& grid, const Field& f);

} // namespace warpflow

#endif
