#include "warpflow/base_grid.hpp"

#include <cmath>

namespace warpflow {

namespace {
using CMapXX = Eigen::Map<const Eigen::ArrayXXd>;
using MapXX = Eigen::Map<Eigen::ArrayXXd>;
} // namespace

BaseGrid BaseGrid::sphere(int resolution) {
    if (resolution < 4) throw std::invalid_argument("sphere grid needs resolution >= 4");
    BaseGrid g;
    g.kind_ = GridKind::AxisymSphere;
    g.N_ = resolution;
    g.h_ = M_PI / resolution;
    g.theta_.resize(resolution);
    for (int i = 0; i < resolution; ++i) g.theta_[i] = (i + 0.5) * g.h_;
    g.sin_theta_ = g.theta_.sin();
    g.cot_theta_ = g.theta_.cos() / g.sin_theta_;
    // Cell-exact weights: w_i = 2 pi (cos t_{i-1/2} - cos t_{i+1/2})
    //                        = 4 pi sin(h/2) sin t_i, so constants integrate
    // to exactly 4 pi (up to rounding of the sine sum).
    g.weights_ = 4.0 * M_PI * std::sin(0.5 * g.h_) * g.sin_theta_;
    g.area_ = g.weights_.sum();
    g.inv_metric22_ = (g.sin_theta_ * g.sin_theta_).inverse();
    return g;
}

BaseGrid BaseGrid::torus(int resolution, double period) {
    if (resolution < 4) throw std::invalid_argument("torus grid needs resolution >= 4");
    if (!(period > 0.0)) throw std::invalid_argument("torus period must be positive");
    BaseGrid g;
    g.kind_ = GridKind::Torus2;
    g.N_ = resolution;
    g.L_ = period;
    g.h_ = period / resolution;
    g.weights_ = Field::Constant(Eigen::Index(resolution) * resolution, g.h_ * g.h_);
    g.area_ = g.weights_.sum();
    g.inv_metric22_ = Field::Ones(g.weights_.size());
    return g;
}

double BaseGrid::lambda1() const {
    if (kind_ == GridKind::AxisymSphere) return 2.0;
    const double k = 2.0 * M_PI / L_;
    return k * k;
}

Field BaseGrid::coord1() const {
    if (kind_ == GridKind::AxisymSphere) return theta_;
    Field out(node_count());
    for (int j = 0; j < N_; ++j)
        for (int i = 0; i < N_; ++i) out[i + Eigen::Index(N_) * j] = i * h_;
    return out;
}

Field BaseGrid::coord2() const {
    if (kind_ == GridKind::AxisymSphere) return Field::Zero(node_count());
    Field out(node_count());
    for (int j = 0; j < N_; ++j)
        for (int i = 0; i < N_; ++i) out[i + Eigen::Index(N_) * j] = j * h_;
    return out;
}

// ---- stencils ----

void BaseGrid::d1_into(const Field& f, Field& out) const {
    const int N = N_;
    out.resize(f.size());
    if (kind_ == GridKind::AxisymSphere) {
        const double c = 1.0 / (2.0 * h_);
        out.segment(1, N - 2) = (f.segment(2, N - 2) - f.segment(0, N - 2)) * c;
        out[0] = (f[1] - f[0]) * c;         // ghost f_{-1} = f_0
        out[N - 1] = (f[N - 1] - f[N - 2]) * c; // ghost f_N = f_{N-1}
        return;
    }
    CMapXX F(f.data(), N, N);
    MapXX O(out.data(), N, N);
    const double c = 1.0 / (2.0 * h_);
    O.middleRows(1, N - 2) = (F.middleRows(2, N - 2) - F.middleRows(0, N - 2)) * c;
    O.row(0) = (F.row(1) - F.row(N - 1)) * c;
    O.row(N - 1) = (F.row(0) - F.row(N - 2)) * c;
}

void BaseGrid::d1y_into(const Field& f, Field& out) const {
    if (kind_ != GridKind::Torus2) {
        out = Field::Zero(f.size());
        return;
    }
    const int N = N_;
    out.resize(f.size());
    CMapXX F(f.data(), N, N);
    MapXX O(out.data(), N, N);
    const double c = 1.0 / (2.0 * h_);
    O.middleCols(1, N - 2) = (F.middleCols(2, N - 2) - F.middleCols(0, N - 2)) * c;
    O.col(0) = (F.col(1) - F.col(N - 1)) * c;
    O.col(N - 1) = (F.col(0) - F.col(N - 2)) * c;
}

void BaseGrid::d2_into(const Field& f, Field& out) const {
    const int N = N_;
    out.resize(f.size());
    const double c = 1.0 / (h_ * h_);
    if (kind_ == GridKind::AxisymSphere) {
        out.segment(1, N - 2) =
            (f.segment(2, N - 2) - 2.0 * f.segment(1, N - 2) + f.segment(0, N - 2)) * c;
        out[0] = (f[1] - f[0]) * c;
        out[N - 1] = (f[N - 2] - f[N - 1]) * c;
        return;
    }
    CMapXX F(f.data(), N, N);
    MapXX O(out.data(), N, N);
    O.middleRows(1, N - 2) =
        (F.middleRows(2, N - 2) - 2.0 * F.middleRows(1, N - 2) + F.middleRows(0, N - 2)) * c;
    O.row(0) = (F.row(1) - 2.0 * F.row(0) + F.row(N - 1)) * c;
    O.row(N - 1) = (F.row(0) - 2.0 * F.row(N - 1) + F.row(N - 2)) * c;
}

void BaseGrid::d2y_into(const Field& f, Field& out) const {
    if (kind_ != GridKind::Torus2) {
        out = Field::Zero(f.size());
        return;
    }
    const int N = N_;
    out.resize(f.size());
    const double c = 1.0 / (h_ * h_);
    CMapXX F(f.data(), N, N);
    MapXX O(out.data(), N, N);
    O.middleCols(1, N - 2) =
        (F.middleCols(2, N - 2) - 2.0 * F.middleCols(1, N - 2) + F.middleCols(0, N - 2)) * c;
    O.col(0) = (F.col(1) - 2.0 * F.col(0) + F.col(N - 1)) * c;
    O.col(N - 1) = (F.col(0) - 2.0 * F.col(N - 1) + F.col(N - 2)) * c;
}

void BaseGrid::dxy_into(const Field& f, Field& tmp, Field& out) const {
    d1_into(f, tmp);
    d1y_into(tmp, out);
}

// ---- field operations ----

Field gradient_sq(const BaseGrid& grid, const Field& f) {
    Field dx;
    grid.d1_into(f, dx);
    if (grid.kind() == GridKind::AxisymSphere) return dx.square();
    Field dy;
    grid.d1y_into(f, dy);
    return dx.square() + dy.square();
}

GradientField gradient(const BaseGrid& grid, const Field& f) {
    GradientField g;
    grid.d1_into(f, g.d1);
    grid.d1y_into(f, g.d2);
    return g;
}

HessianField covariant_hessian(const BaseGrid& grid, const Field& f) {
    HessianField h;
    grid.d2_into(f, h.h11);
    if (grid.kind() == GridKind::AxisymSphere) {
        Field dt;
        grid.d1_into(f, dt);
        h.h22 = grid.sin_theta() * grid.theta().cos() * dt;
        h.h12 = Field::Zero(f.size());
        return h;
    }
    grid.d2y_into(f, h.h22);
    Field tmp;
    grid.dxy_into(f, tmp, h.h12);
    return h;
}

Field laplace(const BaseGrid& grid, const Field& f) {
    if (grid.kind() == GridKind::Torus2) {
        Field xx, yy;
        grid.d2_into(f, xx);
        grid.d2y_into(f, yy);
        return xx + yy;
    }
    const int N = grid.resolution();
    const double h = grid.spacing();
    Field out(N);
    const Field& s = grid.sin_theta();
    // flux through cell faces; zero at both poles
    double flux_prev = 0.0;
    for (int i = 0; i < N; ++i) {
        const double flux_next =
            (i + 1 < N) ? std::sin((i + 1) * h) * (f[i + 1] - f[i]) : 0.0;
        out[i] = (flux_next - flux_prev) / (h * h * s[i]);
        flux_prev = flux_next;
    }
    return out;
}

double integrate(const BaseGrid& grid, const Field& f) {
    return (f * grid.weights()).sum();
}

} // namespace warpflow
