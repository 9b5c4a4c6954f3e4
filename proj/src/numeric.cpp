#include "warpflow/numeric.hpp"

#include <algorithm>
#include <cmath>

namespace warpflow::num {

namespace {

// Gauss–Kronrod 15-point nodes/weights on [-1,1] (QUADPACK dqk15).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct GkResult {
    double value;
    double error;
};

GkResult gk15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(c);
    double kron = kWgk[7] * fc;
    double gauss = kWg[3] * fc;
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const double fsum = f(c - dx) + f(c + dx);
        kron += kWgk[j] * fsum;
        if (j % 2 == 1) gauss += kWg[j / 2] * fsum;
    }
    kron *= half;
    gauss *= half;
    return {kron, std::abs(kron - gauss)};
}

double integrate_rec(const std::function<double(double)>& f, double a, double b,
                     double tol_abs, int depth) {
    const GkResult r = gk15(f, a, b);
    if (r.error <= tol_abs || depth >= 48) return r.value;
    const double c = 0.5 * (a + b);
    return integrate_rec(f, a, c, 0.5 * tol_abs, depth + 1) +
           integrate_rec(f, c, b, 0.5 * tol_abs, depth + 1);
}

} // namespace

double integrate_adaptive(const std::function<double(double)>& f,
                          double a, double b, double rel_tol) {
    if (a == b) return 0.0;
    const GkResult whole = gk15(f, a, b);
    const double scale = std::max(std::abs(whole.value), 1e-300);
    return integrate_rec(f, a, b, rel_tol * scale, 0);
}

double bisect(const std::function<double(double)>& f,
              double lo, double hi, double tol_x) {
    double flo = f(lo);
    if (flo == 0.0) return lo;
    if (f(hi) == 0.0) return hi;
    while (hi - lo > tol_x) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break; // spacing limit
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((flo < 0.0) == (fm < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    if (n < 2 || y.size() != n)
        throw InsufficientDataError("fit_line: need at least two samples");
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / double(n), my = sy / double(n);
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x[i] - mx, dy = y[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    LinearFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    if (syy <= 0.0) {
        fit.r2 = 1.0; // constant data, any line through the mean is exact
    } else {
        double ss_res = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const double e = y[i] - (fit.intercept + fit.slope * x[i]);
            ss_res += e * e;
        }
        fit.r2 = 1.0 - ss_res / syy;
    }
    return fit;
}

// ---- natural cubic spline ----

CubicSpline::CubicSpline(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
    const std::size_t n = x_.size();
    if (n < 3 || y_.size() != n)
        throw std::invalid_argument("CubicSpline: need >= 3 points");
    for (std::size_t i = 1; i < n; ++i)
        if (!(x_[i] > x_[i - 1]))
            throw std::invalid_argument("CubicSpline: abscissae must increase");

    // Thomas solve for second derivatives, natural end conditions.
    m_.assign(n, 0.0);
    std::vector<double> diag(n, 2.0), rhs(n, 0.0), sub(n, 0.0), sup(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double hl = x_[i] - x_[i - 1];
        const double hr = x_[i + 1] - x_[i];
        sub[i] = hl / (hl + hr);
        sup[i] = hr / (hl + hr);
        rhs[i] = 6.0 / (hl + hr) *
                 ((y_[i + 1] - y_[i]) / hr - (y_[i] - y_[i - 1]) / hl);
    }
    for (std::size_t i = 2; i + 1 < n; ++i) {
        const double w = sub[i] / diag[i - 1];
        diag[i] -= w * sup[i - 1];
        rhs[i] -= w * rhs[i - 1];
    }
    m_[n - 2] = rhs[n - 2] / diag[n - 2];
    for (std::size_t i = n - 2; i-- >= 2;)
        m_[i] = (rhs[i] - sup[i] * m_[i + 1]) / diag[i];
}

std::size_t CubicSpline::interval(double x) const {
    auto it = std::upper_bound(x_.begin(), x_.end(), x);
    std::size_t i = std::size_t(std::distance(x_.begin(), it));
    if (i == 0) return 0;
    if (i >= x_.size()) return x_.size() - 2;
    return i - 1;
}

void CubicSpline::eval(double x, double& v, double& d1, double& d2, double& d3) const {
    const std::size_t i = interval(x);
    const double h = x_[i + 1] - x_[i];
    const double a = (x_[i + 1] - x) / h;
    const double b = (x - x_[i]) / h;
    v = a * y_[i] + b * y_[i + 1] +
        ((a * a * a - a) * m_[i] + (b * b * b - b) * m_[i + 1]) * h * h / 6.0;
    d1 = (y_[i + 1] - y_[i]) / h -
         (3.0 * a * a - 1.0) / 6.0 * h * m_[i] + (3.0 * b * b - 1.0) / 6.0 * h * m_[i + 1];
    d2 = a * m_[i] + b * m_[i + 1];
    d3 = (m_[i + 1] - m_[i]) / h;
}

double CubicSpline::operator()(double x) const {
    double v, d1, d2, d3;
    eval(x, v, d1, d2, d3);
    return v;
}

// ---- monotone cubic Hermite ----

MonotoneHermite::MonotoneHermite(std::vector<double> x, std::vector<double> y,
                                 std::vector<double> slope, bool limit_slopes)
    : x_(std::move(x)), y_(std::move(y)), m_(std::move(slope)) {
    const std::size_t n = x_.size();
    if (n < 2 || y_.size() != n || m_.size() != n)
        throw std::invalid_argument("MonotoneHermite: inconsistent sizes");
    for (std::size_t i = 1; i < n; ++i)
        if (!(x_[i] > x_[i - 1]))
            throw std::invalid_argument("MonotoneHermite: abscissae must increase");
    if (!limit_slopes) return;

    // Fritsch–Carlson limiter; inactive for smooth consistent slopes.
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double d = (y_[i + 1] - y_[i]) / (x_[i + 1] - x_[i]);
        if (d == 0.0) {
            m_[i] = 0.0;
            m_[i + 1] = 0.0;
            continue;
        }
        const double a = m_[i] / d, b = m_[i + 1] / d;
        const double s = a * a + b * b;
        if (s > 9.0) {
            const double t = 3.0 / std::sqrt(s);
            m_[i] = t * a * d;
            m_[i + 1] = t * b * d;
        }
    }
}

std::size_t MonotoneHermite::interval(double x) const {
    auto it = std::upper_bound(x_.begin(), x_.end(), x);
    std::size_t i = std::size_t(std::distance(x_.begin(), it));
    if (i == 0) return 0;
    if (i >= x_.size()) return x_.size() - 2;
    return i - 1;
}

double MonotoneHermite::operator()(double x) const {
    const std::size_t i = interval(x);
    const double h = x_[i + 1] - x_[i];
    const double t = (x - x_[i]) / h;
    const double t2 = t * t, t3 = t2 * t;
    return y_[i] * (2 * t3 - 3 * t2 + 1) + y_[i + 1] * (-2 * t3 + 3 * t2) +
           h * (m_[i] * (t3 - 2 * t2 + t) + m_[i + 1] * (t3 - t2));
}

double MonotoneHermite::derivative(double x) const {
    const std::size_t i = interval(x);
    const double h = x_[i + 1] - x_[i];
    const double t = (x - x_[i]) / h;
    const double t2 = t * t;
    return (y_[i] * (6 * t2 - 6 * t) + y_[i + 1] * (-6 * t2 + 6 * t)) / h +
           m_[i] * (3 * t2 - 4 * t + 1) + m_[i + 1] * (3 * t2 - 2 * t);
}

double MonotoneHermite::invert(double y, double tol_x) const {
    if (y <= y_.front()) {
        if (y < y_.front() - 1e-12 * (1.0 + std::abs(y_.front())))
            throw OutOfRangeError("MonotoneHermite::invert: value below range");
        return x_.front();
    }
    if (y >= y_.back()) {
        if (y > y_.back() + 1e-12 * (1.0 + std::abs(y_.back())))
            throw OutOfRangeError("MonotoneHermite::invert: value above range");
        return x_.back();
    }
    auto it = std::upper_bound(y_.begin(), y_.end(), y);
    std::size_t i = std::size_t(std::distance(y_.begin(), it)) - 1;
    return bisect([&](double x) { return (*this)(x)-y; }, x_[i], x_[i + 1], tol_x);
}

} // namespace warpflow::num
