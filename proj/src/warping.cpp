#include "warpflow/warping.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace warpflow {

namespace {

constexpr int kScanSamples = 4096;

void sincos_pair(double x, double& s, double& c) {
#if defined(__GNUC__)
    ::sincos(x, &s, &c);
#else
    s = std::sin(x);
    c = std::cos(x);
#endif
}

double pow_int(double x, int n) {
    double acc = 1.0;
    for (int i = 0; i < n; ++i) acc *= x;
    return acc;
}

} // namespace

// ---- factories ----

WarpingProfile WarpingProfile::sin_kind(double r0, double r_bar, int n) {
    WarpingProfile p;
    p.kind_ = ProfileKind::Sin;
    p.r0_ = r0;
    p.r_bar_ = r_bar;
    p.n_ = n;
    p.validate();
    return p;
}

WarpingProfile WarpingProfile::sinh_kind(double r0, double r_bar, int n) {
    WarpingProfile p;
    p.kind_ = ProfileKind::Sinh;
    p.r0_ = r0;
    p.r_bar_ = r_bar;
    p.n_ = n;
    p.validate();
    return p;
}

WarpingProfile WarpingProfile::linear(double r0, double r_bar, int n) {
    WarpingProfile p;
    p.kind_ = ProfileKind::Linear;
    p.r0_ = r0;
    p.r_bar_ = r_bar;
    p.n_ = n;
    p.validate();
    return p;
}

WarpingProfile WarpingProfile::exponential(double a, double b, double r0, double r_bar, int n) {
    WarpingProfile p;
    p.kind_ = ProfileKind::Exponential;
    p.a_ = a;
    p.b_ = b;
    p.r0_ = r0;
    p.r_bar_ = r_bar;
    p.n_ = n;
    p.validate();
    return p;
}

WarpingProfile WarpingProfile::constant(double a, double r0, double r_bar, int n) {
    WarpingProfile p;
    p.kind_ = ProfileKind::Constant;
    p.a_ = a;
    p.r0_ = r0;
    p.r_bar_ = r_bar;
    p.n_ = n;
    p.validate();
    return p;
}

WarpingProfile WarpingProfile::schwarzschild(double m, double r0, double r_bar, int n) {
    WarpingProfile p;
    p.kind_ = ProfileKind::Schwarzschild;
    p.m_ = m;
    p.r0_ = r0;
    p.r_bar_ = r_bar;
    p.n_ = n;
    if (m <= 0.0) throw ProfileError("schwarzschild: mass must be positive");
    if (r0 <= 0.0)
        throw ProfileError("schwarzschild: r0 must be positive (r = 0 is the horizon, phi(r0) > m requires r0 > 0)");
    p.validate();
    return p;
}

WarpingProfile WarpingProfile::tabulated(std::vector<double> r, std::vector<double> phi,
                                         double r0, double r_bar, int n) {
    WarpingProfile p;
    p.kind_ = ProfileKind::Tabulated;
    p.r0_ = r0;
    p.r_bar_ = r_bar;
    p.n_ = n;
    if (r.size() < 4) throw ProfileError("tabulated: need at least 4 samples");
    if (r0 < r.front() - 1e-12 || r_bar > r.back() + 1e-12)
        throw ProfileError("tabulated: band exceeds the table range");
    p.table_ = num::CubicSpline(std::move(r), std::move(phi));
    p.validate();
    return p;
}

void WarpingProfile::validate() {
    if (!(r0_ < r_bar_)) throw ProfileError("profile band requires r0 < r_bar");
    if (n_ < 1) throw ProfileError("profile requires n >= 1");
    // phi must be positive on the open band; a vanishing endpoint value is
    // allowed (degenerate pole slice, e.g. sin on [0, pi]).
    const int samples = 512;
    for (int i = 0; i <= samples; ++i) {
        const double r = r0_ + (r_bar_ - r0_) * i / samples;
        const double v = eval(r).phi;
        if (!std::isfinite(v)) throw ProfileError("profile: phi not finite on the band");
        if (v < 0.0 || (v == 0.0 && i != 0 && i != samples))
            throw ProfileError("profile: phi must be positive inside the band");
    }
}

// ---- parsing ----

namespace {

std::vector<double> parse_args(const std::string& inside, const std::string& what,
                               std::size_t expected) {
    std::vector<double> out;
    std::stringstream ss(inside);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            while (used < item.size() && std::isspace((unsigned char)item[used])) ++used;
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw ProfileError(what + ": bad numeric argument '" + item + "'");
        }
    }
    if (out.size() != expected)
        throw ProfileError(what + ": expected " + std::to_string(expected) + " argument(s)");
    return out;
}

void load_table(const std::string& path, std::vector<double>& r, std::vector<double>& phi) {
    std::ifstream in(path);
    if (!in) throw ProfileError("table: cannot open '" + path + "'");
    double a, b;
    while (in >> a >> b) {
        if (!r.empty() && !(a > r.back()))
            throw ProfileError("table: abscissae must be strictly increasing");
        r.push_back(a);
        phi.push_back(b);
    }
    if (r.size() < 4) throw ProfileError("table: need at least 4 rows");
}

} // namespace

WarpingProfile WarpingProfile::parse(const std::string& spec,
                                     std::optional<double> r0,
                                     std::optional<double> r_bar,
                                     int n) {
    auto band = [&](double lo, double hi) {
        return std::pair<double, double>{r0.value_or(lo), r_bar.value_or(hi)};
    };
    if (spec == "sin") {
        auto [lo, hi] = band(0.0, M_PI);
        return sin_kind(lo, hi, n);
    }
    if (spec == "sinh") {
        auto [lo, hi] = band(0.0, 3.0);
        return sinh_kind(lo, hi, n);
    }
    if (spec == "linear") {
        auto [lo, hi] = band(0.0, 3.0);
        return linear(lo, hi, n);
    }
    if (spec.rfind("exp(", 0) == 0 && spec.back() == ')') {
        auto args = parse_args(spec.substr(4, spec.size() - 5), "exp", 2);
        auto [lo, hi] = band(0.0, 3.0);
        return exponential(args[0], args[1], lo, hi, n);
    }
    if (spec.rfind("const(", 0) == 0 && spec.back() == ')') {
        auto args = parse_args(spec.substr(6, spec.size() - 7), "const", 1);
        auto [lo, hi] = band(0.0, 3.0);
        return constant(args[0], lo, hi, n);
    }
    if (spec.rfind("schwarzschild(", 0) == 0 && spec.back() == ')') {
        auto args = parse_args(spec.substr(14, spec.size() - 15), "schwarzschild", 1);
        auto [lo, hi] = band(0.02 * args[0], 4.0 * args[0]);
        return schwarzschild(args[0], lo, hi, n);
    }
    if (spec.rfind("table:", 0) == 0) {
        std::vector<double> r, phi;
        load_table(spec.substr(6), r, phi);
        const double lo = r0.value_or(r.front());
        const double hi = r_bar.value_or(r.back());
        return tabulated(std::move(r), std::move(phi), lo, hi, n);
    }
    throw ProfileError("unknown profile spec '" + spec + "'");
}

std::string WarpingProfile::describe() const {
    std::ostringstream os;
    switch (kind_) {
        case ProfileKind::Sin: return "sin";
        case ProfileKind::Sinh: return "sinh";
        case ProfileKind::Linear: return "linear";
        case ProfileKind::Exponential:
            os << "exp(" << a_ << "," << b_ << ")";
            return os.str();
        case ProfileKind::Constant:
            os << "const(" << a_ << ")";
            return os.str();
        case ProfileKind::Schwarzschild:
            os << "schwarzschild(" << m_ << ")";
            return os.str();
        case ProfileKind::Tabulated: return "tabulated";
    }
    return "?";
}

// ---- evaluation ----

void WarpingProfile::require_in_band(double r) const {
    const double slack = 1e-12 * (r_bar_ - r0_);
    if (r < r0_ - slack || r > r_bar_ + slack)
        throw OutOfBandError("radius " + std::to_string(r) + " outside band [" +
                             std::to_string(r0_) + ", " + std::to_string(r_bar_) + "]");
}

void WarpingProfile::require_in_band(const Field& r) const {
    require_in_band(r.minCoeff());
    require_in_band(r.maxCoeff());
}

double WarpingProfile::schw_u(double r) const {
    // Invert r = m*(u*sqrt(1+u^2) + asinh(u)); convex increasing, so Newton
    // from an overestimate descends monotonically.
    if (r <= 0.0) return 0.0;
    double u = std::sqrt(r / m_) + 1.0;
    for (int it = 0; it < 64; ++it) {
        const double s = std::sqrt(1.0 + u * u);
        const double f = m_ * (u * s + std::asinh(u)) - r;
        const double du = f / (2.0 * m_ * s);
        u -= du;
        if (std::abs(du) <= 1e-15 * (1.0 + std::abs(u))) break;
    }
    return u;
}

PhiJet WarpingProfile::eval(double r) const {
    require_in_band(r);
    switch (kind_) {
        case ProfileKind::Sin: {
            double s, c;
            sincos_pair(r, s, c);
            return {s, c, -s, -c};
        }
        case ProfileKind::Sinh: {
            const double s = std::sinh(r), c = std::cosh(r);
            return {s, c, s, c};
        }
        case ProfileKind::Linear:
            return {r, 1.0, 0.0, 0.0};
        case ProfileKind::Exponential: {
            const double e = a_ * std::exp(b_ * r);
            return {e, b_ * e, b_ * b_ * e, b_ * b_ * b_ * e};
        }
        case ProfileKind::Constant:
            return {a_, 0.0, 0.0, 0.0};
        case ProfileKind::Schwarzschild: {
            const double u = schw_u(r);
            const double phi = m_ * (1.0 + u * u);
            const double dphi = u / std::sqrt(1.0 + u * u); // sqrt(1 - m/phi)
            const double d2phi = m_ / (2.0 * phi * phi);
            const double d3phi = -m_ * dphi / (phi * phi * phi);
            return {phi, dphi, d2phi, d3phi};
        }
        case ProfileKind::Tabulated: {
            PhiJet j;
            const double rc = std::clamp(r, table_.x_front(), table_.x_back());
            table_.eval(rc, j.phi, j.dphi, j.d2phi, j.d3phi);
            return j;
        }
    }
    throw std::logic_error("unreachable profile kind");
}

void WarpingProfile::eval_fields(const Field& r, Field& phi, Field& dphi) const {
    require_in_band(r);
    const Eigen::Index n = r.size();
    phi.resize(n);
    dphi.resize(n);
    switch (kind_) {
        case ProfileKind::Sin:
            for (Eigen::Index i = 0; i < n; ++i) sincos_pair(r[i], phi[i], dphi[i]);
            return;
        case ProfileKind::Sinh:
            for (Eigen::Index i = 0; i < n; ++i) {
                phi[i] = std::sinh(r[i]);
                dphi[i] = std::cosh(r[i]);
            }
            return;
        case ProfileKind::Linear:
            phi = r;
            dphi.setOnes();
            return;
        case ProfileKind::Exponential:
            phi = a_ * (b_ * r).exp();
            dphi = b_ * phi;
            return;
        case ProfileKind::Constant:
            phi.setConstant(a_);
            dphi.setZero();
            return;
        default:
            for (Eigen::Index i = 0; i < n; ++i) {
                const PhiJet j = eval(r[i]);
                phi[i] = j.phi;
                dphi[i] = j.dphi;
            }
            return;
    }
}

void WarpingProfile::eval_jet_fields(const Field& r, Field& phi, Field& dphi,
                                     Field& d2phi, Field& d3phi) const {
    require_in_band(r);
    const Eigen::Index n = r.size();
    phi.resize(n);
    dphi.resize(n);
    d2phi.resize(n);
    d3phi.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const PhiJet j = eval(r[i]);
        phi[i] = j.phi;
        dphi[i] = j.dphi;
        d2phi[i] = j.d2phi;
        d3phi[i] = j.d3phi;
    }
}

// ---- primitives ----

double WarpingProfile::big_phi(double r) const {
    require_in_band(r);
    switch (kind_) {
        case ProfileKind::Sin: return std::cos(r0_) - std::cos(r);
        case ProfileKind::Sinh: return std::cosh(r) - std::cosh(r0_);
        case ProfileKind::Linear: return 0.5 * (r * r - r0_ * r0_);
        case ProfileKind::Exponential:
            if (b_ == 0.0) return a_ * (r - r0_);
            return a_ / b_ * (std::exp(b_ * r) - std::exp(b_ * r0_));
        case ProfileKind::Constant: return a_ * (r - r0_);
        default:
            return num::integrate_adaptive([this](double s) { return eval(s).phi; }, r0_, r);
    }
}

double WarpingProfile::shell_primitive(double r) const {
    require_in_band(r);
    switch (kind_) {
        case ProfileKind::Sin:
            if (n_ == 1) return std::cos(r0_) - std::cos(r);
            if (n_ == 2)
                return 0.5 * ((r - std::sin(r) * std::cos(r)) -
                              (r0_ - std::sin(r0_) * std::cos(r0_)));
            break;
        case ProfileKind::Sinh:
            if (n_ == 1) return std::cosh(r) - std::cosh(r0_);
            if (n_ == 2)
                return 0.5 * ((std::sinh(r) * std::cosh(r) - r) -
                              (std::sinh(r0_) * std::cosh(r0_) - r0_));
            break;
        case ProfileKind::Linear:
            return (pow_int(r, n_ + 1) - pow_int(r0_, n_ + 1)) / double(n_ + 1);
        case ProfileKind::Exponential:
            if (b_ == 0.0) return pow_int(a_, n_) * (r - r0_);
            return pow_int(a_, n_) / (n_ * b_) *
                   (std::exp(n_ * b_ * r) - std::exp(n_ * b_ * r0_));
        case ProfileKind::Constant:
            return pow_int(a_, n_) * (r - r0_);
        default:
            break;
    }
    return num::integrate_adaptive(
        [this](double s) { return pow_int(eval(s).phi, n_); }, r0_, r);
}

// ---- conditions ----

double WarpingProfile::q_value(double r) const {
    const PhiJet j = eval(r);
    return j.dphi * j.dphi - j.phi * j.d2phi;
}

std::optional<double> WarpingProfile::constant_q() const {
    switch (kind_) {
        case ProfileKind::Sin:
        case ProfileKind::Sinh:
        case ProfileKind::Linear:
            return 1.0;
        case ProfileKind::Exponential:
        case ProfileKind::Constant:
            return 0.0;
        default:
            return std::nullopt;
    }
}

Field WarpingProfile::q_gap_field(double K, const Field& rho) const {
    const auto cq = constant_q();
    if (cq && *cq == K) return Field::Zero(rho.size());
    Field out(rho.size());
    for (Eigen::Index i = 0; i < rho.size(); ++i) out[i] = K - q_value(rho[i]);
    return out;
}

namespace {

// Refine a bracketed extremum of f by golden-section search.
double refine_extremum(const std::function<double(double)>& f, double lo, double hi,
                       bool maximize) {
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = lo, b = hi;
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < 80 && (b - a) > 1e-13 * (1.0 + std::abs(a)); ++it) {
        const bool pick_left = maximize ? (f1 > f2) : (f1 < f2);
        if (pick_left) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = f(x2);
        }
    }
    return maximize ? std::max(f1, f2) : std::min(f1, f2);
}

} // namespace

ConditionReport check_conditions(const WarpingProfile& profile, double K) {
    ConditionReport rep;
    rep.K = K;
    const double r0 = profile.r0(), rb = profile.r_bar();
    auto q = [&](double r) { return profile.q_value(r); };

    std::vector<double> rs(kScanSamples + 1), qs(kScanSamples + 1);
    rep.phi_prime_positive = true;
    for (int i = 0; i <= kScanSamples; ++i) {
        rs[i] = r0 + (rb - r0) * i / kScanSamples;
        qs[i] = q(rs[i]);
        if (profile.eval(rs[i]).dphi <= 0.0) rep.phi_prime_positive = false;
    }
    rep.min_Q = *std::min_element(qs.begin(), qs.end());
    rep.max_Q = *std::max_element(qs.begin(), qs.end());

    // Refine sampled interior extrema.
    for (int i = 1; i < kScanSamples; ++i) {
        if (qs[i] <= qs[i - 1] && qs[i] <= qs[i + 1])
            rep.min_Q = std::min(rep.min_Q, refine_extremum(q, rs[i - 1], rs[i + 1], false));
        if (qs[i] >= qs[i - 1] && qs[i] >= qs[i + 1])
            rep.max_Q = std::max(rep.max_Q, refine_extremum(q, rs[i - 1], rs[i + 1], true));
    }

    rep.satisfied_lower = rep.min_Q >= -kConditionTol;
    rep.satisfied_upper = rep.max_Q <= K + kConditionTol;
    rep.strict_upper = rep.max_Q < K;
    return rep;
}

PhotonSphereScan photon_sphere_roots(const WarpingProfile& profile) {
    PhotonSphereScan scan;
    if (auto cq = profile.constant_q()) {
        scan.identically_zero = (*cq == 0.0);
        return scan;
    }
    const double r0 = profile.r0(), rb = profile.r_bar();
    auto q = [&](double r) { return profile.q_value(r); };

    std::vector<double> rs(kScanSamples + 1), qs(kScanSamples + 1);
    double max_abs = 0.0;
    for (int i = 0; i <= kScanSamples; ++i) {
        rs[i] = r0 + (rb - r0) * i / kScanSamples;
        qs[i] = q(rs[i]);
        max_abs = std::max(max_abs, std::abs(qs[i]));
    }
    if (max_abs <= 1e-13) {
        scan.identically_zero = true;
        return scan;
    }
    for (int i = 0; i < kScanSamples; ++i) {
        if (qs[i] == 0.0) {
            if (scan.roots.empty() || std::abs(scan.roots.back() - rs[i]) > 1e-10)
                scan.roots.push_back(rs[i]);
        } else if ((qs[i] < 0.0) != (qs[i + 1] < 0.0)) {
            const double root = num::bisect(q, rs[i], rs[i + 1], 1e-12);
            if (scan.roots.empty() || std::abs(scan.roots.back() - root) > 1e-10)
                scan.roots.push_back(root);
        }
    }
    if (qs[kScanSamples] == 0.0 &&
        (scan.roots.empty() || std::abs(scan.roots.back() - rb) > 1e-10))
        scan.roots.push_back(rb);
    return scan;
}

StabilityResult stability_check(const WarpingProfile& profile, double lambda1, double r) {
    profile.require_in_band(r);
    StabilityResult res;
    res.margin = lambda1 - profile.n() * profile.q_value(r);
    res.satisfied = res.margin >= -kConditionTol;
    return res;
}

} // namespace warpflow
