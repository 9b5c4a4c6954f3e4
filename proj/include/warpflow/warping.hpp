#ifndef WARPFLOW_WARPING_HPP
#define WARPFLOW_WARPING_HPP

#include <optional>
#include <string>
#include <vector>

#include "warpflow/common.hpp"
#include "warpflow/numeric.hpp"

namespace warpflow {

/// Tolerance applied to all condition booleans; reported margins stay exact
/// so callers can apply stricter policies.
inline constexpr double kConditionTol = 1e-10;

enum class ProfileKind { Sin, Sinh, Linear, Exponential, Constant, Schwarzschild, Tabulated };

/// phi and its first three derivatives at one radius.
struct PhiJet {
    double phi;
    double dphi;
    double d2phi;
    double d3phi;
};

/// Result of checking 0 <= Q <= K with Q = (phi')^2 - phi*phi'' over the band.
struct ConditionReport {
    double K = 0.0;
    double min_Q = 0.0;
    double max_Q = 0.0;
    bool satisfied_lower = false;
    bool satisfied_upper = false;
    bool phi_prime_positive = false;
    bool strict_upper = false; // max_Q < K

    bool admissible() const { return satisfied_lower && satisfied_upper; }
};

struct PhotonSphereScan {
    bool identically_zero = false; // Q vanishes on the whole band
    std::vector<double> roots;     // isolated roots of Q otherwise
};

struct StabilityResult {
    bool satisfied = false;
    double margin = 0.0; // lambda1 - n*Q(r)
};

/// Warping function phi(r) on the band [r0, r_bar], with derivatives,
/// primitives and the scalar condition machinery built on top of it.
///
/// Closed-form kinds carry analytic derivatives; "tabulated" interpolates
/// a user table with a natural cubic spline; "schwarzschild" parametrizes
/// the profile by arclength from the horizon (r = 0 at phi = m), so r0 > 0
/// is required there.
class WarpingProfile {
public:
    static WarpingProfile sin_kind(double r0, double r_bar, int n);
    static WarpingProfile sinh_kind(double r0, double r_bar, int n);
    static WarpingProfile linear(double r0, double r_bar, int n);
    static WarpingProfile exponential(double a, double b, double r0, double r_bar, int n);
    static WarpingProfile constant(double a, double r0, double r_bar, int n);
    static WarpingProfile schwarzschild(double m, double r0, double r_bar, int n);
    static WarpingProfile tabulated(std::vector<double> r, std::vector<double> phi,
                                    double r0, double r_bar, int n);

    /// Parse the config grammar:
    ///   sin | sinh | linear | exp(a,b) | const(a) | schwarzschild(m) | table:<path>
    /// Band endpoints default per kind when not supplied.
    static WarpingProfile parse(const std::string& spec,
                                std::optional<double> r0,
                                std::optional<double> r_bar,
                                int n);

    ProfileKind kind() const { return kind_; }
    double r0() const { return r0_; }
    double r_bar() const { return r_bar_; }
    int n() const { return n_; }
    std::string describe() const;

    /// phi, phi', phi'', phi''' at r. Throws OutOfBandError outside the band.
    PhiJet eval(double r) const;
    double phi(double r) const { return eval(r).phi; }

    /// Vectorized phi, phi' over a field of radii (single band check).
    void eval_fields(const Field& r, Field& phi, Field& dphi) const;
    /// Full jet per node; record-time use.
    void eval_jet_fields(const Field& r, Field& phi, Field& dphi,
                         Field& d2phi, Field& d3phi) const;

    /// Primitive of phi, normalized to vanish at r0.
    double big_phi(double r) const;
    /// Primitive of phi^n, normalized to vanish at r0 (enclosed-volume density).
    double shell_primitive(double r) const;

    /// Q(r) = (phi')^2 - phi*phi''.
    double q_value(double r) const;
    /// Symbolic Q when it is constant over the band (sin/sinh/linear -> 1,
    /// exponential/constant -> 0); nullopt otherwise.
    std::optional<double> constant_q() const;

    /// (K - Q(rho)) per node; exactly zero when constant_q() == K so identity
    /// checks relying on the equality case do not pick up rounding noise.
    Field q_gap_field(double K, const Field& rho) const;

    void require_in_band(double r) const;
    void require_in_band(const Field& r) const;

private:
    WarpingProfile() = default;
    void validate();

    ProfileKind kind_ = ProfileKind::Linear;
    double r0_ = 0.0;
    double r_bar_ = 1.0;
    int n_ = 2;
    double a_ = 1.0; // exp/const amplitude
    double b_ = 0.0; // exp rate
    double m_ = 1.0; // schwarzschild mass
    num::CubicSpline table_;
    double schw_u(double r) const; // u with phi = m(1+u^2)
};

/// Sample Q over the band (dense grid + extremum refinement) and report
/// the extrema against 0 <= Q <= K.
ConditionReport check_conditions(const WarpingProfile& profile, double K);

/// All isolated roots of Q on the band by sign-change bracketing + bisection,
/// or the identically-zero flag when Q vanishes everywhere.
PhotonSphereScan photon_sphere_roots(const WarpingProfile& profile);

/// Slice stability margin lambda1 - n*Q(r) at radius r.
StabilityResult stability_check(const WarpingProfile& profile, double lambda1, double r);

} // namespace warpflow

#endif
