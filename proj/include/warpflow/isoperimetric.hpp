#ifndef WARPFLOW_ISOPERIMETRIC_HPP
#define WARPFLOW_ISOPERIMETRIC_HPP

#include <iosfwd>

#include "warpflow/numeric.hpp"
#include "warpflow/warping.hpp"

namespace warpflow {

/// Tabulated slice area A(r) = phi^n(r) * Area(B) and enclosed volume
/// V(r) (strictly increasing, V(r0) = 0), with the monotone inverse that
/// yields the isoperimetric bound xi(x) = A(V^{-1}(x)).
///
/// Interpolation is cubic Hermite with the analytic slopes V' = A and
/// A' = n phi^{n-1} phi' * Area(B), so mid-node queries stay at O(h^4).
class IsoProfile {
public:
    IsoProfile(const WarpingProfile& profile, double base_area, int nodes = 2048);

    /// xi(x) = A(V^{-1}(x)). Throws OutOfRangeError outside [0, V(r_bar)].
    double xi(double x) const;

    /// The unique r with V(r) = volume.
    double r_star(double volume) const;

    /// slack = A - xi(V); holds iff slack >= -1e-8 * A.
    std::pair<double, bool> check_inequality(double A, double V) const;

    double v_max() const { return v_.values().back(); }
    const std::vector<double>& r_nodes() const { return v_.nodes(); }
    double area_at(double r) const { return a_(r); }
    double volume_at(double r) const { return v_(r); }
    int interpolation_order() const { return 3; }

    /// CSV columns: r, A, V.
    void write_csv(std::ostream& os) const;

private:
    num::MonotoneHermite a_, v_;
};

} // namespace warpflow

#endif
