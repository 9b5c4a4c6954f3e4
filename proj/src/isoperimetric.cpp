#include "warpflow/isoperimetric.hpp"

#include <cmath>
#include <ostream>

#include "warpflow/io.hpp"

namespace warpflow {

IsoProfile::IsoProfile(const WarpingProfile& profile, double base_area, int nodes) {
    if (nodes < 64) throw std::invalid_argument("IsoProfile: need at least 64 nodes");
    if (!(base_area > 0.0)) throw std::invalid_argument("IsoProfile: base area must be positive");
    const int n = profile.n();
    const double r0 = profile.r0(), rb = profile.r_bar();

    std::vector<double> r(nodes), A(nodes), V(nodes), dA(nodes), dV(nodes);
    for (int i = 0; i < nodes; ++i) {
        r[i] = r0 + (rb - r0) * i / (nodes - 1);
        const PhiJet j = profile.eval(r[i]);
        double phin1 = 1.0; // phi^{n-1}
        for (int k = 1; k < n; ++k) phin1 *= j.phi;
        A[i] = phin1 * j.phi * base_area;
        V[i] = profile.shell_primitive(r[i]) * base_area;
        dA[i] = n * phin1 * j.dphi * base_area;
        dV[i] = A[i];
    }
    a_ = num::MonotoneHermite(r, A, dA, /*limit_slopes=*/false); // A may peak mid-band
    v_ = num::MonotoneHermite(std::move(r), std::move(V), std::move(dV));
}

double IsoProfile::xi(double x) const {
    if (x < -1e-12 * (1.0 + v_max()) || x > v_max() * (1.0 + 1e-12))
        throw OutOfRangeError("xi: volume outside [0, V(r_bar)]");
    return a_(v_.invert(std::clamp(x, 0.0, v_max())));
}

double IsoProfile::r_star(double volume) const {
    if (volume < -1e-12 * (1.0 + v_max()) || volume > v_max() * (1.0 + 1e-12))
        throw OutOfRangeError("r_star: volume outside [0, V(r_bar)]");
    return v_.invert(std::clamp(volume, 0.0, v_max()));
}

std::pair<double, bool> IsoProfile::check_inequality(double A, double V) const {
    const double slack = A - xi(V);
    return {slack, slack >= -1e-8 * A};
}

void IsoProfile::write_csv(std::ostream& os) const {
    os << "r,A,V\n";
    const auto& r = v_.nodes();
    const auto& V = v_.values();
    const auto& A = a_.values();
    for (std::size_t i = 0; i < r.size(); ++i)
        os << io::format_double(r[i]) << ',' << io::format_double(A[i]) << ','
           << io::format_double(V[i]) << '\n';
}

} // namespace warpflow
