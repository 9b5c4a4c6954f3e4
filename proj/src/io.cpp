#include "warpflow/io.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

namespace warpflow::io {

std::string format_double(double v) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

namespace {

double parse_double(const std::string& s) {
    double v;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw std::runtime_error("series.csv: bad number '" + s + "'");
    return v;
}

} // namespace

void write_series_csv(std::ostream& os, const std::vector<DiagnosticsRecord>& records) {
    os << kSeriesHeader << '\n';
    for (const auto& r : records) {
        os << format_double(r.t) << ',' << format_double(r.V) << ',' << format_double(r.A)
           << ',' << format_double(r.max_grad_sq) << ',' << format_double(r.osc_rho) << ','
           << format_double(r.min_u) << ',' << format_double(r.max_H) << ','
           << format_double(r.minkowski_residual) << ','
           << format_double(r.laplace_phi_residual) << ',' << format_double(r.iso_slack)
           << ',' << format_double(r.shape_consistency) << '\n';
    }
}

std::vector<DiagnosticsRecord> read_series_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line != kSeriesHeader)
        throw std::runtime_error("series.csv: unexpected header");
    std::vector<DiagnosticsRecord> out;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (cells.size() != 11) throw std::runtime_error("series.csv: wrong column count");
        DiagnosticsRecord r;
        r.t = parse_double(cells[0]);
        r.V = parse_double(cells[1]);
        r.A = parse_double(cells[2]);
        r.max_grad_sq = parse_double(cells[3]);
        r.osc_rho = parse_double(cells[4]);
        r.min_u = parse_double(cells[5]);
        r.max_H = parse_double(cells[6]);
        r.minkowski_residual = parse_double(cells[7]);
        r.laplace_phi_residual = parse_double(cells[8]);
        r.iso_slack = parse_double(cells[9]);
        r.shape_consistency = parse_double(cells[10]);
        out.push_back(r);
    }
    return out;
}

void write_state_csv(std::ostream& os, const BaseGrid& grid, const GraphState& state) {
    if (grid.kind() == GridKind::AxisymSphere) {
        os << "theta,rho\n";
        for (Eigen::Index i = 0; i < state.rho.size(); ++i)
            os << format_double(grid.theta()[i]) << ',' << format_double(state.rho[i]) << '\n';
        return;
    }
    os << "x,y,rho\n";
    const Field x = grid.coord1(), y = grid.coord2();
    for (Eigen::Index i = 0; i < state.rho.size(); ++i)
        os << format_double(x[i]) << ',' << format_double(y[i]) << ','
           << format_double(state.rho[i]) << '\n';
}

} // namespace warpflow::io
