#ifndef WARPFLOW_COMMON_HPP
#define WARPFLOW_COMMON_HPP

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace warpflow {

/// Node-wise scalar data; 1-D grids use N entries, 2-D grids N*N
/// (x index fastest, i.e. column-major over (i,j)).
using Field = Eigen::ArrayXd;

/// A radial value left the profile band [r0, r_bar].
class OutOfBandError : public std::domain_error {
public:
    explicit OutOfBandError(const std::string& what) : std::domain_error(what) {}
};

/// Query outside the tabulated/defined range (e.g. xi(x) with x > V(r_bar)).
class OutOfRangeError : public std::domain_error {
public:
    explicit OutOfRangeError(const std::string& what) : std::domain_error(what) {}
};

/// Profile construction rejected (non-positive phi, bad table, ...).
class ProfileError : public std::invalid_argument {
public:
    explicit ProfileError(const std::string& what) : std::invalid_argument(what) {}
};

/// NaN/Inf appeared where a finite value is required.
class NonFiniteError : public std::runtime_error {
public:
    explicit NonFiniteError(const std::string& what) : std::runtime_error(what) {}
};

/// Operation not available for this grid/profile kind.
class UnsupportedError : public std::logic_error {
public:
    explicit UnsupportedError(const std::string& what) : std::logic_error(what) {}
};

/// Too few records/states for a windowed computation.
class InsufficientDataError : public std::runtime_error {
public:
    explicit InsufficientDataError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace warpflow

#endif
