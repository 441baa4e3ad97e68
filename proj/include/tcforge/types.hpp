#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace tcforge {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using Mat2 = Eigen::Matrix2cd;
using Vec3 = Eigen::Vector3d;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Invalid indices, parity mismatches and other argument errors.
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Operation called on a backend or input that does not support it.
class UsageError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Wrap an angle into [-pi, pi).
inline double wrap_pi(double x)
{
    double y = std::fmod(x + kPi, kTwoPi);
    if (y < 0) y += kTwoPi;
    return y - kPi;
}

} // namespace tcforge
