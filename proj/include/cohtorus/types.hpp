#ifndef COHTORUS_TYPES_HPP_
#define COHTORUS_TYPES_HPP_

#include <complex>
#include <functional>
#include <numbers>

#include <Eigen/Dense>

namespace cohtorus {

using Complex = std::complex<double>;
using MatrixXc = Eigen::MatrixXcd;
using VectorXc = Eigen::VectorXcd;

// A holomorphic (or merely evaluable) function on the phase plane.
using ComplexFunction = std::function<Complex(Complex)>;

inline constexpr double kPi = std::numbers::pi;

// Relative tolerance used when deciding whether a real number is an integer.
inline constexpr double kIntegerTolerance = 1e-9;

}  // namespace cohtorus

#endif  // COHTORUS_TYPES_HPP_
