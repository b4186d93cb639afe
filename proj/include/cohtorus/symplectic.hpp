#ifndef COHTORUS_SYMPLECTIC_HPP_
#define COHTORUS_SYMPLECTIC_HPP_

#include "cohtorus/types.hpp"

namespace cohtorus {

// Scale of the alternating form. With kFormScale = 1 a lattice is complete
// exactly when |B(w1, w2)| = pi, the Planck cell in hbar = 1 units.
inline constexpr double kFormScale = 1.0;

// Alternating form on the phase plane, B(v, w) = Im(v conj(w)).
template <typename Real>
inline Real symplectic_form(std::complex<Real> v, std::complex<Real> w) {
  return Real(kFormScale) * (v.imag() * w.real() - v.real() * w.imag());
}

inline double symplectic_form(Complex v, Complex w) {
  return symplectic_form<double>(v, w);
}

// Distance of B(v, w)/pi from the nearest integer.
inline double pi_integrality_defect(Complex v, Complex w) {
  const double x = symplectic_form(v, w) / kPi;
  return std::abs(x - std::round(x));
}

}  // namespace cohtorus

#endif  // COHTORUS_SYMPLECTIC_HPP_
