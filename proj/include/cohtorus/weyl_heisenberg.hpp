#ifndef COHTORUS_WEYL_HEISENBERG_HPP_
#define COHTORUS_WEYL_HEISENBERG_HPP_

#include <cmath>
#include <functional>
#include <optional>

#include "cohtorus/lattice.hpp"
#include "cohtorus/symplectic.hpp"
#include "cohtorus/types.hpp"

namespace cohtorus {

/// Weyl-Heisenberg element (t, v) with displacement v = (Q + iP)/sqrt(2).
struct GroupElement {
  double t = 0.0;
  Complex v{0.0, 0.0};
};

/// (t, v)(t', v') = (t + t' + B(v, v')/2, v + v').
GroupElement compose(const GroupElement& g, const GroupElement& h);
GroupElement inverse(const GroupElement& g);

// In the Fock representation the centre acts as exp(i kCentralPhaseScale t),
// which makes T(0, a) T(0, b) = exp(i Im(a conj(b))) T(0, a + b).
inline constexpr double kCentralPhaseScale = 2.0;

/// Coherent-state overlap <alpha|beta> = exp(conj(alpha) beta - |alpha|^2/2 - |beta|^2/2).
template <typename Real>
std::complex<Real> overlap(std::complex<Real> alpha, std::complex<Real> beta) {
  return std::exp(std::conj(alpha) * beta - Real(0.5) * std::norm(alpha) -
                  Real(0.5) * std::norm(beta));
}

inline Complex overlap(Complex alpha, Complex beta) {
  return overlap<double>(alpha, beta);
}

/// |<0|T(0, gamma)|0>|^2 = exp(-|gamma|^2).
inline double rho(Complex gamma) { return std::exp(-std::norm(gamma)); }

/// First N number-basis amplitudes of the coherent state |alpha>.
///
/// c_0 = exp(-|alpha|^2/2), c_{n+1} = c_n alpha / sqrt(n + 1). No factorial is
/// formed, so large N is safe.
template <typename Real>
Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1> fock_displacement(
    std::complex<Real> alpha, int n) {
  Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1> c(n);
  if (n <= 0) return c;
  c(0) = std::complex<Real>(std::exp(-Real(0.5) * std::norm(alpha)), Real(0));
  for (int k = 0; k + 1 < n; ++k) {
    c(k + 1) = c(k) * alpha / std::sqrt(static_cast<Real>(k + 1));
  }
  return c;
}

VectorXc fock_displacement(Complex alpha, int n);

/// Character chi_{p,F} of the lattice group with F(m) = m1 eps1 + m2 eps2 + m1 m2.
struct CharacterData {
  int p = 1;
  double eps1 = 0.0;  // [0, 2)
  double eps2 = 0.0;  // [0, 2)
};

double character_exponent(const CharacterData& chi, long m1, long m2);

/// exp(i p kCentralPhaseScale t) exp(i pi F(m)), unit modulus.
Complex character_value(const CharacterData& chi, long m1, long m2, double t);

using CharacterExponent = std::function<double(long, long)>;

struct CocyclePair {
  long m1, m2, n1, n2;
  double defect;
};

/// First index pair with F(m + n) != F(m) + F(n) + p B(alpha_m, alpha_n)/pi (mod 2),
/// scanning all components in [-range, range]. nullopt when none violates.
std::optional<CocyclePair> find_cocycle_violation(const CharacterExponent& f, int p,
                                                  const LatticeBasis& basis, int range,
                                                  double tol = 1e-9);

bool verify_character_cocycle(const CharacterData& chi, const LatticeBasis& basis,
                              int range);

/// exp(i Im(w1 conj(w2))) = T(w1) T(w2) T(w1 + w2)^{-1}.
Complex holonomy_phase(Complex w1, Complex w2);

}  // namespace cohtorus

#endif  // COHTORUS_WEYL_HEISENBERG_HPP_
