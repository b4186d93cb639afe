#include "cohtorus/weyl_heisenberg.hpp"

#include "cohtorus/errors.hpp"

namespace cohtorus {

GroupElement compose(const GroupElement& g, const GroupElement& h) {
  return {g.t + h.t + 0.5 * symplectic_form(g.v, h.v), g.v + h.v};
}

GroupElement inverse(const GroupElement& g) { return {-g.t, -g.v}; }

VectorXc fock_displacement(Complex alpha, int n) {
  if (n < 1) throw InvalidArgument("Fock truncation must be at least 1");
  return fock_displacement<double>(alpha, n);
}

double character_exponent(const CharacterData& chi, long m1, long m2) {
  return static_cast<double>(m1) * chi.eps1 + static_cast<double>(m2) * chi.eps2 +
         static_cast<double>(m1 * m2);
}

Complex character_value(const CharacterData& chi, long m1, long m2, double t) {
  // Reduce F mod 2 before exponentiating so large indices keep full accuracy.
  const double f = std::remainder(character_exponent(chi, m1, m2), 2.0);
  return std::polar(1.0, chi.p * kCentralPhaseScale * t) * std::polar(1.0, kPi * f);
}

std::optional<CocyclePair> find_cocycle_violation(const CharacterExponent& f, int p,
                                                  const LatticeBasis& basis, int range,
                                                  double tol) {
  if (range < 1) throw InvalidArgument("cocycle range must be at least 1");
  for (long m1 = -range; m1 <= range; ++m1) {
    for (long m2 = -range; m2 <= range; ++m2) {
      const Complex a = basis.point(m1, m2);
      const double fm = f(m1, m2);
      for (long n1 = -range; n1 <= range; ++n1) {
        for (long n2 = -range; n2 <= range; ++n2) {
          const double pairing = symplectic_form(a, basis.point(n1, n2)) / kPi;
          const double x = f(m1 + n1, m2 + n2) - fm - f(n1, n2) - p * pairing;
          const double defect = std::abs(std::remainder(x, 2.0));
          if (defect > tol) return CocyclePair{m1, m2, n1, n2, defect};
        }
      }
    }
  }
  return std::nullopt;
}

bool verify_character_cocycle(const CharacterData& chi, const LatticeBasis& basis,
                              int range) {
  const auto f = [&chi](long m1, long m2) { return character_exponent(chi, m1, m2); };
  return !find_cocycle_violation(f, chi.p, basis, range).has_value();
}

Complex holonomy_phase(Complex w1, Complex w2) {
  return std::polar(1.0, std::imag(w1 * std::conj(w2)));
}

}  // namespace cohtorus
