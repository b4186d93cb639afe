#include "cohtorus/lattice.hpp"

#include <cmath>
#include <cstdlib>
#include <utility>

#include "cohtorus/errors.hpp"
#include "cohtorus/symplectic.hpp"

namespace cohtorus {

LatticeBasis::LatticeBasis(Complex w1, Complex w2) : w1_(w1), w2_(w2) {
  if (!std::isfinite(w1.real()) || !std::isfinite(w1.imag()) ||
      !std::isfinite(w2.real()) || !std::isfinite(w2.imag())) {
    throw DegenerateLattice("lattice generators must be finite");
  }
  const double oriented = symplectic_form(w1_, w2_);
  const double scale = std::abs(w1_) * std::abs(w2_);
  if (scale == 0.0 || std::abs(oriented) <= 1e-12 * scale) {
    throw DegenerateLattice("lattice generators are collinear");
  }
  if (oriented < 0.0) {
    std::swap(w1_, w2_);
    swapped_ = true;
  }
}

LatticeBasis LatticeBasis::square(double area) {
  if (!(area > 0.0)) throw InvalidArgument("square lattice needs a positive area");
  const double side = std::sqrt(area);
  return LatticeBasis(Complex(0.0, side), Complex(side, 0.0));
}

double LatticeBasis::cell_area() const { return symplectic_form(w1_, w2_); }

std::array<double, 2> LatticeBasis::coordinates(Complex v) const {
  // Cramer's rule against the alternating form.
  const double det = symplectic_form(w1_, w2_);
  return {symplectic_form(v, w2_) / det, symplectic_form(w1_, v) / det};
}

bool LatticeBasis::contains(Complex v, double tol) const {
  const auto [x1, x2] = coordinates(v);
  return std::abs(x1 - std::round(x1)) <= tol && std::abs(x2 - std::round(x2)) <= tol;
}

LatticeBasis LatticeBasis::rebased(long a, long b, long c, long d) const {
  if (std::labs(a * d - b * c) != 1) {
    throw InvalidArgument("re-basing matrix is not unimodular");
  }
  return LatticeBasis(point(a, b), point(c, d));
}

double cell_area(const LatticeBasis& basis) { return basis.cell_area(); }

std::string_view to_string(LatticeKind kind) {
  switch (kind) {
    case LatticeKind::Complete:
      return "Complete";
    case LatticeKind::Overcomplete:
      return "Overcomplete";
    case LatticeKind::Incomplete:
      return "Incomplete";
  }
  return "Unknown";
}

std::optional<int> nearest_positive_integer(double x, double tol) {
  const double k = std::round(x);
  if (k < 1.0 || k > 1e9) return std::nullopt;
  if (std::abs(x - k) > tol * k) return std::nullopt;
  return static_cast<int>(k);
}

LatticeClassification classify(const LatticeBasis& basis, double tol) {
  if (!(tol > 0.0)) throw InvalidArgument("classification tolerance must be positive");
  LatticeClassification out;
  out.area = basis.cell_area();
  out.ratio = kPi / out.area;
  if (std::abs(out.area - kPi) <= tol * kPi) {
    out.kind = LatticeKind::Complete;
  } else if (out.area < kPi) {
    out.kind = LatticeKind::Overcomplete;
  } else {
    out.kind = LatticeKind::Incomplete;
  }
  out.integer_level = nearest_positive_integer(out.area / kPi, tol);
  if (!out.integer_level) out.integer_level = nearest_positive_integer(out.ratio, tol);
  return out;
}

DualLattice dual_lattice(const LatticeBasis& basis, double tol) {
  const auto k = nearest_positive_integer(basis.cell_area() / kPi, tol);
  if (!k) {
    throw NotIntegerMultiple("cell area is not an integer multiple of pi");
  }
  if (*k == 1) return {basis, 1};
  const double inv = 1.0 / static_cast<double>(*k);
  return {LatticeBasis(basis.w1() * inv, basis.w2() * inv), *k * *k};
}

CosetSet coset_representatives(const LatticeBasis& basis, int k) {
  if (k < 1) throw InvalidArgument("coset level must be at least 1");
  CosetSet out;
  out.level = k;
  out.representatives.reserve(static_cast<std::size_t>(k) * k);
  const double inv = 1.0 / static_cast<double>(k);
  for (int m1 = 0; m1 < k; ++m1) {
    for (int m2 = 0; m2 < k; ++m2) {
      out.representatives.push_back(basis.point(m1, m2) * inv);
    }
  }
  return out;
}

double coset_pairing_residual(const CosetSet& cosets, const LatticeBasis& basis) {
  double worst = 0.0;
  for (const Complex v : cosets.representatives) {
    worst = std::max(worst, pi_integrality_defect(v, basis.w1()));
    worst = std::max(worst, pi_integrality_defect(v, basis.w2()));
  }
  return worst;
}

}  // namespace cohtorus
