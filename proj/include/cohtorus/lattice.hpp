#ifndef COHTORUS_LATTICE_HPP_
#define COHTORUS_LATTICE_HPP_

#include <array>
#include <optional>
#include <string_view>
#include <vector>

#include "cohtorus/types.hpp"

namespace cohtorus {

/// Two non-collinear generators of a phase-plane lattice, alpha_m = m1 w1 + m2 w2.
///
/// Stored positively oriented: Im(w1 conj(w2)) > 0. A negatively oriented
/// pair is swapped on construction and the swap is remembered.
class LatticeBasis {
 public:
  LatticeBasis(Complex w1, Complex w2);

  /// Square lattice (sqrt(a), i sqrt(a)) of cell area a.
  static LatticeBasis square(double area);

  Complex w1() const { return w1_; }
  Complex w2() const { return w2_; }
  bool swapped() const { return swapped_; }

  /// |Im(w1 conj(w2))|, twice the area of the triangle (0, w1, w1 + w2).
  double cell_area() const;

  Complex point(long m1, long m2) const {
    return static_cast<double>(m1) * w1_ + static_cast<double>(m2) * w2_;
  }

  /// Real coordinates (x1, x2) with v = x1 w1 + x2 w2.
  std::array<double, 2> coordinates(Complex v) const;

  /// True when v is a lattice point up to `tol` in index coordinates.
  bool contains(Complex v, double tol = 1e-9) const;

  /// Re-based lattice (a w1 + b w2, c w1 + d w2); requires ad - bc = +-1.
  LatticeBasis rebased(long a, long b, long c, long d) const;

 private:
  Complex w1_;
  Complex w2_;
  bool swapped_ = false;
};

double cell_area(const LatticeBasis& basis);

enum class LatticeKind { Complete, Overcomplete, Incomplete };

std::string_view to_string(LatticeKind kind);

struct LatticeClassification {
  double area = 0.0;
  LatticeKind kind = LatticeKind::Complete;
  double ratio = 0.0;  // pi / area
  // k when area = k pi or area = pi / k within tolerance.
  std::optional<int> integer_level;
};

LatticeClassification classify(const LatticeBasis& basis,
                               double tol = kIntegerTolerance);

/// Positive integer nearest to x when |x - k| <= tol k, otherwise nullopt.
std::optional<int> nearest_positive_integer(double x, double tol);

struct DualLattice {
  LatticeBasis basis;
  int index = 1;  // [L' : L] = k^2
};

/// Dual of an area k pi lattice: generators (w1/k, w2/k), index k^2.
/// Throws NotIntegerMultiple when area/pi is not an integer within tol.
DualLattice dual_lattice(const LatticeBasis& basis,
                         double tol = kIntegerTolerance);

struct CosetSet {
  int level = 1;
  // v_m = (m1 w1 + m2 w2) / k for m in (Z/k)^2, ordered m1-major.
  std::vector<Complex> representatives;
};

CosetSet coset_representatives(const LatticeBasis& basis, int k);

/// Largest distance of B(v, alpha)/pi from an integer over the given
/// representatives and the two generators of the lattice.
double coset_pairing_residual(const CosetSet& cosets, const LatticeBasis& basis);

}  // namespace cohtorus

#endif  // COHTORUS_LATTICE_HPP_
