#ifndef COHTORUS_LANDAU_HPP_
#define COHTORUS_LANDAU_HPP_

#include <vector>

#include "cohtorus/hermitian.hpp"
#include "cohtorus/types.hpp"

namespace cohtorus {

/// Periodic Lx x Ly square lattice with flux p/q per plaquette, Landau gauge.
struct HofstadterConfig {
  int lx = 1;
  int ly = 1;
  int p = 1;
  int q = 1;

  /// Throws InvalidConfig (non-positive sizes, p < 1, gcd(p, q) != 1, q not
  /// dividing Lx) or FluxNotInteger.
  void validate() const;

  /// N_phi = Lx Ly p / q.
  long flux_quanta() const;
};

/// Nearest-neighbour hopping -sum (c^dag_{x+1,y} c_{x,y} + e^{2 pi i p x / q} c^dag_{x,y+1} c_{x,y} + h.c.)
/// with site index x + Lx y.
HermitianMatrix hofstadter_hamiltonian(const HofstadterConfig& cfg);

struct SpectrumCluster {
  double center = 0.0;
  int multiplicity = 0;
};

struct SpectrumReport {
  Eigen::VectorXd eigenvalues;  // ascending
  std::vector<SpectrumCluster> clusters;
  int lowest_multiplicity = 0;
  // Largest gap inside the lowest cluster over the reference gap; < gap_tol.
  double gap_ratio = 0.0;
  double reference_gap = 0.0;
};

/// Splits an ascending spectrum wherever a consecutive gap reaches gap_tol
/// times the largest gap in the lower half. Throws NoClearGap when that
/// largest gap vanishes.
SpectrumReport cluster_spectrum(Eigen::VectorXd eigenvalues, double gap_tol);

SpectrumReport lowest_band_degeneracy(const HofstadterConfig& cfg, double gap_tol = 0.2);

/// n + 1 - g; throws NegativeDegeneracy when negative.
long degeneracy_formula(long n, long g);

struct CrossCheckReport {
  int level = 0;
  Complex tau;
  HofstadterConfig config;
  long riemann_roch = 0;
  int theta_span = 0;
  int theta_generated = 0;  // number of coset translates
  int lowest_band = 0;
  long formula = 0;
  double span_rank_tolerance = 1e-8;
  double gap_tol = 0.2;
  bool pass = false;
};

/// Riemann-Roch count, dimension of the span of the coset-translated theta
/// functions, Hofstadter bottom-band multiplicity and n + 1 - g at g = 1;
/// passes iff all four agree. Requires N_phi = k.
CrossCheckReport cross_check(int k, Complex tau, const HofstadterConfig& cfg,
                             double gap_tol = 0.2, double rank_tol = 1e-8);

}  // namespace cohtorus

#endif  // COHTORUS_LANDAU_HPP_
