#include "cohtorus/landau.hpp"

#include <numeric>

#include "cohtorus/bundles.hpp"
#include "cohtorus/theta.hpp"

namespace cohtorus {

void HofstadterConfig::validate() const {
  if (lx < 1 || ly < 1) throw InvalidConfig("lattice sizes must be positive");
  if (p < 1 || q < 1) throw InvalidConfig("flux p/q needs p >= 1 and q >= 1");
  if (std::gcd(p, q) != 1) throw InvalidConfig("flux p/q must be in lowest terms");
  if ((static_cast<long>(lx) * ly * p) % q != 0) {
    throw FluxNotInteger("total flux Lx Ly p / q is not an integer");
  }
  if (lx % q != 0) throw InvalidConfig("q must divide Lx in the Landau gauge");
}

long HofstadterConfig::flux_quanta() const {
  validate();
  return static_cast<long>(lx) * ly * p / q;
}

HermitianMatrix hofstadter_hamiltonian(const HofstadterConfig& cfg) {
  cfg.validate();
  const int n = cfg.lx * cfg.ly;
  const auto site = [&cfg](int x, int y) { return (x % cfg.lx) + cfg.lx * (y % cfg.ly); };
  MatrixXc h = MatrixXc::Zero(n, n);
  for (int y = 0; y < cfg.ly; ++y) {
    for (int x = 0; x < cfg.lx; ++x) {
      const int i = site(x, y);
      const int right = site(x + 1, y);
      h(right, i) -= 1.0;
      h(i, right) -= 1.0;
      const Complex peierls = std::polar(1.0, 2.0 * kPi * cfg.p * x / cfg.q);
      const int up = site(x, y + 1);
      h(up, i) -= peierls;
      h(i, up) -= std::conj(peierls);
    }
  }
  return HermitianMatrix(std::move(h));
}

SpectrumReport cluster_spectrum(Eigen::VectorXd eigenvalues, double gap_tol) {
  if (!(gap_tol > 0.0 && gap_tol < 1.0)) throw InvalidArgument("gap_tol must lie in (0, 1)");
  const Eigen::Index n = eigenvalues.size();
  if (n == 0) throw InvalidArgument("empty spectrum");
  SpectrumReport out;
  out.eigenvalues = std::move(eigenvalues);
  const Eigen::VectorXd& e = out.eigenvalues;

  // Reference: the largest gap among the lower half of the spectrum.
  double reference = 0.0;
  for (Eigen::Index i = 1; i <= n / 2 && i < n; ++i) reference = std::max(reference, e(i) - e(i - 1));
  const double scale = std::max(1.0, e.cwiseAbs().maxCoeff());
  if (n > 1 && reference <= 1e-12 * scale) throw NoClearGap("no spectral gap in the lower half");
  out.reference_gap = reference;

  const double cut = gap_tol * reference;
  Eigen::Index start = 0;
  double lowest_internal = 0.0;
  double internal = 0.0;
  for (Eigen::Index i = 1; i <= n; ++i) {
    if (i == n || e(i) - e(i - 1) >= cut) {
      const Eigen::Index size = i - start;
      out.clusters.push_back({e.segment(start, size).mean(), static_cast<int>(size)});
      if (out.clusters.size() == 1) lowest_internal = internal;
      start = i;
      internal = 0.0;
    } else {
      internal = std::max(internal, e(i) - e(i - 1));
    }
  }
  out.lowest_multiplicity = out.clusters.front().multiplicity;
  out.gap_ratio = reference > 0.0 ? lowest_internal / reference : 0.0;
  return out;
}

SpectrumReport lowest_band_degeneracy(const HofstadterConfig& cfg, double gap_tol) {
  return cluster_spectrum(hermitian_spectrum(hofstadter_hamiltonian(cfg)), gap_tol);
}

long degeneracy_formula(long n, long g) {
  if (g < 0) throw InvalidArgument("genus must be non-negative");
  const long d = n + 1 - g;
  if (d < 0) throw NegativeDegeneracy("n + 1 - g is negative");
  return d;
}

CrossCheckReport cross_check(int k, Complex tau, const HofstadterConfig& cfg, double gap_tol,
                             double rank_tol) {
  if (k < 1) throw InvalidArgument("level must be at least 1");
  if (cfg.flux_quanta() != k) {
    throw InvalidArgument("cross-check needs a magnetic configuration with N_phi = k");
  }
  CrossCheckReport out;
  out.level = k;
  out.tau = tau;
  out.config = cfg;
  out.gap_tol = gap_tol;
  out.span_rank_tolerance = rank_tol;

  out.riemann_roch = riemann_roch_dim(make_chern({k}));

  const auto geometry = TorusGeometry::from_tau(tau, k);
  const auto basis = level_basis(geometry);
  const auto generated =
      generate_characteristics(basis.front(), coset_representatives(geometry.basis(), k));
  out.theta_generated = static_cast<int>(generated.size());
  const auto points = sample_points(geometry, 4 * k);
  out.theta_span = numerical_rank(sample_matrix(generated, geometry, points), rank_tol);

  out.lowest_band = lowest_band_degeneracy(cfg, gap_tol).lowest_multiplicity;
  out.formula = degeneracy_formula(k, 1);

  out.pass = out.riemann_roch == k && out.theta_span == k && out.lowest_band == k &&
             out.formula == k;
  return out;
}

}  // namespace cohtorus
