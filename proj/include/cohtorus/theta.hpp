#ifndef COHTORUS_THETA_HPP_
#define COHTORUS_THETA_HPP_

#include <span>
#include <vector>

#include "cohtorus/lattice.hpp"
#include "cohtorus/types.hpp"

namespace cohtorus {

struct SeriesControl {
  double tail_target = 1e-14;
  int max_terms = 512;
};

// Sections are compared across lattice translates where they grow by up to
// exp(pi k); the tighter tail keeps truncation below long double rounding.
inline constexpr SeriesControl kSectionSeries{1e-20, 512};

struct ThetaSeries {
  Complex value;
  int terms = 0;           // N: the sum runs over n = -N..N
  double tail_bound = 0.0;  // bound on sum_{|n| > N} |term_n|
};

/// Upper bound on sum_{|n| > N} exp(-pi Im(tau) (n+a)^2 + 2 pi |n+a| |Im z|),
/// a in [0, 1). Infinite when the terms are not yet decreasing past N.
double theta_tail_bound(double a, Complex tau, Complex z, int n);

/// theta[a, b](z, tau) = sum_n exp(pi i tau (n+a)^2 + 2 pi i (n+a)(z+b)),
/// truncated symmetrically once the tail bound is <= tail_target (1 + |sum|).
/// Throws TruncationOverflow when more than max_terms are needed.
ThetaSeries theta_series(double a, double b, Complex tau, Complex z,
                         const SeriesControl& ctl = {});

Complex theta_eval(double a, double b, Complex tau, Complex z,
                   const SeriesControl& ctl = {});

/// Complex torus V/L carrying the level-k polarization.
///
/// The holomorphic coordinate is u = conj(v / w1), in which the lattice is
/// Z + tau Z with tau = conj(w2 / w1); positive orientation of the basis gives
/// Im(tau) > 0. The Hermitian form is H(v, v') = (k / area) v conj(v'), which
/// for an area k pi lattice is v conj(v') / pi = (B(v, Jv') + i B(v, v')) / pi
/// with J = multiplication by -i.
class TorusGeometry {
 public:
  TorusGeometry(const LatticeBasis& basis, int level, double metric_scale = 1.0);

  /// Torus with modulus tau whose lattice has cell area level * pi.
  static TorusGeometry from_tau(Complex tau, int level, double metric_scale = 1.0);

  const LatticeBasis& basis() const { return basis_; }
  Complex tau() const { return tau_; }
  int level() const { return level_; }
  double metric_scale() const { return metric_scale_; }
  // Diagonal period-matrix entry; equal to tau in one complex dimension.
  Complex period() const { return tau_; }

  Complex to_normalized(Complex v) const { return std::conj(v / basis_.w1()); }
  Complex from_normalized(Complex u) const { return std::conj(u) * basis_.w1(); }

  Complex hermitian_form(Complex v, Complex w) const { return h_scale_ * v * std::conj(w); }

  /// exp(-pi metric_scale H(v, v)), the bundle metric weight.
  double metric_weight(Complex v) const;

 private:
  LatticeBasis basis_;
  Complex tau_;
  int level_;
  double metric_scale_;
  double h_scale_;
};

/// phi(v) = exp(pi k u^2 / (2 Im tau)) theta[a, b](k u, k tau), u = conj(v / w1).
///
/// phi satisfies phi(v + lambda) = phi(v) exp(pi [H(lambda, lambda)/2 + H(lambda, v)
/// + i F(lambda)]) with F(m) = k m1 m2 + 2 a k m1 - 2 b m2.
class ThetaSection {
 public:
  ThetaSection(TorusGeometry geometry, double a, double b, int level_index,
               SeriesControl ctl = kSectionSeries);

  /// Evaluated in long double and rounded.
  Complex operator()(Complex v) const;
  /// phi(v) with every intermediate in precision Real (double or long double).
  template <typename Real>
  std::complex<Real> evaluate(std::complex<Real> v) const;

  /// theta[a, b](k u, k tau): the quasi-periodic form, f(u + 1) = e^{2 pi i a k} f(u),
  /// f(u + tau) = e^{-2 pi i k u - pi i k tau - 2 pi i b} f(u).
  Complex holomorphic_part(Complex u) const;

  double character_exponent(long m1, long m2) const;

  const TorusGeometry& geometry() const { return geometry_; }
  double characteristic_a() const { return a_; }
  double characteristic_b() const { return b_; }
  int level_index() const { return level_index_; }

 private:
  TorusGeometry geometry_;
  double a_;
  double b_;
  int level_index_;
  SeriesControl ctl_;
};

/// The k sections theta_j(u) = theta[j/k, 0](k u, k tau), j = 0..k-1.
std::vector<ThetaSection> level_basis(const TorusGeometry& geometry);

/// max |phi(v + lam) - phi(v) exp(pi [H(lam, lam)/2 + H(lam, v) + i F])| / (1 + |phi(v)|).
/// lam must be a lattice point.
double verify_invariance(const ComplexFunction& phi, const TorusGeometry& geometry,
                         Complex lam, double f_value, std::span<const Complex> samples);

/// Section overload: the same residual with phi and the factor in long double.
double verify_invariance(const ThetaSection& section, Complex lam, double f_value,
                         std::span<const Complex> samples);

/// (U_v f)(v') = exp(-pi [H(v, v)/2 + H(v, v')]) f(v + v').
ComplexFunction apply_weyl(Complex v, ComplexFunction f, const TorusGeometry& geometry);

/// U_v applied to the base section at every coset representative: k^2 functions
/// spanning the k-dimensional section space.
std::vector<ComplexFunction> generate_characteristics(const ThetaSection& base,
                                                      const CosetSet& cosets);

std::vector<ComplexFunction> as_functions(std::span<const ThetaSection> sections);

/// `count` deterministic points spread over the fundamental parallelogram centred
/// at the origin, {s w1 + t w2 : |s|, |t| <= 1/2}.
std::vector<Complex> sample_points(const TorusGeometry& geometry, int count);

/// Rows are points, columns functions; entries carry the half metric weight
/// exp(-pi H(v, v) / 2) so that every row is bounded for sections.
MatrixXc sample_matrix(std::span<const ComplexFunction> functions,
                       const TorusGeometry& geometry, std::span<const Complex> points);

Eigen::VectorXd singular_values(const MatrixXc& m);

/// Number of singular values above rel_tol * sigma_max.
int numerical_rank(const MatrixXc& m, double rel_tol);

/// Largest principal angle (radians) between the numerical column spans of a and b.
double max_principal_angle(const MatrixXc& a, const MatrixXc& b, double rel_tol);

struct QuadratureControl {
  int grid = 128;
  double doubling_target = 1e-8;
  double periodicity_tol = 1e-10;
};

struct GramResult {
  MatrixXc gram;              // at grid M
  MatrixXc refined;           // at grid 2M
  double relative_change = 0;  // max |refined - gram| / sqrt(G_ii G_jj)
};

/// Midpoint-rule Gram matrix <f_i, f_j> = int_{V/L} w(v) f_i(v) conj(f_j(v)) dv with
/// the bundle metric weight. The integrand's lattice periodicity is checked
/// first, then the rule is repeated at grid 2M. Throws NonConvergent when the
/// integrand is not periodic or doubling changes entries by > 100 * target.
GramResult theta_gram(std::span<const ComplexFunction> functions,
                      const TorusGeometry& geometry, const QuadratureControl& ctl = {});

Complex theta_inner_product(const ComplexFunction& f, const ComplexFunction& g,
                            const TorusGeometry& geometry, int grid = 128);

}  // namespace cohtorus

#endif  // COHTORUS_THETA_HPP_
