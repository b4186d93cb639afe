#ifndef COHTORUS_BUNDLES_HPP_
#define COHTORUS_BUNDLES_HPP_

#include <optional>
#include <span>
#include <vector>

#include "cohtorus/lattice.hpp"
#include "cohtorus/types.hpp"

namespace cohtorus {

/// z -> exp(c + l.z + z^T Q z) on C^n. Covers constant and exponential-linear
/// multipliers exactly; the quadratic part exists for negative controls.
struct ExponentialMultiplier {
  Complex constant{0.0, 0.0};
  VectorXc linear;
  MatrixXc quadratic;

  static ExponentialMultiplier one(int n);

  Complex exponent(const VectorXc& z) const;
  Complex operator()(const VectorXc& z) const { return std::exp(exponent(z)); }

  /// z -> this(z + mu), in closed form.
  ExponentialMultiplier translated(const VectorXc& mu) const;
};

/// Chern data of a polarized torus: the elementary divisors delta and their product.
struct ChernData {
  std::vector<int> delta;
  long degree = 1;
};

/// Validates delta_a >= 1 and forms the degree with overflow checking.
ChernData make_chern(std::vector<int> delta);

/// Line bundle over C^n / L given by multipliers on the 2n lattice generators.
///
/// Coordinates are the delta-scaled ones: the generators are lambda_a = delta_a e_a
/// and lambda_{n+a} = Z e_a for a period matrix Z. Multipliers of arbitrary
/// lattice vectors follow from the generators through the cocycle rule
/// e_{mu + lambda}(z) = e_lambda(z + mu) e_mu(z).
class MultiplierSystem {
 public:
  MultiplierSystem(std::vector<int> delta, MatrixXc period,
                   std::vector<ExponentialMultiplier> generators, VectorXc shift);

  int dimension() const { return static_cast<int>(delta_.size()); }
  const std::vector<int>& delta() const { return delta_; }
  const MatrixXc& period() const { return period_; }
  const VectorXc& shift() const { return shift_; }
  const ExponentialMultiplier& generator_multiplier(int i) const;

  VectorXc generator(int i) const;
  VectorXc lattice_vector(std::span<const long> m) const;

  /// e_lambda(z) for lambda = sum_i m_i lambda_i.
  Complex multiplier(std::span<const long> m, const VectorXc& z) const;

  ChernData chern() const { return make_chern(delta_); }

  /// Same lattice and Chern data, different generator multipliers.
  MultiplierSystem with_generators(std::vector<ExponentialMultiplier> generators) const;

 private:
  std::vector<int> delta_;
  MatrixXc period_;
  std::vector<ExponentialMultiplier> generators_;
  VectorXc shift_;
};

/// e_{lambda_a} = 1, e_{lambda_{n+a}}(z) = exp(-2 pi i z_a), with Z = i I.
MultiplierSystem standard_multipliers(int n, const std::vector<int>& delta);

/// Same multipliers over a caller-supplied symmetric period matrix.
MultiplierSystem standard_multipliers(const std::vector<int>& delta, const MatrixXc& period);

/// max over samples and generator pairs (lambda, lambda') of the relative defects
/// of e_{lambda'}(z + lambda) e_lambda(z) = e_lambda(z + lambda') e_{lambda'}(z) = e_{lambda+lambda'}(z).
double verify_compatibility(const MultiplierSystem& ms, std::span<const VectorXc> samples);

/// Pull-back along z -> z + mu: e'_lambda(z) = e_lambda(z + mu). Chern data unchanged.
MultiplierSystem translate_bundle(const MultiplierSystem& ms, const VectorXc& mu);

/// dim H^0 = prod_a delta_a.
long riemann_roch_dim(const ChernData& chern);

/// Residual of f(z + 1) = f(z) and f(z + tau) = exp(-2 pi i delta z - pi i delta tau) f(z)
/// in one complex dimension; each defect is divided by 1 + max(|lhs|, |rhs|).
double section_periodicity_check(const ComplexFunction& f, const ChernData& chern,
                                 Complex tau, std::span<const Complex> samples);

struct BohrSommerfeld {
  bool quantizable = false;
  std::optional<int> flux_quanta;
  Complex holonomy;  // exp(i area) around one cell
};

/// Integrality of the cell area in units of pi.
BohrSommerfeld bohr_sommerfeld_check(const LatticeBasis& basis,
                                     double tol = kIntegerTolerance);

}  // namespace cohtorus

#endif  // COHTORUS_BUNDLES_HPP_
