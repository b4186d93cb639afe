#include "cohtorus/bundles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cohtorus/errors.hpp"
#include "cohtorus/weyl_heisenberg.hpp"

namespace cohtorus {

namespace {
const Complex kI(0.0, 1.0);
}

ExponentialMultiplier ExponentialMultiplier::one(int n) {
  return {Complex(0.0, 0.0), VectorXc::Zero(n), MatrixXc::Zero(n, n)};
}

Complex ExponentialMultiplier::exponent(const VectorXc& z) const {
  return constant + linear.cwiseProduct(z).sum() + (z.transpose() * quadratic * z).value();
}

ExponentialMultiplier ExponentialMultiplier::translated(const VectorXc& mu) const {
  const MatrixXc sym = quadratic + quadratic.transpose();
  ExponentialMultiplier out;
  out.constant = exponent(mu);
  out.linear = linear + sym * mu;
  out.quadratic = quadratic;
  return out;
}

ChernData make_chern(std::vector<int> delta) {
  if (delta.empty()) throw InvalidArgument("Chern data needs at least one divisor");
  long degree = 1;
  for (const int d : delta) {
    if (d < 1) throw InvalidArgument("elementary divisors must be positive");
    if (degree > std::numeric_limits<long>::max() / d) {
      throw InvalidArgument("Chern degree overflows");
    }
    degree *= d;
  }
  return {std::move(delta), degree};
}

MultiplierSystem::MultiplierSystem(std::vector<int> delta, MatrixXc period,
                                   std::vector<ExponentialMultiplier> generators,
                                   VectorXc shift)
    : delta_(std::move(delta)),
      period_(std::move(period)),
      generators_(std::move(generators)),
      shift_(std::move(shift)) {
  const auto n = static_cast<Eigen::Index>(delta_.size());
  make_chern(delta_);
  if (period_.rows() != n || period_.cols() != n) {
    throw InvalidArgument("period matrix must be n x n");
  }
  if (generators_.size() != static_cast<std::size_t>(2 * n) || shift_.size() != n) {
    throw InvalidArgument("multiplier system needs 2n generators and an n-vector shift");
  }
  for (const auto& g : generators_) {
    if (g.linear.size() != n || g.quadratic.rows() != n || g.quadratic.cols() != n) {
      throw InvalidArgument("generator multiplier has the wrong dimension");
    }
  }
}

const ExponentialMultiplier& MultiplierSystem::generator_multiplier(int i) const {
  return generators_.at(static_cast<std::size_t>(i));
}

VectorXc MultiplierSystem::generator(int i) const {
  const int n = dimension();
  if (i < 0 || i >= 2 * n) throw InvalidArgument("generator index out of range");
  if (i < n) {
    VectorXc e = VectorXc::Zero(n);
    e(i) = static_cast<double>(delta_[static_cast<std::size_t>(i)]);
    return e;
  }
  return period_.col(i - n);
}

VectorXc MultiplierSystem::lattice_vector(std::span<const long> m) const {
  const int n = dimension();
  if (m.size() != static_cast<std::size_t>(2 * n)) {
    throw InvalidArgument("lattice index vector must have 2n entries");
  }
  VectorXc out = VectorXc::Zero(n);
  for (int i = 0; i < 2 * n; ++i) out += static_cast<double>(m[static_cast<std::size_t>(i)]) * generator(i);
  return out;
}

Complex MultiplierSystem::multiplier(std::span<const long> m, const VectorXc& z) const {
  const int n = dimension();
  if (m.size() != static_cast<std::size_t>(2 * n)) {
    throw InvalidArgument("lattice index vector must have 2n entries");
  }
  // Walk lambda_1 ... lambda_2n one step at a time, accumulating exponents.
  VectorXc reached = VectorXc::Zero(n);
  Complex log_value(0.0, 0.0);
  for (int i = 0; i < 2 * n; ++i) {
    const VectorXc step = generator(i);
    const auto& e = generators_[static_cast<std::size_t>(i)];
    const long count = m[static_cast<std::size_t>(i)];
    for (long c = 0; c < std::abs(count); ++c) {
      if (count > 0) {
        log_value += e.exponent(z + reached);
        reached += step;
      } else {
        reached -= step;
        log_value -= e.exponent(z + reached);
      }
    }
  }
  return std::exp(log_value);
}

MultiplierSystem MultiplierSystem::with_generators(
    std::vector<ExponentialMultiplier> generators) const {
  return MultiplierSystem(delta_, period_, std::move(generators), shift_);
}

MultiplierSystem standard_multipliers(const std::vector<int>& delta, const MatrixXc& period) {
  const int n = static_cast<int>(delta.size());
  std::vector<ExponentialMultiplier> gens(static_cast<std::size_t>(2 * n),
                                          ExponentialMultiplier::one(n));
  for (int a = 0; a < n; ++a) {
    gens[static_cast<std::size_t>(n + a)].linear(a) = -2.0 * kPi * kI;
  }
  return MultiplierSystem(delta, period, std::move(gens), VectorXc::Zero(n));
}

MultiplierSystem standard_multipliers(int n, const std::vector<int>& delta) {
  if (n < 1 || delta.size() != static_cast<std::size_t>(n)) {
    throw InvalidArgument("delta must have n >= 1 entries");
  }
  return standard_multipliers(delta, MatrixXc::Identity(n, n) * kI);
}

double verify_compatibility(const MultiplierSystem& ms, std::span<const VectorXc> samples) {
  if (samples.empty()) throw InvalidArgument("compatibility check needs samples");
  const int g = 2 * ms.dimension();
  double worst = 0.0;
  std::vector<long> mi(static_cast<std::size_t>(g)), mj(mi), mij(mi);
  for (int i = 0; i < g; ++i) {
    for (int j = 0; j < g; ++j) {
      std::fill(mi.begin(), mi.end(), 0);
      std::fill(mj.begin(), mj.end(), 0);
      mi[static_cast<std::size_t>(i)] = 1;
      mj[static_cast<std::size_t>(j)] = 1;
      for (int t = 0; t < g; ++t) mij[static_cast<std::size_t>(t)] = mi[static_cast<std::size_t>(t)] + mj[static_cast<std::size_t>(t)];
      const VectorXc li = ms.generator(i);
      const VectorXc lj = ms.generator(j);
      for (const VectorXc& z : samples) {
        const Complex sum = ms.multiplier(mij, z);
        const Complex forward = ms.multiplier(mj, z + li) * ms.multiplier(mi, z);
        const Complex backward = ms.multiplier(mi, z + lj) * ms.multiplier(mj, z);
        const double scale = std::max({std::abs(sum), std::abs(forward), std::abs(backward)});
        worst = std::max(worst, std::abs(forward - sum) / scale);
        worst = std::max(worst, std::abs(backward - sum) / scale);
      }
    }
  }
  return worst;
}

MultiplierSystem translate_bundle(const MultiplierSystem& ms, const VectorXc& mu) {
  if (mu.size() != ms.dimension()) throw InvalidArgument("translation must have length n");
  std::vector<ExponentialMultiplier> gens;
  gens.reserve(static_cast<std::size_t>(2 * ms.dimension()));
  for (int i = 0; i < 2 * ms.dimension(); ++i) {
    gens.push_back(ms.generator_multiplier(i).translated(mu));
  }
  return MultiplierSystem(ms.delta(), ms.period(), std::move(gens), ms.shift() + mu);
}

long riemann_roch_dim(const ChernData& chern) { return make_chern(chern.delta).degree; }

double section_periodicity_check(const ComplexFunction& f, const ChernData& chern,
                                 Complex tau, std::span<const Complex> samples) {
  if (chern.delta.size() != 1) {
    throw InvalidArgument("section check is implemented in one complex dimension");
  }
  const double d = make_chern(chern.delta).degree;
  double worst = 0.0;
  const auto defect = [](Complex lhs, Complex rhs) {
    return std::abs(lhs - rhs) / (1.0 + std::max(std::abs(lhs), std::abs(rhs)));
  };
  for (const Complex z : samples) {
    const Complex fz = f(z);
    worst = std::max(worst, defect(f(z + 1.0), fz));
    const Complex factor = std::exp(-2.0 * kPi * kI * d * z - kPi * kI * d * tau);
    worst = std::max(worst, defect(f(z + tau), factor * fz));
  }
  return worst;
}

BohrSommerfeld bohr_sommerfeld_check(const LatticeBasis& basis, double tol) {
  if (!(tol > 0.0)) throw InvalidArgument("tolerance must be positive");
  BohrSommerfeld out;
  out.flux_quanta = nearest_positive_integer(basis.cell_area() / kPi, tol);
  out.quantizable = out.flux_quanta.has_value();
  out.holonomy = holonomy_phase(basis.w1(), basis.w2());
  return out;
}

}  // namespace cohtorus
