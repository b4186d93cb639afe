#include "cohtorus/theta.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "cohtorus/errors.hpp"

namespace cohtorus {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const Complex kI(0.0, 1.0);

// Bound for one side of the tail whose first omitted |n + a| is t0.
double one_sided_tail(double t0, double y, double s) {
  const double ratio = std::exp(-kPi * y * (2.0 * t0 + 1.0) + 2.0 * kPi * s);
  if (!(ratio < 1.0)) return kInf;
  return std::exp(-kPi * y * t0 * t0 + 2.0 * kPi * t0 * s) / (1.0 - ratio);
}

// Sum of exp(shift + pi i tau (n+a)^2 + 2 pi i (n+a)(z+b)) over |n| <= N in precision
// Real. Stops once the tail bound of the bare theta series is below target (1 + |theta|).
template <typename Real>
std::complex<Real> shifted_series(Real a, Real b, std::complex<Real> tau, std::complex<Real> z,
                                  std::complex<Real> shift, const SeriesControl& ctl,
                                  int* terms, double* tail) {
  using C = std::complex<Real>;
  const Real pi = std::numbers::pi_v<Real>;
  const C i(0, 1);
  const C zb = z + b;
  const auto term = [&](Real n) {
    const Real s = n + a;
    return std::exp(shift + i * pi * tau * (s * s) + Real(2) * i * pi * s * zb);
  };
  const Real unshift = std::exp(-shift.real());
  C value = term(0);
  for (int n = 0;; ++n) {
    if (n > 0) value += term(Real(n)) + term(Real(-n));
    if (!std::isfinite(std::abs(value))) throw TruncationOverflow("theta series overflows");
    const double bound = theta_tail_bound(static_cast<double>(a), Complex(tau), Complex(z), n);
    const double bare = static_cast<double>(std::abs(value) * unshift);
    if (std::isfinite(bound) && bound <= ctl.tail_target * (1.0 + bare)) {
      if (terms) *terms = n;
      if (tail) *tail = bound;
      return value;
    }
    if (n >= ctl.max_terms) {
      throw TruncationOverflow("theta series needs more than max_terms terms");
    }
  }
}

double reduce_characteristic(double a) { return a - std::floor(a); }

}  // namespace

double theta_tail_bound(double a, Complex tau, Complex z, int n) {
  a = reduce_characteristic(a);
  const double y = tau.imag();
  const double s = std::abs(z.imag());
  return one_sided_tail(n + 1 + a, y, s) + one_sided_tail(n + 1 - a, y, s);
}

ThetaSeries theta_series(double a, double b, Complex tau, Complex z, const SeriesControl& ctl) {
  if (!(tau.imag() > 0.0)) throw InvalidArgument("theta needs Im(tau) > 0");
  if (!(ctl.tail_target > 0.0)) throw InvalidArgument("tail target must be positive");
  using L = long double;
  ThetaSeries out;
  out.value = Complex(shifted_series<L>(reduce_characteristic(a), b, std::complex<L>(tau),
                                        std::complex<L>(z), std::complex<L>(0), ctl, &out.terms,
                                        &out.tail_bound));
  if (!std::isfinite(std::abs(out.value))) throw TruncationOverflow("theta value overflows double");
  return out;
}

Complex theta_eval(double a, double b, Complex tau, Complex z, const SeriesControl& ctl) {
  return theta_series(a, b, tau, z, ctl).value;
}

TorusGeometry::TorusGeometry(const LatticeBasis& basis, int level, double metric_scale)
    : basis_(basis),
      tau_(std::conj(basis.w2() / basis.w1())),
      level_(level),
      metric_scale_(metric_scale),
      h_scale_(static_cast<double>(level) / basis.cell_area()) {
  if (level < 1) throw InvalidArgument("torus level must be at least 1");
  if (!(metric_scale > 0.0)) throw InvalidArgument("metric scale must be positive");
}

TorusGeometry TorusGeometry::from_tau(Complex tau, int level, double metric_scale) {
  if (!(tau.imag() > 0.0)) throw InvalidArgument("torus modulus needs Im(tau) > 0");
  if (level < 1) throw InvalidArgument("torus level must be at least 1");
  const double side = std::sqrt(level * kPi / tau.imag());
  return TorusGeometry(LatticeBasis(Complex(side, 0.0), side * std::conj(tau)), level,
                       metric_scale);
}

double TorusGeometry::metric_weight(Complex v) const {
  return std::exp(-kPi * metric_scale_ * h_scale_ * std::norm(v));
}

ThetaSection::ThetaSection(TorusGeometry geometry, double a, double b, int level_index,
                           SeriesControl ctl)
    : geometry_(std::move(geometry)), a_(a), b_(b), level_index_(level_index), ctl_(ctl) {
  if (!(a >= 0.0 && a < 1.0) || !(b >= 0.0 && b < 1.0)) {
    throw InvalidArgument("characteristics must lie in [0, 1)");
  }
  if (level_index < 0 || level_index >= geometry_.level()) {
    throw InvalidArgument("level index out of range");
  }
}

Complex ThetaSection::holomorphic_part(Complex u) const {
  const double k = geometry_.level();
  return theta_eval(a_, b_, k * geometry_.tau(), k * u, ctl_);
}

template <typename Real>
std::complex<Real> ThetaSection::evaluate(std::complex<Real> v) const {
  using C = std::complex<Real>;
  const C w1(geometry_.basis().w1());
  const C w2(geometry_.basis().w2());
  const C tau = std::conj(w2 / w1);
  const C u = std::conj(v / w1);
  const Real k = static_cast<Real>(geometry_.level());
  const C shift = std::numbers::pi_v<Real> * k * u * u / (Real(2) * tau.imag());
  return shifted_series<Real>(static_cast<Real>(a_), static_cast<Real>(b_), k * tau, k * u, shift,
                              ctl_, nullptr, nullptr);
}

template std::complex<double> ThetaSection::evaluate(std::complex<double>) const;
template std::complex<long double> ThetaSection::evaluate(std::complex<long double>) const;

Complex ThetaSection::operator()(Complex v) const {
  return Complex(evaluate<long double>(std::complex<long double>(v)));
}

double ThetaSection::character_exponent(long m1, long m2) const {
  const double k = geometry_.level();
  return k * static_cast<double>(m1) * static_cast<double>(m2) +
         2.0 * a_ * k * static_cast<double>(m1) - 2.0 * b_ * static_cast<double>(m2);
}

std::vector<ThetaSection> level_basis(const TorusGeometry& geometry) {
  const int k = geometry.level();
  std::vector<ThetaSection> out;
  out.reserve(static_cast<std::size_t>(k));
  for (int j = 0; j < k; ++j) {
    out.emplace_back(geometry, static_cast<double>(j) / k, 0.0, j);
  }
  return out;
}

double verify_invariance(const ComplexFunction& phi, const TorusGeometry& geometry,
                         Complex lam, double f_value, std::span<const Complex> samples) {
  if (!geometry.basis().contains(lam)) {
    throw InvalidArgument("invariance shift is not a lattice point");
  }
  double worst = 0.0;
  for (const Complex v : samples) {
    const Complex base = phi(v);
    const Complex factor =
        std::exp(kPi * (0.5 * geometry.hermitian_form(lam, lam) +
                        geometry.hermitian_form(lam, v) + kI * f_value));
    const double r = std::abs(phi(v + lam) - base * factor) / (1.0 + std::abs(base));
    worst = std::max(worst, r);
  }
  return worst;
}

double verify_invariance(const ThetaSection& section, Complex lam, double f_value,
                         std::span<const Complex> samples) {
  const TorusGeometry& g = section.geometry();
  if (!g.basis().contains(lam)) {
    throw InvalidArgument("invariance shift is not a lattice point");
  }
  // Same residual as the generic overload, evaluated in extended precision.
  using L = long double;
  using C = std::complex<L>;
  const C w1(g.basis().w1());
  const C w2(g.basis().w2());
  const L h_scale = static_cast<L>(g.level()) / std::abs(std::imag(w1 * std::conj(w2)));
  const auto h = [h_scale](C x, C y) { return h_scale * x * std::conj(y); };
  const C l(lam);
  const L pi = std::numbers::pi_v<L>;
  double worst = 0.0;
  for (const Complex sample : samples) {
    const C v(sample);
    const C base = section.evaluate<L>(v);
    const C factor = std::exp(pi * (L(0.5) * h(l, l) + h(l, v) + C(0, f_value)));
    const L r = std::abs(section.evaluate<L>(v + l) - base * factor) / (L(1) + std::abs(base));
    worst = std::max(worst, static_cast<double>(r));
  }
  return worst;
}

ComplexFunction apply_weyl(Complex v, ComplexFunction f, const TorusGeometry& geometry) {
  const Complex half = 0.5 * geometry.hermitian_form(v, v);
  return [v, half, f = std::move(f), geometry](Complex x) {
    return std::exp(-kPi * (half + geometry.hermitian_form(v, x))) * f(v + x);
  };
}

std::vector<ComplexFunction> generate_characteristics(const ThetaSection& base,
                                                      const CosetSet& cosets) {
  if (cosets.level != base.geometry().level()) {
    throw InvalidArgument("coset level differs from the section level");
  }
  const ComplexFunction f = [base](Complex v) { return base(v); };
  std::vector<ComplexFunction> out;
  out.reserve(cosets.representatives.size());
  for (const Complex v : cosets.representatives) {
    out.push_back(apply_weyl(v, f, base.geometry()));
  }
  return out;
}

std::vector<ComplexFunction> as_functions(std::span<const ThetaSection> sections) {
  std::vector<ComplexFunction> out;
  out.reserve(sections.size());
  for (const auto& s : sections) out.emplace_back([s](Complex v) { return s(v); });
  return out;
}

std::vector<Complex> sample_points(const TorusGeometry& geometry, int count) {
  if (count < 1) throw InvalidArgument("sample count must be positive");
  constexpr double kGolden = 0.6180339887498949;
  std::vector<Complex> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const double s = (i + 0.5) / count - 0.5;
    const double t = std::fmod(0.5 + i * kGolden, 1.0) - 0.5;
    out.push_back(geometry.from_normalized(s + t * geometry.tau()));
  }
  return out;
}

MatrixXc sample_matrix(std::span<const ComplexFunction> functions,
                       const TorusGeometry& geometry, std::span<const Complex> points) {
  MatrixXc m(static_cast<Eigen::Index>(points.size()),
             static_cast<Eigen::Index>(functions.size()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    const Complex v = points[static_cast<std::size_t>(i)];
    const double w = std::sqrt(geometry.metric_weight(v));
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      m(i, j) = w * functions[static_cast<std::size_t>(j)](v);
    }
  }
  return m;
}

Eigen::VectorXd singular_values(const MatrixXc& m) {
  return Eigen::JacobiSVD<MatrixXc>(m).singularValues();
}

int numerical_rank(const MatrixXc& m, double rel_tol) {
  const Eigen::VectorXd s = singular_values(m);
  if (s.size() == 0 || s(0) == 0.0) return 0;
  return static_cast<int>((s.array() > rel_tol * s(0)).count());
}

namespace {

MatrixXc span_basis(const MatrixXc& m, double rel_tol) {
  Eigen::JacobiSVD<MatrixXc> svd(m, Eigen::ComputeThinU);
  const Eigen::VectorXd& s = svd.singularValues();
  Eigen::Index r = 0;
  while (r < s.size() && s(r) > rel_tol * s(0)) ++r;
  return svd.matrixU().leftCols(r);
}

}  // namespace

double max_principal_angle(const MatrixXc& a, const MatrixXc& b, double rel_tol) {
  if (a.rows() != b.rows()) throw InvalidArgument("span comparison needs equal row counts");
  const MatrixXc qa = span_basis(a, rel_tol);
  const MatrixXc qb = span_basis(b, rel_tol);
  if (qa.cols() != qb.cols() || qa.cols() == 0) return kPi / 2.0;
  // Sines of the principal angles are the singular values of (I - Qb Qb^H) Qa.
  const MatrixXc residual = qa - qb * (qb.adjoint() * qa);
  const double sine = singular_values(residual).maxCoeff();
  return std::asin(std::min(1.0, sine));
}

namespace {

// Midpoint rule over the parallelogram {s w1 + t w2 : s, t in [0, 1)}.
MatrixXc midpoint_gram(std::span<const ComplexFunction> functions,
                       const TorusGeometry& geometry, int grid) {
  const auto nf = static_cast<Eigen::Index>(functions.size());
  const double cell = geometry.basis().cell_area() / (static_cast<double>(grid) * grid);
  MatrixXc total = MatrixXc::Zero(nf, nf);
  MatrixXc values(grid, nf);
  for (int it = 0; it < grid; ++it) {
    const double t = (it + 0.5) / grid;
    for (int is = 0; is < grid; ++is) {
      const double s = (is + 0.5) / grid;
      const Complex v = geometry.basis().w1() * s + geometry.basis().w2() * t;
      const double w = std::sqrt(geometry.metric_weight(v));
      for (Eigen::Index j = 0; j < nf; ++j) {
        values(is, j) = w * functions[static_cast<std::size_t>(j)](v);
      }
    }
    // Row partial sums, accumulated in row order.
    total.noalias() += values.transpose() * values.conjugate();
  }
  return cell * total;
}

void require_periodic_integrands(std::span<const ComplexFunction> functions,
                                 const TorusGeometry& geometry, double tol) {
  const auto points = sample_points(geometry, 8);
  const std::array<Complex, 2> shifts{geometry.basis().w1(), geometry.basis().w2()};
  for (std::size_t i = 0; i < functions.size(); ++i) {
    for (std::size_t j = i; j < functions.size(); ++j) {
      for (const Complex v : points) {
        const Complex base = geometry.metric_weight(v) * functions[i](v) *
                             std::conj(functions[j](v));
        for (const Complex w : shifts) {
          const Complex moved = geometry.metric_weight(v + w) * functions[i](v + w) *
                                std::conj(functions[j](v + w));
          const double scale = std::max({std::abs(base), std::abs(moved), 1e-300});
          if (std::abs(moved - base) > tol * scale) {
            throw NonConvergent("weighted integrand is not lattice-periodic");
          }
        }
      }
    }
  }
}

}  // namespace

GramResult theta_gram(std::span<const ComplexFunction> functions,
                      const TorusGeometry& geometry, const QuadratureControl& ctl) {
  if (ctl.grid < 8) throw InvalidArgument("quadrature grid must be at least 8");
  if (functions.empty()) throw InvalidArgument("Gram matrix needs at least one function");
  require_periodic_integrands(functions, geometry, ctl.periodicity_tol);

  GramResult out;
  out.gram = midpoint_gram(functions, geometry, ctl.grid);
  out.refined = midpoint_gram(functions, geometry, 2 * ctl.grid);
  for (Eigen::Index i = 0; i < out.gram.rows(); ++i) {
    for (Eigen::Index j = 0; j < out.gram.cols(); ++j) {
      const double scale =
          std::sqrt(std::abs(out.refined(i, i).real() * out.refined(j, j).real()));
      if (scale == 0.0) continue;
      out.relative_change =
          std::max(out.relative_change, std::abs(out.refined(i, j) - out.gram(i, j)) / scale);
    }
  }
  if (out.relative_change > 100.0 * ctl.doubling_target) {
    throw NonConvergent("quadrature changed under grid doubling beyond tolerance");
  }
  return out;
}

Complex theta_inner_product(const ComplexFunction& f, const ComplexFunction& g,
                            const TorusGeometry& geometry, int grid) {
  const std::array<ComplexFunction, 2> pair{f, g};
  QuadratureControl ctl;
  ctl.grid = grid;
  return theta_gram(pair, geometry, ctl).gram(0, 1);
}

}  // namespace cohtorus
