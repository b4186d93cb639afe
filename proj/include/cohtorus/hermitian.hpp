#ifndef COHTORUS_HERMITIAN_HPP_
#define COHTORUS_HERMITIAN_HPP_

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "cohtorus/errors.hpp"
#include "cohtorus/types.hpp"

namespace cohtorus {

/// Largest |M(i,j) - conj(M(j,i))|.
template <typename Derived>
typename Derived::RealScalar hermiticity_defect(const Eigen::MatrixBase<Derived>& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

/// Dense complex matrix that is Hermitian to within 1e-12 of its largest entry.
/// The stored matrix is the exact Hermitian part of the input.
class HermitianMatrix {
 public:
  explicit HermitianMatrix(MatrixXc m, double tol = 1e-12);

  Eigen::Index dimension() const { return m_.rows(); }
  const MatrixXc& matrix() const { return m_; }
  Complex operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }

 private:
  MatrixXc m_;
};

template <typename Real>
struct HermitianEigen {
  Eigen::Matrix<Real, Eigen::Dynamic, 1> eigenvalues;  // ascending
  Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic> eigenvectors;
  int sweeps = 0;
};

/// Cyclic Jacobi diagonalization of a Hermitian matrix.
///
/// Row-cyclic sweep order (p < q), each rotation first removes the phase of
/// a(p,q) and then applies a real Jacobi rotation. Stops when the off-diagonal
/// Frobenius mass is <= 1e-14 ||A||_F. Deterministic; single-threaded.
template <typename Real>
HermitianEigen<Real> jacobi_eigen(
    const Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>& input,
    bool with_vectors = true, int max_sweeps = 100) {
  using C = std::complex<Real>;
  using Mat = Eigen::Matrix<C, Eigen::Dynamic, Eigen::Dynamic>;
  const Eigen::Index n = input.rows();
  if (input.cols() != n) throw InvalidArgument("matrix is not square");

  Mat a = Real(0.5) * (input + input.adjoint());
  Mat v;
  if (with_vectors) v = Mat::Identity(n, n);

  const Real total = a.norm();
  const Real target = Real(1e-14) * total;
  const auto off_norm = [&a, n]() {
    Real s = 0;
    for (Eigen::Index j = 0; j < n; ++j)
      for (Eigen::Index i = 0; i < n; ++i)
        if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
  };

  HermitianEigen<Real> out;
  while (total > 0 && off_norm() > target) {
    if (out.sweeps == max_sweeps) throw NonConvergent("Jacobi sweeps did not converge");
    ++out.sweeps;
    for (Eigen::Index p = 0; p + 1 < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const Real mag = std::abs(a(p, q));
        if (mag <= std::numeric_limits<Real>::min()) continue;
        const C phase = a(p, q) / mag;
        const Real app = a(p, p).real();
        const Real aqq = a(q, q).real();
        const Real theta = (aqq - app) / (Real(2) * mag);
        Real t = Real(1) / (std::abs(theta) + std::sqrt(theta * theta + Real(1)));
        if (theta < 0) t = -t;
        const Real c = Real(1) / std::sqrt(t * t + Real(1));
        const Real s = t * c;
        const C sp = s * std::conj(phase);

        // A <- A V with V = diag(1, conj(phase)) * [[c, s], [-s, c]].
        for (Eigen::Index i = 0; i < n; ++i) {
          const C aip = a(i, p);
          const C aiq = a(i, q);
          a(i, p) = c * aip - sp * aiq;
          a(i, q) = s * aip + c * std::conj(phase) * aiq;
        }
        // A <- V^H A.
        for (Eigen::Index j = 0; j < n; ++j) {
          const C apj = a(p, j);
          const C aqj = a(q, j);
          a(p, j) = c * apj - std::conj(sp) * aqj;
          a(q, j) = s * apj + c * phase * aqj;
        }
        a(p, q) = C(0);
        a(q, p) = C(0);
        a(p, p) = C(app - t * mag);
        a(q, q) = C(aqq + t * mag);
        if (with_vectors) {
          for (Eigen::Index i = 0; i < n; ++i) {
            const C vip = v(i, p);
            const C viq = v(i, q);
            v(i, p) = c * vip - sp * viq;
            v(i, q) = s * vip + c * std::conj(phase) * viq;
          }
        }
      }
    }
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index(0));
  std::stable_sort(order.begin(), order.end(), [&a](Eigen::Index i, Eigen::Index j) {
    return a(i, i).real() < a(j, j).real();
  });
  out.eigenvalues.resize(n);
  if (with_vectors) out.eigenvectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Index src = order[static_cast<std::size_t>(k)];
    out.eigenvalues(k) = a(src, src).real();
    if (with_vectors) out.eigenvectors.col(k) = v.col(src);
  }
  return out;
}

/// Ascending eigenvalues.
Eigen::VectorXd hermitian_spectrum(const HermitianMatrix& m);

HermitianEigen<double> hermitian_eigen(const HermitianMatrix& m);

}  // namespace cohtorus

#endif  // COHTORUS_HERMITIAN_HPP_
