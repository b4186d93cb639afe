#include <Eigen/Eigenvalues>
#include <random>

#include "cohtorus/errors.hpp"
#include "cohtorus/hermitian.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace cohtorus;

namespace {

MatrixXc random_hermitian(std::mt19937_64& rng, int n) {
  MatrixXc a(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) a(i, j) = cohtorus::testing::random_complex(rng, 1.0);
  return a + a.adjoint();
}

MatrixXc random_unitary(std::mt19937_64& rng, int n) {
  MatrixXc a(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) a(i, j) = cohtorus::testing::random_complex(rng, 1.0);
  return Eigen::HouseholderQR<MatrixXc>(a).householderQ();
}

}  // namespace

TEST_CASE("identity and diagonal matrices") {
  const auto id = hermitian_spectrum(HermitianMatrix(MatrixXc::Identity(5, 5)));
  CHECK((id.array() == 1.0).all());

  MatrixXc d = MatrixXc::Zero(4, 4);
  d.diagonal() << 3.0, -1.0, 2.0, 0.5;
  const auto e = hermitian_spectrum(HermitianMatrix(d));
  CHECK(e(0) == -1.0);
  CHECK(e(1) == 0.5);
  CHECK(e(2) == 2.0);
  CHECK(e(3) == 3.0);

  MatrixXc one(1, 1);
  one(0, 0) = 4.0;
  CHECK(hermitian_spectrum(HermitianMatrix(one))(0) == 4.0);
}

TEST_CASE("non-Hermitian input is rejected") {
  MatrixXc m = MatrixXc::Zero(2, 2);
  m(0, 1) = 1.0;
  CHECK_THROWS_AS(HermitianMatrix{m}, NotHermitian);
  MatrixXc c = MatrixXc::Identity(2, 2);
  c(0, 0) = Complex(1.0, 1e-3);
  CHECK_THROWS_AS(HermitianMatrix{c}, NotHermitian);
  CHECK_THROWS_AS(jacobi_eigen<double>(MatrixXc::Zero(2, 3)), InvalidArgument);
}

TEST_CASE("random Hermitian matrices against an independent solver") {
  std::mt19937_64 rng(29);
  for (const int n : {2, 3, 8, 17, 40}) {
    const MatrixXc m = random_hermitian(rng, n);
    const auto eig = hermitian_eigen(HermitianMatrix(m));
    const double norm = m.norm();

    CHECK(std::abs(eig.eigenvalues.sum() - m.trace().real()) <= 1e-12 * norm * n);
    for (int k = 0; k < n; ++k) {
      const auto v = eig.eigenvectors.col(k);
      CHECK((m * v - eig.eigenvalues(k) * v).norm() <= 1e-10 * norm);
    }
    CHECK((eig.eigenvectors.adjoint() * eig.eigenvectors - MatrixXc::Identity(n, n)).norm() <= 1e-12 * n);

    const Eigen::SelfAdjointEigenSolver<MatrixXc> oracle(m, Eigen::EigenvaluesOnly);
    CHECK((eig.eigenvalues - oracle.eigenvalues()).cwiseAbs().maxCoeff() <= 1e-12 * norm);
  }
}

TEST_CASE("repeated eigenvalues") {
  std::mt19937_64 rng(31);
  const MatrixXc u = random_unitary(rng, 6);
  Eigen::VectorXd d(6);
  d << 1, 1, 1, 2, 2, -3;
  const MatrixXc m = u * d.cast<Complex>().asDiagonal() * u.adjoint();
  const auto e = hermitian_spectrum(HermitianMatrix(m, 1e-10));
  Eigen::VectorXd expected(6);
  expected << -3, 1, 1, 1, 2, 2;
  CHECK((e - expected).cwiseAbs().maxCoeff() <= 1e-12 * m.norm());
}

TEST_CASE("scalar-templated kernel in extended precision") {
  using CL = std::complex<long double>;
  Eigen::Matrix<CL, Eigen::Dynamic, Eigen::Dynamic> m(3, 3);
  m << CL(2, 0), CL(0, 1), CL(0, 0),
       CL(0, -1), CL(2, 0), CL(0, 0),
       CL(0, 0), CL(0, 0), CL(5, 0);
  const auto e = jacobi_eigen<long double>(m, false);
  CHECK(std::abs(static_cast<double>(e.eigenvalues(0)) - 1.0) < 1e-15);
  CHECK(std::abs(static_cast<double>(e.eigenvalues(1)) - 3.0) < 1e-15);
  CHECK(std::abs(static_cast<double>(e.eigenvalues(2)) - 5.0) < 1e-15);
}

TEST_CASE("hermiticity defect") {
  MatrixXc m = MatrixXc::Identity(3, 3);
  CHECK(hermiticity_defect(m) == 0.0);
  m(0, 2) = Complex(0.0, 0.5);
  CHECK(hermiticity_defect(m) == doctest::Approx(0.5));
}
