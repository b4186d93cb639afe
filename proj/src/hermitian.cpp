#include "cohtorus/hermitian.hpp"

namespace cohtorus {

HermitianMatrix::HermitianMatrix(MatrixXc m, double tol) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw InvalidArgument("Hermitian matrix must be square and non-empty");
  }
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if (!(hermiticity_defect(m) <= tol * scale)) {
    throw NotHermitian("matrix is not Hermitian within tolerance");
  }
  m_ = 0.5 * (m + m.adjoint());
}

Eigen::VectorXd hermitian_spectrum(const HermitianMatrix& m) {
  return jacobi_eigen<double>(m.matrix(), false).eigenvalues;
}

HermitianEigen<double> hermitian_eigen(const HermitianMatrix& m) {
  return jacobi_eigen<double>(m.matrix(), true);
}

}  // namespace cohtorus
