#include "magspec/core.hpp"

#include <sstream>

namespace magspec {

HermitianMatrix::HermitianMatrix(CMatrix m, double tol) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) {
    throw InvalidArgument("HermitianMatrix: matrix is not square");
  }
  const double defect = hermiticity_defect(m_);
  if (defect > tol) {
    std::ostringstream os;
    os << "HermitianMatrix: Hermiticity defect " << defect << " exceeds tolerance " << tol;
    throw NumericalError(os.str());
  }
  CMatrix sym = 0.5 * (m_ + m_.adjoint());
  m_ = std::move(sym);
}

HermitianMatrix HermitianMatrix::zero(Eigen::Index dim) {
  return HermitianMatrix(CMatrix::Zero(dim, dim));
}

HermitianMatrix HermitianMatrix::identity(Eigen::Index dim) {
  return HermitianMatrix(CMatrix::Identity(dim, dim));
}

double HermitianMatrix::hermiticity_defect(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double operator_norm(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::BDCSVD<CMatrix> svd(m);
  return svd.singularValues()(0);
}

}  // namespace magspec
