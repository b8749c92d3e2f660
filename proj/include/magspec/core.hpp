#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace magspec {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr Complex kI{0.0, 1.0};

/// Absolute Hermiticity tolerance every builder is held to.
inline constexpr double kHermitianTol = 1e-12;

// Error taxonomy. The CLI maps these onto distinct exit codes.

/// A precondition on user-supplied parameters failed.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The requested model cannot be built consistently (flux quantization,
/// torus gauge, cluster separation).
class InfeasibleModel : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A numerical self-check failed (band crossing, non-integer Chern sum,
/// non-Hermitian input).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dense complex matrix that is Hermitian to within a tolerance.
///
/// Construction validates the matrix and symmetrizes away rounding noise, so
/// downstream eigensolvers always see an exactly Hermitian input.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  explicit HermitianMatrix(CMatrix m, double tol = kHermitianTol);

  static HermitianMatrix zero(Eigen::Index dim);
  static HermitianMatrix identity(Eigen::Index dim);

  [[nodiscard]] Eigen::Index dim() const { return m_.rows(); }
  [[nodiscard]] const CMatrix& matrix() const { return m_; }
  [[nodiscard]] Complex operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }

  /// Largest |M_ij - conj(M_ji)| of an arbitrary square matrix.
  static double hermiticity_defect(const CMatrix& m);

 private:
  CMatrix m_;
};

/// Spectral (operator 2-) norm.
double operator_norm(const CMatrix& m);

}  // namespace magspec
