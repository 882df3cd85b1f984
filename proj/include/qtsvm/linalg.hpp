#pragma once

#include <complex>

#include <Eigen/Dense>

namespace qtsvm {

using Complex = std::complex<double>;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr double kHermitianTolerance = 1e-9;
inline constexpr double kPositiveDefiniteThreshold = 1e-12;
inline constexpr double kConditionThreshold = 1e-14;

/// Square complex matrix equal to its conjugate transpose.
///
/// Construction checks symmetry to kHermitianTolerance (max-abs entry of
/// H - H^dagger) and stores the symmetrized (H + H^dagger) / 2, so drift from
/// floating-point assembly never reaches the eigensolver.
class HermitianMatrix {
 public:
  explicit HermitianMatrix(const ComplexMatrix& entries);
  explicit HermitianMatrix(const RealMatrix& entries);

  Eigen::Index dim() const { return entries_.rows(); }
  const ComplexMatrix& entries() const { return entries_; }
  Complex trace() const { return entries_.trace(); }

  HermitianMatrix scaled(double factor) const;

 private:
  ComplexMatrix entries_;
};

struct EigenDecomposition {
  RealVector eigenvalues;      // ascending
  ComplexMatrix eigenvectors;  // columns; first non-negligible component real positive
};

EigenDecomposition eigh(const HermitianMatrix& h);

/// e^{-iHt}, computed as V e^{-i lambda t} V^dagger.
ComplexMatrix matrix_exp_unitary(const HermitianMatrix& h, double t);

/// Solves (H + ridge I) x = b. Throws SingularSystem when the smallest
/// eigenvalue of H + ridge I is at or below kPositiveDefiniteThreshold.
ComplexVector solve_hermitian(const HermitianMatrix& h, const ComplexVector& b,
                              double ridge = 0.0);

/// lambda_max / lambda_min for a positive definite H.
double condition_number(const HermitianMatrix& h);

/// Largest singular value.
double operator_norm(const ComplexMatrix& m);

bool is_unitary(const ComplexMatrix& u, double tol);

}  // namespace qtsvm
