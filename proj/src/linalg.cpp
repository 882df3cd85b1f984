#include "qtsvm/linalg.hpp"

#include <cmath>
#include <string>

#include "qtsvm/errors.hpp"

namespace qtsvm {

namespace {

constexpr double kPhaseAnchorTolerance = 1e-12;

ComplexMatrix checked_hermitian(const ComplexMatrix& m) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw NonHermitianInput("Hermitian matrix must be square and non-empty");
  }
  if (!m.allFinite()) {
    throw NonHermitianInput("Hermitian matrix has non-finite entries");
  }
  const double asym = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (asym > kHermitianTolerance) {
    throw NonHermitianInput("matrix is not Hermitian (asymmetry " +
                            std::to_string(asym) + ")");
  }
  return (m + m.adjoint()) * 0.5;
}

}  // namespace

HermitianMatrix::HermitianMatrix(const ComplexMatrix& entries)
    : entries_(checked_hermitian(entries)) {}

HermitianMatrix::HermitianMatrix(const RealMatrix& entries)
    : entries_(checked_hermitian(entries.cast<Complex>())) {}

HermitianMatrix HermitianMatrix::scaled(double factor) const {
  return HermitianMatrix(ComplexMatrix(entries_ * factor));
}

EigenDecomposition eigh(const HermitianMatrix& h) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h.entries());
  if (solver.info() != Eigen::Success) {
    throw NonHermitianInput("eigendecomposition did not converge");
  }
  EigenDecomposition out{solver.eigenvalues(), solver.eigenvectors()};
  for (Eigen::Index c = 0; c < out.eigenvectors.cols(); ++c) {
    auto col = out.eigenvectors.col(c);
    for (Eigen::Index r = 0; r < col.size(); ++r) {
      if (std::abs(col(r)) > kPhaseAnchorTolerance) {
        col *= std::conj(col(r)) / std::abs(col(r));
        col(r) = std::abs(col(r));
        break;
      }
    }
  }
  return out;
}

ComplexMatrix matrix_exp_unitary(const HermitianMatrix& h, double t) {
  const auto dec = eigh(h);
  ComplexVector phases(dec.eigenvalues.size());
  for (Eigen::Index i = 0; i < phases.size(); ++i) {
    phases(i) = std::polar(1.0, -dec.eigenvalues(i) * t);
  }
  return dec.eigenvectors * phases.asDiagonal() * dec.eigenvectors.adjoint();
}

ComplexVector solve_hermitian(const HermitianMatrix& h, const ComplexVector& b,
                              double ridge) {
  if (b.size() != h.dim()) {
    throw SingularSystem("right-hand side length does not match matrix");
  }
  if (ridge < 0.0) {
    throw SingularSystem("ridge must be non-negative");
  }
  const ComplexMatrix shifted =
      h.entries() + ridge * ComplexMatrix::Identity(h.dim(), h.dim());
  const double min_eig =
      Eigen::SelfAdjointEigenSolver<ComplexMatrix>(shifted, Eigen::EigenvaluesOnly)
          .eigenvalues()(0);
  if (!(min_eig > kPositiveDefiniteThreshold)) {
    throw SingularSystem("system is singular (min eigenvalue " +
                         std::to_string(min_eig) + ")");
  }
  Eigen::LLT<ComplexMatrix> llt(shifted);
  ComplexVector x = llt.solve(b);
  // One step of iterative refinement keeps the residual near machine precision
  // for moderately conditioned systems.
  x += llt.solve(ComplexVector(b - shifted * x));
  return x;
}

double condition_number(const HermitianMatrix& h) {
  const RealVector ev =
      Eigen::SelfAdjointEigenSolver<ComplexMatrix>(h.entries(), Eigen::EigenvaluesOnly)
          .eigenvalues();
  if (!(ev(0) > kConditionThreshold)) {
    throw SingularSystem("condition number undefined (min eigenvalue " +
                         std::to_string(ev(0)) + ")");
  }
  return ev(ev.size() - 1) / ev(0);
}

double operator_norm(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues()(0);
}

bool is_unitary(const ComplexMatrix& u, double tol) {
  if (u.rows() != u.cols()) return false;
  return (u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols()))
             .cwiseAbs()
             .maxCoeff() <= tol;
}

}  // namespace qtsvm
