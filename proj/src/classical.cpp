#include "qtsvm/classical.hpp"

#include <cmath>

#include "qtsvm/errors.hpp"

namespace qtsvm {

namespace {

constexpr double kDegenerateNorm = 1e-12;

RealMatrix with_ones_column(const RealMatrix& m) {
  RealMatrix out(m.rows(), m.cols() + 1);
  out.leftCols(m.cols()) = m;
  out.col(m.cols()).setOnes();
  return out;
}

RealVector real_solve(const RealMatrix& h, const RealVector& rhs, double ridge) {
  return solve_hermitian(HermitianMatrix(h), rhs.cast<Complex>(), ridge).real();
}

}  // namespace

Dataset::Dataset(RealMatrix positive, RealMatrix negative)
    : positive_(std::move(positive)), negative_(std::move(negative)) {
  if (positive_.rows() < 1 || negative_.rows() < 1) {
    throw EmptyMatrix("each class needs at least one sample");
  }
  if (positive_.cols() < 1 || positive_.cols() != negative_.cols()) {
    throw DimensionMismatch("classes must share a feature dimension >= 1");
  }
  if (!positive_.allFinite() || !negative_.allFinite()) {
    throw InvalidSpec("dataset contains non-finite entries");
  }
}

AugmentedMatrices build_augmented(const Dataset& data, double c1, double c2) {
  if (!(c1 > 0.0) || !(c2 > 0.0)) {
    throw InvalidPenalty("penalties c1 and c2 must be positive");
  }
  AugmentedMatrices aug;
  aug.E = with_ones_column(data.positive());
  aug.F = with_ones_column(data.negative());
  aug.K1 = aug.E.transpose() * aug.E;
  aug.K2 = aug.F.transpose() * aug.F;
  aug.H1 = aug.K1 / c1 + aug.K2;
  aug.H2 = aug.K1 + aug.K2 / c2;
  return aug;
}

RealVector Hyperplane::stacked() const {
  RealVector out(w.size() + 1);
  out.head(w.size()) = w;
  out(w.size()) = b;
  return out;
}

RealVector Hyperplane::normalized() const {
  const RealVector s = stacked();
  const double norm = s.norm();
  if (!(norm > 0.0)) throw ZeroVector("hyperplane (w, b) is zero");
  return s / norm;
}

double Hyperplane::distance(const RealVector& x) const {
  const double wn = w.norm();
  if (!(wn > kDegenerateNorm)) {
    throw DegenerateHyperplane("hyperplane normal has zero norm");
  }
  return std::abs(w.dot(x) + b) / wn;
}

ClassicalModel train_classical(const Dataset& data, double c1, double c2,
                               double ridge) {
  const auto aug = build_augmented(data, c1, c2);
  const RealVector rhs1 = aug.F.transpose() * RealVector::Ones(aug.F.rows());
  const RealVector rhs2 = aug.E.transpose() * RealVector::Ones(aug.E.rows());
  const RealVector z1 = -real_solve(aug.H1, rhs1, ridge);
  const RealVector z2 = real_solve(aug.H2, rhs2, ridge);

  const Eigen::Index n = data.features();
  ClassicalModel model;
  model.plane1 = Hyperplane{z1.head(n), z1(n)};
  model.plane2 = Hyperplane{z2.head(n), z2(n)};
  model.c1 = c1;
  model.c2 = c2;
  model.ridge = ridge;
  return model;
}

double objective_value(const RealVector& w, double b, const Dataset& data,
                       double c, PlaneIndex which) {
  const RealMatrix& a = data.positive();
  const RealMatrix& bm = data.negative();
  if (which == PlaneIndex::kFirst) {
    const RealVector own = (a * w).array() + b;
    const RealVector slack = (bm * w).array() + b + 1.0;
    return 0.5 * own.squaredNorm() + 0.5 * c * slack.squaredNorm();
  }
  const RealVector own = (bm * w).array() + b;
  const RealVector slack = 1.0 - ((a * w).array() + b);
  return 0.5 * own.squaredNorm() + 0.5 * c * slack.squaredNorm();
}

ClassicalPrediction predict_classical(const ClassicalModel& model,
                                      const RealVector& x) {
  if (x.size() != model.plane1.w.size()) {
    throw DimensionMismatch("sample dimension does not match model");
  }
  ClassicalPrediction out;
  out.d1 = model.plane1.distance(x);
  out.d2 = model.plane2.distance(x);
  out.label = out.d1 <= out.d2 ? 1 : -1;
  return out;
}

}  // namespace qtsvm
