#pragma once

#include "qtsvm/linalg.hpp"

namespace qtsvm {

/// Training data split by class: rows of `positive` are the +1 samples (A),
/// rows of `negative` the -1 samples (B).
class Dataset {
 public:
  Dataset(RealMatrix positive, RealMatrix negative);

  const RealMatrix& positive() const { return positive_; }
  const RealMatrix& negative() const { return negative_; }
  Eigen::Index features() const { return positive_.cols(); }
  Eigen::Index size() const { return positive_.rows() + negative_.rows(); }

 private:
  RealMatrix positive_;
  RealMatrix negative_;
};

struct AugmentedMatrices {
  RealMatrix E;   // [A e1]
  RealMatrix F;   // [B e2]
  RealMatrix K1;  // E^T E
  RealMatrix K2;  // F^T F
  RealMatrix H1;  // K1 / c1 + K2
  RealMatrix H2;  // K1 + K2 / c2
};

AugmentedMatrices build_augmented(const Dataset& data, double c1, double c2);

/// A hyperplane w . x + b = 0.
struct Hyperplane {
  RealVector w;
  double b = 0.0;

  /// (w, b) stacked into one vector of length n + 1.
  RealVector stacked() const;
  /// (w, b) / ||(w, b)||; the amplitudes of the corresponding quantum state.
  RealVector normalized() const;
  /// |w . x + b| / ||w||.
  double distance(const RealVector& x) const;
};

struct ClassicalModel {
  Hyperplane plane1;
  Hyperplane plane2;
  double c1 = 1.0;
  double c2 = 1.0;
  double ridge = 0.0;
};

/// Closed-form LS-TSVM:
///   (w1, b1) = -(K1/c1 + K2 + ridge I)^{-1} F^T e2
///   (w2, b2) =  (K1 + K2/c2 + ridge I)^{-1} E^T e1
ClassicalModel train_classical(const Dataset& data, double c1, double c2,
                               double ridge = 0.0);

enum class PlaneIndex { kFirst = 1, kSecond = 2 };

/// Least-squares objective with the slack variables eliminated through the
/// equality constraints. For the first plane
///   1/2 ||A w + b e1||^2 + c/2 ||B w + b e2 + e2||^2,
/// and for the second
///   1/2 ||B w + b e2||^2 + c/2 ||e1 - A w - b e1||^2.
double objective_value(const RealVector& w, double b, const Dataset& data,
                       double c, PlaneIndex which);

struct ClassicalPrediction {
  int label = 1;
  double d1 = 0.0;
  double d2 = 0.0;
};

/// Label +1 when the sample is at least as close to plane 1 as to plane 2.
ClassicalPrediction predict_classical(const ClassicalModel& model,
                                      const RealVector& x);

}  // namespace qtsvm
