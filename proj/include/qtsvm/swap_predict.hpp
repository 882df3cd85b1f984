#pragma once

#include <cstdint>

#include "qtsvm/quantum.hpp"

namespace qtsvm {

struct SwapTestResult {
  double exact_p0 = 0.0;    // (1 + |<a|b>|^2) / 2 from the simulated circuit
  double sampled_p0 = 0.0;  // empirical ancilla-0 frequency
  double estimate = 0.0;    // 2 sampled_p0 - 1, clamped to [0, 1]
  double exact_overlap() const { return 2.0 * exact_p0 - 1.0; }
};

/// Ancilla Hadamard, controlled SWAP of the two registers, Hadamard, then
/// `shots` ancilla measurements.
SwapTestResult swap_test(const StateVector& a, const StateVector& b, std::uint64_t shots,
                         std::uint64_t seed);

struct NormEstimate {
  double exact = 0.0;  // 1 - |<n|psi>|^2 = ||w||^2 / ||(w, b)||^2
  double estimate = 0.0;
};

/// Measures {I - |n><n|, |n><n|} on a hyperplane state whose bias sits at
/// basis index `features`; outcome 0 has probability ||w||^2.
NormEstimate estimate_norm_w(const StateVector& hyperplane, Eigen::Index features,
                             std::uint64_t shots, std::uint64_t seed);

struct PredictionConfig {
  std::uint64_t shots = 100000;
  std::uint64_t seed = 0;
  bool exact = false;  // infinite-shot limit: use exact probabilities
};

/// Squared distances are recovered as ratio_i = I_i N / ||w_i||^2 with
/// I_i = |<w_i, b_i|x~>|^2 and N = ||x||^2 + 1.
struct DistanceEstimates {
  double inner1 = 0.0;
  double inner2 = 0.0;
  double normsq_w1 = 0.0;
  double normsq_w2 = 0.0;
  double ratio1 = 0.0;
  double ratio2 = 0.0;
  double sample_norm = 1.0;  // N
  double margin = 0.0;       // |ratio1 - ratio2|
};

struct QuantumPrediction {
  int label = 1;
  DistanceEstimates estimates;
};

/// Label +1 when ratio1 <= ratio2 (ties go to the positive class).
QuantumPrediction classify(const RealVector& x, const StateVector& state1,
                           const StateVector& state2, const PredictionConfig& config);

int predict_quantum(const RealVector& x, const StateVector& state1, const StateVector& state2,
                    const PredictionConfig& config);

}  // namespace qtsvm
