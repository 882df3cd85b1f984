#include "qtsvm/swap_predict.hpp"

#include <algorithm>
#include <utility>

#include "qtsvm/errors.hpp"
#include "qtsvm/state_prep.hpp"

namespace qtsvm {

namespace {

constexpr double kPaddingLeakage = 1e-6;
constexpr double kExactDegenerate = 1e-12;
constexpr double kDegenerateShots = 10.0;

}  // namespace

SwapTestResult swap_test(const StateVector& a, const StateVector& b, std::uint64_t shots,
                         std::uint64_t seed) {
  if (a.dim() != b.dim()) throw DimensionMismatch("SWAP test needs equal dimensions");
  const int q = a.num_qubits();
  const RegisterLayout layout({{"ancilla", 1}, {"a", q}, {"b", q}});
  StateVector state = tensor(StateVector::basis(1, 0), tensor(a, b));
  state = walsh_hadamard(state, layout, "ancilla");

  // Controlled SWAP: exchange the a and b fields on the ancilla-1 half.
  ComplexVector amps = state.amplitudes();
  const std::size_t field = std::size_t{1} << q;
  const std::size_t half = field * field;
  for (std::size_t ia = 0; ia < field; ++ia) {
    for (std::size_t ib = ia + 1; ib < field; ++ib) {
      std::swap(amps(static_cast<Eigen::Index>(half + ia * field + ib)),
                amps(static_cast<Eigen::Index>(half + ib * field + ia)));
    }
  }
  state = walsh_hadamard(StateVector(std::move(amps)), layout, "ancilla");

  SwapTestResult out;
  const RealVector probs = register_probabilities(state, layout, "ancilla");
  out.exact_p0 = probs(0);
  out.sampled_p0 = sample_counts(probs, shots, seed).frequency(0);
  out.estimate = std::clamp(2.0 * out.sampled_p0 - 1.0, 0.0, 1.0);
  return out;
}

NormEstimate estimate_norm_w(const StateVector& hyperplane, Eigen::Index features,
                             std::uint64_t shots, std::uint64_t seed) {
  const Eigen::Index dim = hyperplane.dim();
  if (features < 0 || features >= dim) {
    throw DimensionMismatch("bias index outside the hyperplane state");
  }
  const double leakage = hyperplane.amplitudes().tail(dim - features - 1).squaredNorm();
  if (leakage > kPaddingLeakage) {
    throw PaddingLeakage("hyperplane state has weight on padding amplitudes");
  }
  ComplexMatrix bias = ComplexMatrix::Zero(dim, dim);
  bias(features, features) = 1.0;
  const MeasurementResult m = measure_projective(
      hyperplane, {ComplexMatrix(ComplexMatrix::Identity(dim, dim) - bias), bias}, shots, seed);
  return NormEstimate{m.probabilities(0), m.counts.frequency(0)};
}

QuantumPrediction classify(const RealVector& x, const StateVector& state1,
                           const StateVector& state2, const PredictionConfig& config) {
  if (!config.exact && config.shots < 1) throw InvalidSpec("shots must be >= 1");
  const StateVector sample = prepare_sample_state(x);
  if (sample.dim() != state1.dim() || sample.dim() != state2.dim()) {
    throw DimensionMismatch("sample dimension does not match the hyperplane states");
  }
  const auto features = x.size();
  const SwapTestResult s1 = swap_test(state1, sample, config.shots, derive_seed(config.seed, 0));
  const SwapTestResult s2 = swap_test(state2, sample, config.shots, derive_seed(config.seed, 1));
  const NormEstimate n1 = estimate_norm_w(state1, features, config.shots, derive_seed(config.seed, 2));
  const NormEstimate n2 = estimate_norm_w(state2, features, config.shots, derive_seed(config.seed, 3));

  QuantumPrediction out;
  DistanceEstimates& e = out.estimates;
  e.sample_norm = sample_norm_squared(x);
  if (config.exact) {
    e.inner1 = std::clamp(s1.exact_overlap(), 0.0, 1.0);
    e.inner2 = std::clamp(s2.exact_overlap(), 0.0, 1.0);
    e.normsq_w1 = n1.exact;
    e.normsq_w2 = n2.exact;
  } else {
    e.inner1 = s1.estimate;
    e.inner2 = s2.estimate;
    e.normsq_w1 = n1.estimate;
    e.normsq_w2 = n2.estimate;
  }
  const double threshold =
      config.exact ? kExactDegenerate : kDegenerateShots / static_cast<double>(config.shots);
  if (e.normsq_w1 < threshold || e.normsq_w2 < threshold) {
    throw DegenerateHyperplane("||w||^2 estimate is indistinguishable from zero");
  }
  e.ratio1 = e.inner1 * e.sample_norm / e.normsq_w1;
  e.ratio2 = e.inner2 * e.sample_norm / e.normsq_w2;
  e.margin = std::abs(e.ratio1 - e.ratio2);
  out.label = e.ratio1 <= e.ratio2 ? 1 : -1;
  return out;
}

int predict_quantum(const RealVector& x, const StateVector& state1, const StateVector& state2,
                    const PredictionConfig& config) {
  return classify(x, state1, state2, config).label;
}

}  // namespace qtsvm
