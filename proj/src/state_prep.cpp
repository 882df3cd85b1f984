#include "qtsvm/state_prep.hpp"

#include <cmath>
#include <random>

#include "qtsvm/errors.hpp"

namespace qtsvm {

namespace {

constexpr double kZeroColumnSum = 1e-14;

}  // namespace

ChiState build_chi(const RealMatrix& m) {
  if (m.rows() < 1 || m.cols() < 1) throw EmptyMatrix("matrix has no entries");
  const double frob = m.norm();
  if (!(frob > 0.0)) throw EmptyMatrix("matrix is identically zero");

  const int data_qubits = qubits_for(m.cols());
  const int index_qubits = qubits_for(m.rows());
  const Eigen::Index index_dim = Eigen::Index{1} << index_qubits;
  ComplexVector amps = ComplexVector::Zero(Eigen::Index{1} << (data_qubits + index_qubits));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
      amps(k * index_dim + i) = m(i, k) / frob;
    }
  }
  return ChiState{StateVector(std::move(amps)),
                  RegisterLayout({{kDataRegister, data_qubits}, {kIndexRegister, index_qubits}}),
                  m.rows(), m.cols()};
}

PreparedInput postselect_input_state(const ChiState& chi, std::uint64_t seed) {
  const StateVector mixed = walsh_hadamard(chi.state, chi.layout, kIndexRegister);
  const Postselection post = postselect(mixed, chi.layout, kIndexRegister, 0);
  if (!post.state || post.probability <= kZeroColumnSum * kZeroColumnSum) {
    throw ZeroColumnSum("rows cancel: postselection probability is zero");
  }
  std::mt19937_64 rng(seed);
  std::geometric_distribution<std::uint64_t> failures(post.probability);
  return PreparedInput{*post.state, post.probability, failures(rng) + 1,
                       chi.layout.width(kIndexRegister), chi.layout.width(kDataRegister)};
}

DensityMatrix prepare_density_k(const RealMatrix& m) {
  const ChiState chi = build_chi(m);
  return partial_trace(chi.state, chi.layout, kDataRegister);
}

double sample_norm_squared(const RealVector& x) { return x.squaredNorm() + 1.0; }

StateVector prepare_sample_state(const RealVector& x) {
  if (!x.allFinite()) throw InvalidSpec("sample has non-finite entries");
  RealVector tilde(x.size() + 1);
  tilde.head(x.size()) = x;
  tilde(x.size()) = 1.0;
  return normalize_to_state(tilde);
}

}  // namespace qtsvm
