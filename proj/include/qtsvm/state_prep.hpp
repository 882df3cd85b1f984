#pragma once

#include <cstdint>

#include "qtsvm/quantum.hpp"

namespace qtsvm {

inline const std::string kDataRegister = "data";
inline const std::string kIndexRegister = "index";

/// Row-oracle state (1/||M||_F) sum_i ||M_i|| |M_i>|i>: the data register
/// (columns of M, padded) is listed first, the row-index register second.
struct ChiState {
  StateVector state;
  RegisterLayout layout;
  Eigen::Index rows = 0;
  Eigen::Index cols = 0;
};

struct PreparedInput {
  StateVector state;  // on the padded data register
  double success_probability = 0.0;
  std::uint64_t attempts = 1;
  int index_qubits = 0;
  int data_qubits = 0;
};

ChiState build_chi(const RealMatrix& m);

/// Walsh-Hadamard on the index register, then postselection on index
/// outcome 0, which leaves M^T e / ||M^T e|| on the data register. Attempts
/// until the first success are drawn from the exact success probability.
PreparedInput postselect_input_state(const ChiState& chi, std::uint64_t seed);

/// Reduced data-register state of |chi>: M^T M / tr(M^T M), zero padded.
DensityMatrix prepare_density_k(const RealMatrix& m);

/// (x_0, ..., x_{n-1}, 1) / sqrt(N) with N = sum x_i^2 + 1, zero padded.
StateVector prepare_sample_state(const RealVector& x);

/// Normalization constant N of prepare_sample_state.
double sample_norm_squared(const RealVector& x);

}  // namespace qtsvm
