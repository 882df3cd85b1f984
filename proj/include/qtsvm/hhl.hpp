#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "qtsvm/classical.hpp"
#include "qtsvm/hamiltonian.hpp"
#include "qtsvm/state_prep.hpp"

namespace qtsvm {

inline const std::string kClockRegister = "clock";
inline const std::string kAncillaRegister = "ancilla";

using GateCounts = std::map<std::string, std::uint64_t>;

struct HHLConfig {
  int clock_qubits = 8;
  double t0 = 1.0;                  // evolution time controlled by the least significant clock bit
  double inversion_constant = 0.1;  // C; ancilla-1 amplitude is C / lambda
  double eigenvalue_cutoff = 0.0;   // decoded eigenvalues below this are not inverted
  bool use_trotter = false;
  int trotter_steps_per_unit = 64;
  int max_qubits = kDefaultMaxQubits;

  /// Eigenvalue decoded from clock value k: 2 pi k / (2^q t0).
  double decoded_eigenvalue(std::size_t k) const;
};

/// Fills t0 (lambda_max t0 = pi), C (0.9 lambda_min) and the cutoff (half the
/// smallest decodable nonzero eigenvalue) from the spectrum of the leading
/// `support_dim` block of H. A singular block falls back to C equal to the
/// smallest decodable eigenvalue.
HHLConfig default_hhl_config(const HermitianMatrix& h_hat, int clock_qubits,
                             Eigen::Index support_dim = -1);

/// Source of e^{-iHt}: exact eigendecomposition or the two-factor Trotter
/// product over a HamiltonianPair.
class Evolution {
 public:
  static Evolution exact(const HermitianMatrix& h);
  static Evolution trotterized(const HamiltonianPair& pair, Side which,
                               int steps_per_unit);

  const HermitianMatrix& hamiltonian() const { return hamiltonian_; }
  bool trotterized() const { return pair_.has_value(); }
  ComplexMatrix unitary(double t) const;
  /// Trotter steps used for time t (1 for exact evolution).
  int steps_for(double t) const;

 private:
  Evolution(HermitianMatrix h, std::optional<HamiltonianPair> pair, Side which,
            int steps_per_unit);

  HermitianMatrix hamiltonian_;
  std::optional<HamiltonianPair> pair_;
  Side which_ = Side::kFirst;
  int steps_per_unit_ = 1;
};

struct RegisterState {
  StateVector state;
  RegisterLayout layout;
};

/// Textbook phase estimation: Hadamards on the clock, controlled
/// e^{-iH t0 2^j} on clock bit j, then the Fourier transform, so
/// eigenvalue lambda lands near clock value 2^q lambda t0 / (2 pi).
RegisterState phase_estimation(const Evolution& evolution, const StateVector& b_state,
                               const HHLConfig& config);
RegisterState phase_estimation(const HermitianMatrix& h_hat, const StateVector& b_state,
                               const HHLConfig& config);

/// Appends an ancilla rotated to amplitude min(1, C / lambda(k)) on |1>.
RegisterState eigenvalue_inversion(const RegisterState& joint, const HHLConfig& config);

struct HHLResult {
  StateVector solution_state;
  double success_probability = 0.0;       // P(ancilla = 1 and clock = 0)
  double ancilla_probability = 0.0;       // P(ancilla = 1)
  double clock_return_probability = 0.0;  // P(clock = 0 | ancilla = 1)
  std::uint64_t repetitions = 1;
  GateCounts gate_counts{};
  int clock_qubits = 0;
  int data_qubits = 0;
};

HHLResult solve_qls(const Evolution& evolution, const StateVector& b_state,
                    const HHLConfig& config, std::uint64_t seed);
HHLResult solve_qls(const HermitianMatrix& h_hat, const StateVector& b_state,
                    const HHLConfig& config, std::uint64_t seed);

struct QuantumTrainConfig {
  int clock_qubits = 8;
  std::optional<double> t0;
  std::optional<double> inversion_constant;
  bool use_trotter = false;
  int trotter_steps_per_unit = 64;
  int max_qubits = kDefaultMaxQubits;
};

struct SideReport {
  PreparedInput input;
  HHLResult solve;
  HHLConfig config;
  double condition_number = 0.0;  // of the unpadded H_hat; infinity if singular
};

struct QuantumTraining {
  StateVector state1;  // ~ (w1, b1) up to sign
  StateVector state2;  // ~ (w2, b2)
  SideReport side1;
  SideReport side2;
  int data_qubits = 0;
  int positive_index_qubits = 0;
  int negative_index_qubits = 0;
  int peak_qubits = 0;
};

/// Qubits needed by the widest circuit of the pipeline (state preparation,
/// linear-system solve or SWAP test).
int required_qubits(const Dataset& data, int clock_qubits);

QuantumTraining train_quantum(const Dataset& data, double c1, double c2,
                              const QuantumTrainConfig& config, std::uint64_t seed);

}  // namespace qtsvm
