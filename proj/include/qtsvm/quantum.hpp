#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qtsvm/linalg.hpp"

namespace qtsvm {

inline constexpr double kNormTolerance = 1e-10;
inline constexpr int kDefaultMaxQubits = 14;

/// Named qubit registers. The first-listed register holds the most
/// significant bits of a basis-state index.
class RegisterLayout {
 public:
  struct Register {
    std::string name;
    int qubits = 0;
  };

  RegisterLayout() = default;
  explicit RegisterLayout(std::vector<Register> registers);

  int num_qubits() const { return total_; }
  const std::vector<Register>& registers() const { return registers_; }
  bool contains(const std::string& name) const;
  int width(const std::string& name) const;
  /// Bit position of the least significant qubit of `name`.
  int shift(const std::string& name) const;
  RegisterLayout without(const std::string& name) const;
  RegisterLayout appended(Register reg) const;

 private:
  std::size_t position(const std::string& name) const;

  std::vector<Register> registers_;
  int total_ = 0;
};

/// Pure state on 2^num_qubits amplitudes, unit norm within kNormTolerance.
class StateVector {
 public:
  explicit StateVector(ComplexVector amplitudes);

  static StateVector basis(int num_qubits, std::size_t index);

  int num_qubits() const { return num_qubits_; }
  Eigen::Index dim() const { return amplitudes_.size(); }
  const ComplexVector& amplitudes() const { return amplitudes_; }
  Complex operator[](Eigen::Index i) const { return amplitudes_(i); }

 private:
  ComplexVector amplitudes_;
  int num_qubits_ = 0;
};

/// Hermitian, unit-trace, positive semidefinite operator on a power-of-two
/// dimension.
class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix entries);

  static DensityMatrix pure(const StateVector& state);

  Eigen::Index dim() const { return entries_.rows(); }
  const ComplexMatrix& entries() const { return entries_; }
  /// Leading `size` x `size` block, dropping zero padding.
  ComplexMatrix cropped(Eigen::Index size) const;

 private:
  ComplexMatrix entries_;
};

struct ShotCounts {
  std::map<std::size_t, std::uint64_t> counts;
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;

  std::uint64_t count(std::size_t outcome) const;
  double frequency(std::size_t outcome) const;
};

struct MeasurementResult {
  RealVector probabilities;
  std::vector<std::optional<StateVector>> post_states;
  ShotCounts counts;
};

struct Postselection {
  double probability = 0.0;
  std::optional<StateVector> state;  // empty when probability is zero
  RegisterLayout layout;             // layout of `state`
};

/// SplitMix64 step; derives independent substream seeds from one seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

/// Smallest q with 2^q >= dim (at least 1 qubit).
int qubits_for(Eigen::Index dim);

StateVector normalize_to_state(const ComplexVector& v);
StateVector normalize_to_state(const RealVector& v);

StateVector tensor(const StateVector& a, const StateVector& b);

/// Applies U to every qubit of the state.
StateVector apply_unitary(const StateVector& state, const ComplexMatrix& u);
/// Applies U to one register of `layout`.
StateVector apply_unitary(const StateVector& state, const RegisterLayout& layout,
                          const std::string& target, const ComplexMatrix& u);
/// Applies U to `target` on the branch where bit `control_bit` of register
/// `control` is 1.
StateVector apply_controlled_unitary(const StateVector& state,
                                     const RegisterLayout& layout,
                                     const std::string& control, int control_bit,
                                     const std::string& target,
                                     const ComplexMatrix& u);

/// Dense H^{\otimes k}.
ComplexMatrix hadamard_transform(int k);

/// Fourier transform F(y, x) = e^{2 pi i x y / N} / sqrt(N) on one register;
/// `inverse` applies F^dagger.
StateVector fourier_transform(const StateVector& state, const RegisterLayout& layout,
                              const std::string& reg, bool inverse = false);

StateVector walsh_hadamard(const StateVector& state, const RegisterLayout& layout,
                           const std::string& reg);

/// Samples `shots` outcomes from a discrete distribution (multinomial via
/// sequential binomials).
ShotCounts sample_counts(const RealVector& probabilities, std::uint64_t shots,
                         std::uint64_t seed);

/// Projective measurement; projectors are full-dimension operators that must
/// sum to identity and be mutually orthogonal within 1e-9.
MeasurementResult measure_projective(const StateVector& state,
                                     const std::vector<ComplexMatrix>& projectors,
                                     std::uint64_t shots, std::uint64_t seed);

/// Marginal outcome distribution of one register.
RealVector register_probabilities(const StateVector& state,
                                  const RegisterLayout& layout,
                                  const std::string& reg);

/// Projects `reg` onto basis value `outcome` and drops that register.
Postselection postselect(const StateVector& state, const RegisterLayout& layout,
                         const std::string& reg, std::size_t outcome);

DensityMatrix partial_trace(const StateVector& state, const RegisterLayout& layout,
                            const std::string& keep);
DensityMatrix partial_trace(const DensityMatrix& rho, const RegisterLayout& layout,
                            const std::string& keep);

/// |<a|b>|, insensitive to global phase.
double fidelity(const StateVector& a, const StateVector& b);

}  // namespace qtsvm
