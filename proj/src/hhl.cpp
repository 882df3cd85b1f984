#include "qtsvm/hhl.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "qtsvm/errors.hpp"

namespace qtsvm {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kSupportWeight = 1e-12;
constexpr double kSingularEigenvalue = 1e-12;

HermitianMatrix padded(const HermitianMatrix& h, Eigen::Index dim) {
  if (h.dim() == dim) return h;
  if (h.dim() > dim) throw DimensionMismatch("Hamiltonian larger than data register");
  ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
  out.topLeftCorner(h.dim(), h.dim()) = h.entries();
  return HermitianMatrix(out);
}

double clock_time(const HHLConfig& config, int bit) {
  return config.t0 * std::ldexp(1.0, bit);
}

void validate(const HHLConfig& config) {
  if (config.clock_qubits < 1) throw InvalidSpec("clock_qubits must be >= 1");
  if (!(config.t0 > 0.0)) throw InvalidSpec("t0 must be positive");
  if (!(config.inversion_constant > 0.0)) throw InvalidSpec("inversion constant must be positive");
  if (!(config.eigenvalue_cutoff >= 0.0)) throw InvalidSpec("cutoff must be non-negative");
  if (config.trotter_steps_per_unit < 1) throw InvalidSpec("trotter steps per unit must be >= 1");
}

void add(GateCounts& counts, const std::string& gate, std::uint64_t n) {
  if (n > 0) counts[gate] += n;
}

// Hadamards, controlled powers and Fourier transform, or their inverse.
StateVector phase_kickback(StateVector state, const RegisterLayout& layout,
                           const Evolution& evolution, const HHLConfig& config,
                           bool inverse) {
  const int q = config.clock_qubits;
  if (!inverse) {
    state = walsh_hadamard(state, layout, kClockRegister);
    for (int j = 0; j < q; ++j) {
      state = apply_controlled_unitary(state, layout, kClockRegister, j, kDataRegister,
                                       evolution.unitary(clock_time(config, j)));
    }
    return fourier_transform(state, layout, kClockRegister);
  }
  state = fourier_transform(state, layout, kClockRegister, true);
  for (int j = q - 1; j >= 0; --j) {
    state = apply_controlled_unitary(state, layout, kClockRegister, j, kDataRegister,
                                     evolution.unitary(clock_time(config, j)).adjoint());
  }
  return walsh_hadamard(state, layout, kClockRegister);
}

GateCounts phase_estimation_gates(const Evolution& evolution, const HHLConfig& config) {
  const auto q = static_cast<std::uint64_t>(config.clock_qubits);
  GateCounts counts;
  add(counts, "hadamard", q);
  add(counts, "qft_hadamard", q);
  add(counts, "controlled_phase", q * (q - 1) / 2);
  add(counts, "swap", q / 2);
  for (int j = 0; j < config.clock_qubits; ++j) {
    if (evolution.trotterized()) {
      // Two controlled exponentials per Trotter step.
      add(counts, "controlled_trotter_factor",
          2 * static_cast<std::uint64_t>(evolution.steps_for(clock_time(config, j))));
    } else {
      add(counts, "controlled_evolution", 1);
    }
  }
  return counts;
}

}  // namespace

double HHLConfig::decoded_eigenvalue(std::size_t k) const {
  return kTwoPi * static_cast<double>(k) / (std::ldexp(1.0, clock_qubits) * t0);
}

HHLConfig default_hhl_config(const HermitianMatrix& h_hat, int clock_qubits,
                             Eigen::Index support_dim) {
  if (support_dim < 0) support_dim = h_hat.dim();
  const HermitianMatrix block(
      ComplexMatrix(h_hat.entries().topLeftCorner(support_dim, support_dim)));
  const RealVector ev = eigh(block).eigenvalues;
  const double lambda_max = ev(ev.size() - 1);
  if (!(lambda_max > 0.0)) throw SingularSystem("Hamiltonian has no positive eigenvalue");

  HHLConfig config;
  config.clock_qubits = clock_qubits;
  config.t0 = std::numbers::pi / lambda_max;
  const double resolution = config.decoded_eigenvalue(1);
  config.eigenvalue_cutoff = 0.5 * resolution;
  config.inversion_constant = ev(0) > kSingularEigenvalue ? 0.9 * ev(0) : resolution;
  return config;
}

Evolution::Evolution(HermitianMatrix h, std::optional<HamiltonianPair> pair, Side which,
                     int steps_per_unit)
    : hamiltonian_(std::move(h)),
      pair_(std::move(pair)),
      which_(which),
      steps_per_unit_(steps_per_unit) {}

Evolution Evolution::exact(const HermitianMatrix& h) {
  return Evolution(h, std::nullopt, Side::kFirst, 1);
}

Evolution Evolution::trotterized(const HamiltonianPair& pair, Side which,
                                 int steps_per_unit) {
  if (steps_per_unit < 1) throw InvalidSpec("trotter steps per unit must be >= 1");
  return Evolution(pair.hamiltonian(which), pair, which, steps_per_unit);
}

int Evolution::steps_for(double t) const {
  if (!pair_) return 1;
  return std::max(1, static_cast<int>(std::ceil(steps_per_unit_ * std::abs(t) - 1e-9)));
}

ComplexMatrix Evolution::unitary(double t) const {
  if (!pair_) return matrix_exp_unitary(hamiltonian_, t);
  return simulate_evolution(*pair_, which_, TrotterConfig{t, steps_for(t)});
}

RegisterState phase_estimation(const Evolution& evolution, const StateVector& b_state,
                               const HHLConfig& config) {
  validate(config);
  const int data_qubits = b_state.num_qubits();
  if (config.clock_qubits + data_qubits > config.max_qubits) {
    throw QubitCapExceeded("phase estimation needs " +
                           std::to_string(config.clock_qubits + data_qubits) +
                           " qubits, cap is " + std::to_string(config.max_qubits));
  }
  const HermitianMatrix& h = evolution.hamiltonian();
  if (h.dim() > b_state.dim()) throw DimensionMismatch("Hamiltonian larger than data register");
  const RealVector ev = eigh(h).eigenvalues;
  if (ev(ev.size() - 1) * config.t0 >= kTwoPi || ev(0) * config.t0 <= -kTwoPi) {
    throw PhaseWraparound("lambda * t0 reaches 2 pi; eigenphases would alias");
  }
  const Evolution padded_evolution =
      evolution.trotterized() || h.dim() == b_state.dim()
          ? evolution
          : Evolution::exact(padded(h, b_state.dim()));
  if (evolution.trotterized() && h.dim() != b_state.dim()) {
    throw DimensionMismatch("Trotterized Hamiltonian must match the data register");
  }

  RegisterLayout layout({{kClockRegister, config.clock_qubits}, {kDataRegister, data_qubits}});
  StateVector state = tensor(StateVector::basis(config.clock_qubits, 0), b_state);
  return RegisterState{phase_kickback(state, layout, padded_evolution, config, false), layout};
}

RegisterState phase_estimation(const HermitianMatrix& h_hat, const StateVector& b_state,
                               const HHLConfig& config) {
  return phase_estimation(Evolution::exact(h_hat), b_state, config);
}

RegisterState eigenvalue_inversion(const RegisterState& joint, const HHLConfig& config) {
  validate(config);
  const RegisterLayout layout = joint.layout.appended({kAncillaRegister, 1});
  const int clock_shift = joint.layout.shift(kClockRegister);
  const std::size_t clock_mask = (std::size_t{1} << config.clock_qubits) - 1;

  const ComplexVector& in = joint.state.amplitudes();
  ComplexVector out = ComplexVector::Zero(2 * in.size());
  for (Eigen::Index i = 0; i < in.size(); ++i) {
    const std::size_t k = (static_cast<std::size_t>(i) >> clock_shift) & clock_mask;
    const double lambda = config.decoded_eigenvalue(k);
    double one = 0.0;
    if (lambda >= config.eigenvalue_cutoff && lambda > 0.0) {
      one = std::min(1.0, config.inversion_constant / lambda);
    }
    out(2 * i) = in(i) * std::sqrt(1.0 - one * one);
    out(2 * i + 1) = in(i) * one;
  }
  return RegisterState{StateVector(std::move(out)), layout};
}

HHLResult solve_qls(const Evolution& evolution, const StateVector& b_state,
                    const HHLConfig& config, std::uint64_t seed) {
  validate(config);
  const int total = config.clock_qubits + b_state.num_qubits() + 1;
  if (total > config.max_qubits) {
    throw QubitCapExceeded("linear-system solve needs " + std::to_string(total) +
                           " qubits, cap is " + std::to_string(config.max_qubits));
  }

  // Weight of b outside the cutoff eigenspace.
  const HermitianMatrix h = padded(evolution.hamiltonian(), b_state.dim());
  const auto dec = eigh(h);
  double support = 0.0;
  for (Eigen::Index j = 0; j < dec.eigenvalues.size(); ++j) {
    if (dec.eigenvalues(j) >= config.eigenvalue_cutoff && dec.eigenvalues(j) > 0.0) {
      support += std::norm(dec.eigenvectors.col(j).dot(b_state.amplitudes()));
    }
  }
  if (support <= kSupportWeight) {
    throw SingularOnSupport("right-hand side lies in the cutoff eigenspace");
  }

  const RegisterState estimated = phase_estimation(evolution, b_state, config);
  const RegisterState inverted = eigenvalue_inversion(estimated, config);
  const Evolution& kick =
      evolution.trotterized() || evolution.hamiltonian().dim() == b_state.dim()
          ? evolution
          : Evolution::exact(h);
  const StateVector uncomputed =
      phase_kickback(inverted.state, inverted.layout, kick, config, true);

  const Postselection ancilla = postselect(uncomputed, inverted.layout, kAncillaRegister, 1);
  if (!ancilla.state) throw SingularOnSupport("ancilla never flips: nothing inverted");
  const Postselection clock = postselect(*ancilla.state, ancilla.layout, kClockRegister, 0);
  if (!clock.state) throw SingularOnSupport("clock register never returns to zero");

  HHLResult result{*clock.state};
  result.ancilla_probability = ancilla.probability;
  result.clock_return_probability = clock.probability;
  result.success_probability = ancilla.probability * clock.probability;
  std::mt19937_64 rng(seed);
  result.repetitions =
      std::geometric_distribution<std::uint64_t>(std::min(1.0, result.success_probability))(rng) +
      1;
  result.clock_qubits = config.clock_qubits;
  result.data_qubits = b_state.num_qubits();

  const GateCounts forward = phase_estimation_gates(evolution, config);
  for (const auto& [gate, n] : forward) add(result.gate_counts, gate, 2 * n);
  add(result.gate_counts, "uniformly_controlled_rotation", 1);
  add(result.gate_counts, "measurement", 1 + static_cast<std::uint64_t>(config.clock_qubits));
  return result;
}

HHLResult solve_qls(const HermitianMatrix& h_hat, const StateVector& b_state,
                    const HHLConfig& config, std::uint64_t seed) {
  return solve_qls(Evolution::exact(h_hat), b_state, config, seed);
}

int required_qubits(const Dataset& data, int clock_qubits) {
  const int data_qubits = qubits_for(data.features() + 1);
  const int index_qubits =
      std::max(qubits_for(data.positive().rows()), qubits_for(data.negative().rows()));
  return std::max({clock_qubits + data_qubits + 1, data_qubits + index_qubits,
                   2 * data_qubits + 1});
}

namespace {

SideReport solve_side(const HamiltonianPair& pair, Side which, PreparedInput input,
                      Eigen::Index support_dim, const QuantumTrainConfig& config,
                      std::uint64_t seed) {
  const HermitianMatrix& h = pair.hamiltonian(which);
  HHLConfig hhl = default_hhl_config(h, config.clock_qubits, support_dim);
  hhl.max_qubits = config.max_qubits;
  hhl.use_trotter = config.use_trotter;
  hhl.trotter_steps_per_unit = config.trotter_steps_per_unit;
  if (config.t0) {
    hhl.t0 = *config.t0;
    hhl.eigenvalue_cutoff = 0.5 * hhl.decoded_eigenvalue(1);
  }
  if (config.inversion_constant) hhl.inversion_constant = *config.inversion_constant;

  double kappa = std::numeric_limits<double>::infinity();
  try {
    kappa = condition_number(
        HermitianMatrix(ComplexMatrix(h.entries().topLeftCorner(support_dim, support_dim))));
  } catch (const SingularSystem&) {
  }

  const Evolution evolution =
      hhl.use_trotter ? Evolution::trotterized(pair, which, hhl.trotter_steps_per_unit)
                      : Evolution::exact(h);
  HHLResult solve = solve_qls(evolution, input.state, hhl, seed);
  return SideReport{std::move(input), std::move(solve), hhl, kappa};
}

}  // namespace

QuantumTraining train_quantum(const Dataset& data, double c1, double c2,
                              const QuantumTrainConfig& config, std::uint64_t seed) {
  const int needed = required_qubits(data, config.clock_qubits);
  if (needed > config.max_qubits) {
    throw QubitCapExceeded("pipeline needs " + std::to_string(needed) +
                           " qubits, cap is " + std::to_string(config.max_qubits));
  }
  const AugmentedMatrices aug = build_augmented(data, c1, c2);

  const ChiState chi_f = build_chi(aug.F);
  const ChiState chi_e = build_chi(aug.E);
  PreparedInput in_f = postselect_input_state(chi_f, derive_seed(seed, 0));
  PreparedInput in_e = postselect_input_state(chi_e, derive_seed(seed, 1));

  const HamiltonianPair pair =
      assemble_hamiltonians(prepare_density_k(aug.E), prepare_density_k(aug.F),
                            aug.E.squaredNorm(), aug.F.squaredNorm(), c1, c2);

  const Eigen::Index support = data.features() + 1;
  SideReport side1 =
      solve_side(pair, Side::kFirst, std::move(in_f), support, config, derive_seed(seed, 2));
  SideReport side2 =
      solve_side(pair, Side::kSecond, std::move(in_e), support, config, derive_seed(seed, 3));

  QuantumTraining out{side1.solve.solution_state, side2.solve.solution_state,
                      std::move(side1), std::move(side2)};
  out.data_qubits = chi_f.layout.width(kDataRegister);
  out.positive_index_qubits = chi_e.layout.width(kIndexRegister);
  out.negative_index_qubits = chi_f.layout.width(kIndexRegister);
  out.peak_qubits = needed;
  return out;
}

}  // namespace qtsvm
