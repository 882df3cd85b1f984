#include "qtsvm/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "qtsvm/errors.hpp"

namespace qtsvm {

namespace {

constexpr double kProjectorTolerance = 1e-9;
constexpr double kUnitaryTolerance = 1e-9;
constexpr double kZeroNorm = 1e-14;

bool is_power_of_two(Eigen::Index n) { return n > 0 && (n & (n - 1)) == 0; }

// Splits a basis index into (register value, remaining bits) and back.
struct RegisterView {
  int shift;
  int width;

  std::size_t local(std::size_t index) const {
    return (index >> shift) & ((std::size_t{1} << width) - 1);
  }
  std::size_t rest(std::size_t index) const {
    const std::size_t low = index & ((std::size_t{1} << shift) - 1);
    return low | ((index >> (shift + width)) << shift);
  }
  std::size_t compose(std::size_t local_value, std::size_t rest_value) const {
    const std::size_t low = rest_value & ((std::size_t{1} << shift) - 1);
    const std::size_t high = rest_value >> shift;
    return low | (local_value << shift) | (high << (shift + width));
  }
};

RegisterView view_of(const RegisterLayout& layout, const std::string& reg) {
  return RegisterView{layout.shift(reg), layout.width(reg)};
}

void check_layout(const StateVector& state, const RegisterLayout& layout) {
  if (layout.num_qubits() != state.num_qubits()) {
    throw DimensionMismatch("register layout does not cover the state");
  }
}

// Rows index the register value, columns the remaining bits.
ComplexMatrix to_register_matrix(const ComplexVector& amps, const RegisterView& v,
                                 int total_qubits) {
  const Eigen::Index rows = Eigen::Index{1} << v.width;
  const Eigen::Index cols = Eigen::Index{1} << (total_qubits - v.width);
  ComplexMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < amps.size(); ++i) {
    const auto idx = static_cast<std::size_t>(i);
    m(static_cast<Eigen::Index>(v.local(idx)), static_cast<Eigen::Index>(v.rest(idx))) =
        amps(i);
  }
  return m;
}

ComplexVector from_register_matrix(const ComplexMatrix& m, const RegisterView& v) {
  ComplexVector amps(m.size());
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      amps(static_cast<Eigen::Index>(v.compose(static_cast<std::size_t>(r),
                                               static_cast<std::size_t>(c)))) = m(r, c);
    }
  }
  return amps;
}

void check_unitary(const ComplexMatrix& u, Eigen::Index dim) {
  if (u.rows() != dim || u.cols() != dim) {
    throw DimensionMismatch("operator dimension does not match target register");
  }
  if (!is_unitary(u, kUnitaryTolerance)) {
    throw NonUnitaryOperator("operator is not unitary within 1e-9");
  }
}

}  // namespace

RegisterLayout::RegisterLayout(std::vector<Register> registers)
    : registers_(std::move(registers)) {
  for (std::size_t i = 0; i < registers_.size(); ++i) {
    if (registers_[i].qubits < 1) {
      throw InvalidSpec("register '" + registers_[i].name + "' needs >= 1 qubit");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (registers_[j].name == registers_[i].name) {
        throw InvalidSpec("duplicate register name '" + registers_[i].name + "'");
      }
    }
    total_ += registers_[i].qubits;
  }
}

bool RegisterLayout::contains(const std::string& name) const {
  return std::any_of(registers_.begin(), registers_.end(),
                     [&](const Register& r) { return r.name == name; });
}

std::size_t RegisterLayout::position(const std::string& name) const {
  for (std::size_t i = 0; i < registers_.size(); ++i) {
    if (registers_[i].name == name) return i;
  }
  throw UnknownRegister("unknown register '" + name + "'");
}

int RegisterLayout::width(const std::string& name) const {
  return registers_[position(name)].qubits;
}

int RegisterLayout::shift(const std::string& name) const {
  int s = 0;
  for (std::size_t i = registers_.size(); i-- > position(name) + 1;) {
    s += registers_[i].qubits;
  }
  return s;
}

RegisterLayout RegisterLayout::without(const std::string& name) const {
  auto regs = registers_;
  regs.erase(regs.begin() + static_cast<std::ptrdiff_t>(position(name)));
  return RegisterLayout(std::move(regs));
}

RegisterLayout RegisterLayout::appended(Register reg) const {
  auto regs = registers_;
  regs.push_back(std::move(reg));
  return RegisterLayout(std::move(regs));
}

StateVector::StateVector(ComplexVector amplitudes) : amplitudes_(std::move(amplitudes)) {
  if (!is_power_of_two(amplitudes_.size()) || amplitudes_.size() < 2) {
    throw DimensionMismatch("state dimension must be a power of two >= 2");
  }
  if (std::abs(amplitudes_.norm() - 1.0) > kNormTolerance) {
    throw ZeroVector("state is not normalized");
  }
  while ((Eigen::Index{1} << num_qubits_) < amplitudes_.size()) ++num_qubits_;
}

StateVector StateVector::basis(int num_qubits, std::size_t index) {
  ComplexVector v = ComplexVector::Zero(Eigen::Index{1} << num_qubits);
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return StateVector(std::move(v));
}

DensityMatrix::DensityMatrix(ComplexMatrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols() || !is_power_of_two(entries_.rows())) {
    throw DimensionMismatch("density matrix must be square with power-of-two dimension");
  }
  if ((entries_ - entries_.adjoint()).cwiseAbs().maxCoeff() > kNormTolerance) {
    throw NonHermitianInput("density matrix is not Hermitian");
  }
  entries_ = (entries_ + entries_.adjoint()) * 0.5;
  if (std::abs(entries_.trace() - Complex(1.0)) > kNormTolerance) {
    throw InvalidSpec("density matrix trace differs from 1");
  }
  const double min_eig =
      Eigen::SelfAdjointEigenSolver<ComplexMatrix>(entries_, Eigen::EigenvaluesOnly)
          .eigenvalues()(0);
  if (min_eig < -kNormTolerance) {
    throw InvalidSpec("density matrix has a negative eigenvalue");
  }
}

DensityMatrix DensityMatrix::pure(const StateVector& state) {
  return DensityMatrix(state.amplitudes() * state.amplitudes().adjoint());
}

ComplexMatrix DensityMatrix::cropped(Eigen::Index size) const {
  return entries_.topLeftCorner(size, size);
}

std::uint64_t ShotCounts::count(std::size_t outcome) const {
  const auto it = counts.find(outcome);
  return it == counts.end() ? 0 : it->second;
}

double ShotCounts::frequency(std::size_t outcome) const {
  return shots == 0 ? 0.0 : static_cast<double>(count(outcome)) / static_cast<double>(shots);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + (stream + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

int qubits_for(Eigen::Index dim) {
  int q = 1;
  while ((Eigen::Index{1} << q) < dim) ++q;
  return q;
}

StateVector normalize_to_state(const ComplexVector& v) {
  const double norm = v.norm();
  if (!(norm > kZeroNorm)) throw ZeroVector("cannot normalize a zero vector");
  ComplexVector padded = ComplexVector::Zero(Eigen::Index{1} << qubits_for(v.size()));
  padded.head(v.size()) = v / norm;
  return StateVector(std::move(padded));
}

StateVector normalize_to_state(const RealVector& v) {
  return normalize_to_state(ComplexVector(v.cast<Complex>()));
}

StateVector tensor(const StateVector& a, const StateVector& b) {
  ComplexVector out(a.dim() * b.dim());
  for (Eigen::Index i = 0; i < a.dim(); ++i) {
    out.segment(i * b.dim(), b.dim()) = a[i] * b.amplitudes();
  }
  return StateVector(std::move(out));
}

StateVector apply_unitary(const StateVector& state, const ComplexMatrix& u) {
  check_unitary(u, state.dim());
  return StateVector(u * state.amplitudes());
}

StateVector apply_unitary(const StateVector& state, const RegisterLayout& layout,
                          const std::string& target, const ComplexMatrix& u) {
  check_layout(state, layout);
  const auto v = view_of(layout, target);
  check_unitary(u, Eigen::Index{1} << v.width);
  const ComplexMatrix m = to_register_matrix(state.amplitudes(), v, state.num_qubits());
  return StateVector(from_register_matrix(u * m, v));
}

StateVector apply_controlled_unitary(const StateVector& state,
                                     const RegisterLayout& layout,
                                     const std::string& control, int control_bit,
                                     const std::string& target,
                                     const ComplexMatrix& u) {
  check_layout(state, layout);
  if (control == target) throw InvalidSpec("control and target must differ");
  if (control_bit < 0 || control_bit >= layout.width(control)) {
    throw InvalidSpec("control bit outside the control register");
  }
  const auto v = view_of(layout, target);
  check_unitary(u, Eigen::Index{1} << v.width);
  const std::size_t control_mask = std::size_t{1} << (layout.shift(control) + control_bit);

  ComplexMatrix m = to_register_matrix(state.amplitudes(), v, state.num_qubits());
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    if (v.compose(0, static_cast<std::size_t>(c)) & control_mask) {
      m.col(c) = u * m.col(c);
    }
  }
  return StateVector(from_register_matrix(m, v));
}

ComplexMatrix hadamard_transform(int k) {
  const Eigen::Index dim = Eigen::Index{1} << k;
  const double scale = 1.0 / std::sqrt(static_cast<double>(dim));
  ComplexMatrix h(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) {
      const int parity = __builtin_popcountll(static_cast<unsigned long long>(i & j)) & 1;
      h(i, j) = parity ? -scale : scale;
    }
  }
  return h;
}

StateVector fourier_transform(const StateVector& state, const RegisterLayout& layout,
                              const std::string& reg, bool inverse) {
  check_layout(state, layout);
  const auto v = view_of(layout, reg);
  const Eigen::Index n = Eigen::Index{1} << v.width;
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  const double sign = inverse ? -1.0 : 1.0;
  // Built from a twiddle table; unitary by construction, so not re-checked.
  ComplexVector twiddle(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    twiddle(k) = std::polar(scale, sign * 2.0 * std::numbers::pi * static_cast<double>(k) /
                                       static_cast<double>(n));
  }
  ComplexMatrix f(n, n);
  for (Eigen::Index y = 0; y < n; ++y) {
    for (Eigen::Index x = 0; x < n; ++x) f(y, x) = twiddle((x * y) % n);
  }
  const ComplexMatrix m = to_register_matrix(state.amplitudes(), v, state.num_qubits());
  return StateVector(from_register_matrix(f * m, v));
}

StateVector walsh_hadamard(const StateVector& state, const RegisterLayout& layout,
                           const std::string& reg) {
  check_layout(state, layout);
  const auto v = view_of(layout, reg);
  // In-place butterflies, one per qubit of the register.
  ComplexVector amps = state.amplitudes();
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int q = 0; q < v.width; ++q) {
    const std::size_t bit = std::size_t{1} << (v.shift + q);
    for (std::size_t i = 0; i < static_cast<std::size_t>(amps.size()); ++i) {
      if (i & bit) continue;
      const auto lo = static_cast<Eigen::Index>(i);
      const auto hi = static_cast<Eigen::Index>(i | bit);
      const Complex a = amps(lo);
      const Complex b = amps(hi);
      amps(lo) = (a + b) * inv_sqrt2;
      amps(hi) = (a - b) * inv_sqrt2;
    }
  }
  return StateVector(std::move(amps));
}

ShotCounts sample_counts(const RealVector& probabilities, std::uint64_t shots,
                         std::uint64_t seed) {
  ShotCounts out;
  out.shots = shots;
  out.seed = seed;
  std::mt19937_64 rng(seed);
  std::uint64_t remaining = shots;
  double mass = probabilities.cwiseMax(0.0).sum();
  for (Eigen::Index i = 0; i < probabilities.size() && remaining > 0; ++i) {
    const double p = std::max(probabilities(i), 0.0);
    std::uint64_t k = 0;
    if (p >= mass || i + 1 == probabilities.size()) {
      k = remaining;
    } else if (p > 0.0) {
      std::binomial_distribution<long long> draw(static_cast<long long>(remaining), p / mass);
      k = static_cast<std::uint64_t>(draw(rng));
    }
    mass -= p;
    remaining -= k;
    if (k > 0) out.counts[static_cast<std::size_t>(i)] = k;
  }
  return out;
}

MeasurementResult measure_projective(const StateVector& state,
                                     const std::vector<ComplexMatrix>& projectors,
                                     std::uint64_t shots, std::uint64_t seed) {
  const Eigen::Index dim = state.dim();
  if (projectors.empty()) throw InvalidProjectorSet("no projectors given");
  ComplexMatrix total = ComplexMatrix::Zero(dim, dim);
  for (std::size_t i = 0; i < projectors.size(); ++i) {
    const auto& p = projectors[i];
    if (p.rows() != dim || p.cols() != dim) {
      throw InvalidProjectorSet("projector dimension does not match state");
    }
    for (std::size_t j = 0; j < projectors.size(); ++j) {
      const ComplexMatrix expected = i == j ? p : ComplexMatrix::Zero(dim, dim);
      if ((p * projectors[j] - expected).cwiseAbs().maxCoeff() > kProjectorTolerance) {
        throw InvalidProjectorSet("projectors are not mutually orthogonal projections");
      }
    }
    total += p;
  }
  if ((total - ComplexMatrix::Identity(dim, dim)).cwiseAbs().maxCoeff() > kProjectorTolerance) {
    throw InvalidProjectorSet("projectors do not sum to identity");
  }

  MeasurementResult out;
  out.probabilities.resize(static_cast<Eigen::Index>(projectors.size()));
  for (std::size_t i = 0; i < projectors.size(); ++i) {
    const ComplexVector projected = projectors[i] * state.amplitudes();
    const double p = std::max(0.0, projected.squaredNorm());
    out.probabilities(static_cast<Eigen::Index>(i)) = p;
    if (p > kZeroNorm) {
      out.post_states.emplace_back(StateVector(projected / std::sqrt(p)));
    } else {
      out.post_states.emplace_back(std::nullopt);
    }
  }
  out.counts = sample_counts(out.probabilities, shots, seed);
  return out;
}

RealVector register_probabilities(const StateVector& state, const RegisterLayout& layout,
                                  const std::string& reg) {
  check_layout(state, layout);
  const auto v = view_of(layout, reg);
  RealVector probs = RealVector::Zero(Eigen::Index{1} << v.width);
  for (Eigen::Index i = 0; i < state.dim(); ++i) {
    probs(static_cast<Eigen::Index>(v.local(static_cast<std::size_t>(i)))) +=
        std::norm(state[i]);
  }
  return probs;
}

Postselection postselect(const StateVector& state, const RegisterLayout& layout,
                         const std::string& reg, std::size_t outcome) {
  check_layout(state, layout);
  const auto v = view_of(layout, reg);
  if (outcome >= (std::size_t{1} << v.width)) {
    throw InvalidSpec("postselection outcome outside register range");
  }
  Postselection out;
  out.layout = layout.without(reg);
  const ComplexMatrix m = to_register_matrix(state.amplitudes(), v, state.num_qubits());
  const ComplexVector branch = m.row(static_cast<Eigen::Index>(outcome)).transpose();
  out.probability = branch.squaredNorm();
  if (out.probability > kZeroNorm * kZeroNorm) {
    out.state.emplace(ComplexVector(branch / std::sqrt(out.probability)));
  }
  return out;
}

DensityMatrix partial_trace(const StateVector& state, const RegisterLayout& layout,
                            const std::string& keep) {
  check_layout(state, layout);
  const auto v = view_of(layout, keep);
  const ComplexMatrix m = to_register_matrix(state.amplitudes(), v, state.num_qubits());
  return DensityMatrix(m * m.adjoint());
}

DensityMatrix partial_trace(const DensityMatrix& rho, const RegisterLayout& layout,
                            const std::string& keep) {
  if (rho.dim() != (Eigen::Index{1} << layout.num_qubits())) {
    throw DimensionMismatch("register layout does not cover the density matrix");
  }
  const auto v = view_of(layout, keep);
  const Eigen::Index kept = Eigen::Index{1} << v.width;
  const std::size_t rest_dim = static_cast<std::size_t>(rho.dim() / kept);
  ComplexMatrix out = ComplexMatrix::Zero(kept, kept);
  for (Eigen::Index a = 0; a < kept; ++a) {
    for (Eigen::Index b = 0; b < kept; ++b) {
      Complex acc = 0.0;
      for (std::size_t r = 0; r < rest_dim; ++r) {
        acc += rho.entries()(static_cast<Eigen::Index>(v.compose(static_cast<std::size_t>(a), r)),
                             static_cast<Eigen::Index>(v.compose(static_cast<std::size_t>(b), r)));
      }
      out(a, b) = acc;
    }
  }
  return DensityMatrix(std::move(out));
}

double fidelity(const StateVector& a, const StateVector& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("states have different dimensions");
  return std::min(1.0, std::abs(a.amplitudes().dot(b.amplitudes())));
}

}  // namespace qtsvm
