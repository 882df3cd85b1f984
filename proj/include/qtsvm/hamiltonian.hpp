#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "qtsvm/quantum.hpp"

namespace qtsvm {

enum class Side { kFirst = 1, kSecond = 2 };

/// Trace-normalized twin Hamiltonians
///   H1 = K1/c1 + K2,  H2 = K1 + K2/c2,  H_hat = H / tr(H),
/// rebuilt from the normalized Gram operators K_hat = K / tr(K) and the traces.
struct HamiltonianPair {
  HermitianMatrix k1_hat;
  HermitianMatrix k2_hat;
  HermitianMatrix h1_hat;
  HermitianMatrix h2_hat;
  double tr_k1 = 0.0;
  double tr_k2 = 0.0;
  double tr_h1 = 0.0;
  double tr_h2 = 0.0;
  double c1 = 1.0;
  double c2 = 1.0;

  const HermitianMatrix& hamiltonian(Side which) const {
    return which == Side::kFirst ? h1_hat : h2_hat;
  }
  /// Coefficients (on K1_hat, on K2_hat) with H_hat = a K1_hat + b K2_hat.
  std::pair<double, double> weights(Side which) const;
};

HamiltonianPair assemble_hamiltonians(const DensityMatrix& k1_hat,
                                      const DensityMatrix& k2_hat, double tr_k1,
                                      double tr_k2, double c1, double c2);

struct TrotterConfig {
  double total_time = 1.0;
  int steps = 1;

  double step_size() const { return total_time / steps; }
};

/// e^{-i a K1_hat dt} e^{-i b K2_hat dt}, K1 factor on the left.
ComplexMatrix trotter_step(const HamiltonianPair& pair, Side which, double dt);

/// `steps` repetitions of trotter_step approximating e^{-i H_hat t0}.
ComplexMatrix simulate_evolution(const HamiltonianPair& pair, Side which,
                                 const TrotterConfig& config);

struct TrotterErrorRow {
  int steps = 1;
  double step_size = 0.0;
  double single_step_error = 0.0;  // ||trotter_step(dt) - e^{-iH dt}||
  double total_error = 0.0;        // ||simulate_evolution - e^{-iH t0}||
};

struct TrotterErrorReport {
  std::vector<TrotterErrorRow> rows;
  bool commuting = false;  // every single-step error below 1e-11
  /// Least-squares slope of log(single-step error) against log(dt); empty
  /// for commuting pairs.
  std::optional<double> single_step_slope;
  /// total_error(T) / total_error(2T) for each consecutive doubling in the list.
  std::vector<double> doubling_ratios;
};

TrotterErrorReport trotter_error_report(const HamiltonianPair& pair, Side which,
                                        double total_time,
                                        const std::vector<int>& steps_list);

/// Slope of the least-squares line through (log x, log y).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace qtsvm
