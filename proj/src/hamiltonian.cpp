#include "qtsvm/hamiltonian.hpp"

#include <algorithm>
#include <cmath>

#include "qtsvm/errors.hpp"

namespace qtsvm {

namespace {

constexpr double kCommutingError = 1e-11;

HermitianMatrix mix(const HermitianMatrix& a, double wa, const HermitianMatrix& b,
                    double wb) {
  return HermitianMatrix(ComplexMatrix(wa * a.entries() + wb * b.entries()));
}

}  // namespace

std::pair<double, double> HamiltonianPair::weights(Side which) const {
  if (which == Side::kFirst) return {tr_k1 / (c1 * tr_h1), tr_k2 / tr_h1};
  return {tr_k1 / tr_h2, tr_k2 / (c2 * tr_h2)};
}

HamiltonianPair assemble_hamiltonians(const DensityMatrix& k1_hat,
                                      const DensityMatrix& k2_hat, double tr_k1,
                                      double tr_k2, double c1, double c2) {
  if (!(c1 > 0.0) || !(c2 > 0.0)) throw InvalidPenalty("penalties must be positive");
  if (!(tr_k1 > 0.0) || !(tr_k2 > 0.0)) throw InvalidSpec("traces must be positive");
  if (k1_hat.dim() != k2_hat.dim()) {
    throw DimensionMismatch("Gram operators have different dimensions");
  }
  const HermitianMatrix k1(k1_hat.entries());
  const HermitianMatrix k2(k2_hat.entries());
  const double tr_h1 = tr_k1 / c1 + tr_k2;
  const double tr_h2 = tr_k1 + tr_k2 / c2;
  return HamiltonianPair{k1,
                         k2,
                         mix(k1, tr_k1 / (c1 * tr_h1), k2, tr_k2 / tr_h1),
                         mix(k1, tr_k1 / tr_h2, k2, tr_k2 / (c2 * tr_h2)),
                         tr_k1,
                         tr_k2,
                         tr_h1,
                         tr_h2,
                         c1,
                         c2};
}

ComplexMatrix trotter_step(const HamiltonianPair& pair, Side which, double dt) {
  const auto [a, b] = pair.weights(which);
  return matrix_exp_unitary(pair.k1_hat, a * dt) * matrix_exp_unitary(pair.k2_hat, b * dt);
}

ComplexMatrix simulate_evolution(const HamiltonianPair& pair, Side which,
                                 const TrotterConfig& config) {
  if (config.steps < 1) throw InvalidSpec("Trotter steps must be >= 1");
  if (!(config.total_time >= 0.0)) throw InvalidSpec("evolution time must be >= 0");
  const ComplexMatrix step = trotter_step(pair, which, config.step_size());
  ComplexMatrix out = ComplexMatrix::Identity(step.rows(), step.cols());
  for (int s = 0; s < config.steps; ++s) out = step * out;
  return out;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const auto n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

TrotterErrorReport trotter_error_report(const HamiltonianPair& pair, Side which,
                                        double total_time,
                                        const std::vector<int>& steps_list) {
  if (steps_list.empty()) throw InvalidSpec("steps list is empty");
  const HermitianMatrix& h = pair.hamiltonian(which);
  const ComplexMatrix exact_total = matrix_exp_unitary(h, total_time);

  TrotterErrorReport report;
  for (int steps : steps_list) {
    const TrotterConfig config{total_time, steps};
    TrotterErrorRow row;
    row.steps = steps;
    row.step_size = config.step_size();
    row.single_step_error = operator_norm(trotter_step(pair, which, row.step_size) -
                                          matrix_exp_unitary(h, row.step_size));
    row.total_error = operator_norm(simulate_evolution(pair, which, config) - exact_total);
    report.rows.push_back(row);
  }

  report.commuting = std::all_of(report.rows.begin(), report.rows.end(), [](const auto& r) {
    return r.single_step_error < kCommutingError;
  });
  if (!report.commuting && report.rows.size() >= 2) {
    std::vector<double> dts, errs;
    for (const auto& r : report.rows) {
      if (r.single_step_error > 0.0) {
        dts.push_back(r.step_size);
        errs.push_back(r.single_step_error);
      }
    }
    if (dts.size() >= 2) report.single_step_slope = loglog_slope(dts, errs);
  }
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    for (std::size_t j = 0; j < report.rows.size(); ++j) {
      if (report.rows[j].steps == 2 * report.rows[i].steps && report.rows[j].total_error > 0.0) {
        report.doubling_ratios.push_back(report.rows[i].total_error / report.rows[j].total_error);
      }
    }
  }
  return report;
}

}  // namespace qtsvm
