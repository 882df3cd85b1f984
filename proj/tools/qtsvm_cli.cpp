// qtsvm: train, predict, compare and sweep LS-TSVM models, classically or on
// the statevector simulation of the quantum pipeline.

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qtsvm/errors.hpp"
#include "qtsvm/pipeline.hpp"

namespace {

struct Flags {
  qtsvm::RunConfig config;
  std::optional<std::uint64_t> seed;
  std::optional<double> t0;
  std::optional<int> trotter_steps;
  bool exact_evolution = false;
};

void add_run_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--c1", f.config.c1, "penalty c1 (> 0)")->capture_default_str();
  cmd->add_option("--c2", f.config.c2, "penalty c2 (> 0)")->capture_default_str();
  cmd->add_option("--ridge", f.config.ridge, "ridge added to H1 and H2")->capture_default_str();
  cmd->add_option("--clock-qubits", f.config.clock_qubits, "phase-estimation clock qubits")
      ->capture_default_str();
  cmd->add_option("--t0", f.t0, "evolution time (default: lambda_max * t0 = pi)");
  cmd->add_option("--trotter-steps", f.trotter_steps,
                  "Trotter steps per unit evolution time (default: exact evolution)");
  cmd->add_flag("--exact-evolution", f.exact_evolution, "use exact e^{-iHt}");
  cmd->add_option("--shots", f.config.shots, "shots per estimate")->capture_default_str();
  cmd->add_option("--seed", f.seed, "RNG seed (fallback: $QTSVM_SEED, then 7)");
  cmd->add_option("--max-qubits", f.config.max_qubits, "simulated qubit cap")
      ->capture_default_str();
  cmd->add_flag("--exact-probabilities", f.config.exact_probabilities,
                "predict from exact outcome probabilities instead of shots");
}

qtsvm::RunConfig finish(const Flags& f) {
  qtsvm::RunConfig c = f.config;
  c.seed = qtsvm::resolve_seed(f.seed);
  c.t0 = f.t0;
  c.trotter_steps = f.exact_evolution ? std::nullopt : f.trotter_steps;
  return c;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Least-squares twin SVM: classical solver and quantum-circuit simulation"};
  app.require_subcommand(1);

  Flags flags;
  std::string mode = "classical";
  std::string dataset, model, samples, output, report_dir = "error_report";

  auto* train = app.add_subcommand("train", "train a model from a labeled CSV");
  train->add_option("dataset", dataset, "CSV with label,x0,x1,...")->required();
  train->add_option("--mode", mode, "classical | quantum-sim")->capture_default_str();
  train->add_option("--output,-o", output, "model JSON path")->required();
  add_run_flags(train, flags);

  auto* predict = app.add_subcommand("predict", "label samples with a trained model");
  predict->add_option("model", model, "model JSON")->required();
  predict->add_option("samples", samples, "CSV of samples (optional label column)")->required();
  predict->add_option("--mode", mode, "classical | quantum-sim")->capture_default_str();
  predict->add_option("--output,-o", output, "write CSV here instead of stdout");
  add_run_flags(predict, flags);

  auto* cmp = app.add_subcommand("compare", "classical vs simulated-quantum agreement report");
  cmp->add_option("dataset", dataset, "training CSV")->required();
  cmp->add_option("--samples", samples, "test points (default: training points)");
  add_run_flags(cmp, flags);

  qtsvm::ErrorSweep sweep;
  std::string trotter_list, clock_list, shot_list;
  auto* err = app.add_subcommand("error-report", "Trotter, clock and shot error sweeps");
  err->add_option("dataset", dataset, "training CSV")->required();
  err->add_option("--output,-o", report_dir, "directory for CSV tables")->capture_default_str();
  err->add_option("--trotter-time", sweep.trotter_time, "t0 of the Trotter sweep")
      ->capture_default_str();
  err->add_option("--trotter-list", trotter_list, "comma-separated Trotter step counts");
  err->add_option("--clock-list", clock_list, "comma-separated clock sizes");
  err->add_option("--shots-list", shot_list, "comma-separated shot counts");
  err->add_option("--trials", sweep.trials, "SWAP tests per shot count")->capture_default_str();
  add_run_flags(err, flags);

  qtsvm::SynthSpec spec = qtsvm::crossplanes_spec(16, 16, 0.05, 0);
  std::string normal1 = "1,-1", normal2 = "1,1";
  std::optional<std::uint64_t> gen_seed;
  auto* gen = app.add_subcommand("datagen", "write a synthetic crossing-planes CSV");
  gen->add_option("--m1", spec.m1, "positive samples")->capture_default_str();
  gen->add_option("--m2", spec.m2, "negative samples")->capture_default_str();
  gen->add_option("--noise", spec.noise_sigma, "Gaussian noise sigma")->capture_default_str();
  gen->add_option("--span", spec.span, "sampling half-width")->capture_default_str();
  gen->add_option("--normal1", normal1, "normal of plane 1")->capture_default_str();
  gen->add_option("--offset1", spec.plane1.offset, "offset of plane 1")->capture_default_str();
  gen->add_option("--normal2", normal2, "normal of plane 2")->capture_default_str();
  gen->add_option("--offset2", spec.plane2.offset, "offset of plane 2")->capture_default_str();
  gen->add_option("--seed", gen_seed, "RNG seed (fallback: $QTSVM_SEED, then 7)");
  gen->add_option("--output,-o", output, "CSV path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (train->parsed()) {
      return qtsvm::cmd_train(dataset, qtsvm::parse_mode(mode), finish(flags), output, std::cout,
                              std::cerr);
    }
    if (predict->parsed()) {
      std::optional<std::filesystem::path> out;
      if (!output.empty()) out = output;
      return qtsvm::cmd_predict(model, samples, qtsvm::parse_mode(mode), finish(flags), out,
                                std::cout, std::cerr);
    }
    if (cmp->parsed()) {
      std::optional<std::filesystem::path> test;
      if (!samples.empty()) test = samples;
      return qtsvm::cmd_compare(dataset, finish(flags), test, std::cout, std::cerr);
    }
    if (err->parsed()) {
      if (!trotter_list.empty()) {
        sweep.trotter_steps.clear();
        for (double v : parse_list(trotter_list)) sweep.trotter_steps.push_back(static_cast<int>(v));
      }
      if (!clock_list.empty()) {
        sweep.clock_qubits.clear();
        for (double v : parse_list(clock_list)) sweep.clock_qubits.push_back(static_cast<int>(v));
      }
      if (!shot_list.empty()) {
        sweep.shots.clear();
        for (double v : parse_list(shot_list)) sweep.shots.push_back(static_cast<std::uint64_t>(v));
      }
      return qtsvm::cmd_error_report(dataset, finish(flags), sweep, report_dir, std::cout, std::cerr);
    }
    if (gen->parsed()) {
      const auto n1 = parse_list(normal1);
      const auto n2 = parse_list(normal2);
      spec.plane1.normal = Eigen::Map<const qtsvm::RealVector>(n1.data(), static_cast<Eigen::Index>(n1.size()));
      spec.plane2.normal = Eigen::Map<const qtsvm::RealVector>(n2.data(), static_cast<Eigen::Index>(n2.size()));
      spec.n = spec.plane1.normal.size();
      spec.seed = qtsvm::resolve_seed(gen_seed);
      std::optional<std::filesystem::path> out;
      if (!output.empty()) out = output;
      return qtsvm::cmd_datagen(spec, out, std::cout, std::cerr);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: invalid list value: " << e.what() << '\n';
    return qtsvm::kExitFailure;
  } catch (const std::exception& e) {
    return qtsvm::report_failure(e, std::cerr);
  }
  return qtsvm::kExitFailure;
}
