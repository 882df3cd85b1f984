#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qtsvm/classical.hpp"
#include "qtsvm/datagen.hpp"
#include "qtsvm/hhl.hpp"
#include "qtsvm/swap_predict.hpp"

namespace qtsvm {

inline constexpr std::uint64_t kDefaultSeed = 7;
inline constexpr int kModelVersion = 1;

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitParse = 2,
  kExitNumerical = 3,
  kExitQubitCap = 4,
  kExitDimension = 5,
};

struct RunConfig {
  double c1 = 1.0;
  double c2 = 1.0;
  double ridge = 0.0;
  int clock_qubits = 8;
  std::optional<double> t0;             // empty: lambda_max t0 = pi
  std::optional<int> trotter_steps;     // per unit time; empty: exact evolution
  std::uint64_t shots = 100000;
  std::uint64_t seed = kDefaultSeed;
  int max_qubits = kDefaultMaxQubits;
  bool exact_probabilities = false;

  QuantumTrainConfig quantum() const;
  PredictionConfig prediction(std::uint64_t stream) const;
};

/// CLI seed if given, else $QTSVM_SEED, else kDefaultSeed.
std::uint64_t resolve_seed(std::optional<std::uint64_t> cli_seed);

/// CSV with header; first column `label` (+1 / -1), remaining columns features.
Dataset read_dataset_csv(std::istream& in);
Dataset read_dataset_csv(const std::filesystem::path& path);
void write_dataset_csv(const Dataset& data, std::ostream& out);

/// Feature rows for prediction. A leading `label` column is accepted and kept.
struct SampleSet {
  RealMatrix features;
  std::vector<int> labels;  // empty when the file carries no label column
};
SampleSet read_samples_csv(std::istream& in);
SampleSet read_samples_csv(const std::filesystem::path& path);

std::string sha256_hex(const std::string& bytes);
std::string file_fingerprint(const std::filesystem::path& path);

struct QuantumSideRecord {
  StateVector state;
  HHLConfig config{};
  double prep_success_probability = 0.0;
  std::uint64_t prep_attempts = 0;
  double solve_success_probability = 0.0;
  std::uint64_t repetitions = 0;
  double condition_number = 0.0;
  double fidelity_vs_classical = 0.0;
  GateCounts gate_counts{};
};

struct QuantumRecord {
  QuantumSideRecord side1;
  QuantumSideRecord side2;
  int clock_qubits = 0;
  bool use_trotter = false;
  int trotter_steps_per_unit = 0;
  bool t0_auto = true;
};

struct ModelFile {
  int version = kModelVersion;
  std::string dataset_fingerprint;
  Eigen::Index features = 0;
  ClassicalModel classical;
  std::optional<QuantumRecord> quantum;
  std::uint64_t seed = kDefaultSeed;
};

nlohmann::json to_json(const ModelFile& model);
ModelFile model_from_json(const nlohmann::json& j);
void save_model(const ModelFile& model, const std::filesystem::path& path);
ModelFile load_model(const std::filesystem::path& path);

/// Builds the quantum section of a model from a training run.
QuantumRecord make_quantum_record(const QuantumTraining& training,
                                  const ClassicalModel& classical,
                                  const QuantumTrainConfig& config);

enum class Mode { kClassical, kQuantumSim };
Mode parse_mode(const std::string& text);

struct CompareReport {
  double sampled_agreement = 0.0;
  double exact_agreement = 0.0;
  std::size_t test_points = 0;
  double fidelity1 = 0.0;
  double fidelity2 = 0.0;
  double prep_success1 = 0.0;
  double prep_success2 = 0.0;
  double solve_success1 = 0.0;
  double solve_success2 = 0.0;
  double kappa1 = 0.0;
  double kappa2 = 0.0;
  int data_qubits = 0;
  int positive_index_qubits = 0;
  int negative_index_qubits = 0;
  int clock_qubits = 0;
  int peak_qubits = 0;
  Eigen::Index padded_data_dim = 0;
  Eigen::Index padded_positive_dim = 0;
  Eigen::Index padded_negative_dim = 0;
  GateCounts gate_counts1;
  GateCounts gate_counts2;
  GateCounts state_prep_gates;
};

nlohmann::json to_json(const CompareReport& report);

CompareReport compare(const Dataset& data, const RunConfig& config,
                      const std::optional<SampleSet>& samples = std::nullopt);

struct ErrorSweep {
  double trotter_time = 0.1;
  std::vector<int> trotter_steps{1, 2, 4, 8, 16, 32, 64, 128};
  std::vector<int> clock_qubits{4, 6, 8, 10};
  std::vector<std::uint64_t> shots{1000, 10000, 100000};
  int trials = 50;
};

struct ErrorReportTables {
  TrotterErrorReport trotter;
  struct ClockRow {
    int clock_qubits;
    double fidelity1;
    double fidelity2;
  };
  std::vector<ClockRow> clock;
  struct ShotRow {
    std::uint64_t shots;
    double mean_abs_error;
    double max_abs_error;
  };
  std::vector<ShotRow> shots;
};

ErrorReportTables error_report(const Dataset& data, const RunConfig& config,
                               const ErrorSweep& sweep);
void write_error_tables(const ErrorReportTables& tables, const std::filesystem::path& dir);
void write_error_summary(const ErrorReportTables& tables, std::ostream& out);

// Commands behind the CLI. Data goes to `out`, diagnostics to `err`; the
// return value is the process exit code.
int cmd_train(const std::filesystem::path& dataset, Mode mode, const RunConfig& config,
              const std::filesystem::path& output, std::ostream& out, std::ostream& err);
int cmd_predict(const std::filesystem::path& model, const std::filesystem::path& samples,
                Mode mode, const RunConfig& config,
                const std::optional<std::filesystem::path>& output, std::ostream& out,
                std::ostream& err);
int cmd_compare(const std::filesystem::path& dataset, const RunConfig& config,
                const std::optional<std::filesystem::path>& samples, std::ostream& out,
                std::ostream& err);
int cmd_error_report(const std::filesystem::path& dataset, const RunConfig& config,
                     const ErrorSweep& sweep, const std::filesystem::path& output_dir,
                     std::ostream& out, std::ostream& err);
int cmd_datagen(const SynthSpec& spec, const std::optional<std::filesystem::path>& output,
                std::ostream& out, std::ostream& err);

/// Maps a library exception onto an exit code and writes it to `err`.
int report_failure(const std::exception& e, std::ostream& err);

}  // namespace qtsvm
