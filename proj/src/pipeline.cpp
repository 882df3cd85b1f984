#include "qtsvm/pipeline.hpp"

#include <openssl/evp.h>

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <sstream>

#include "qtsvm/errors.hpp"

namespace qtsvm {

using nlohmann::json;

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) {
    const auto first = field.find_first_not_of(" \t\r");
    const auto last = field.find_last_not_of(" \t\r");
    fields.push_back(first == std::string::npos ? "" : field.substr(first, last - first + 1));
  }
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

double parse_double(std::string_view text, std::size_t line_no) {
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty() ||
      !std::isfinite(value)) {
    throw ParseError("line " + std::to_string(line_no) + ": invalid number '" +
                     std::string(text) + "'");
  }
  return value;
}

int parse_label(const std::string& text, std::size_t line_no) {
  const double v = parse_double(text, line_no);
  if (v == 1.0) return 1;
  if (v == -1.0) return -1;
  throw ParseError("line " + std::to_string(line_no) + ": label must be +1 or -1, got '" +
                   text + "'");
}

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
  std::vector<int> labels;
};

CsvTable read_table(std::istream& in, bool require_label) {
  CsvTable table;
  std::string line;
  std::size_t line_no = 0;
  bool labeled = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto fields = split_csv_line(line);
    if (table.header.empty()) {
      table.header = fields;
      labeled = !fields.empty() && fields.front() == "label";
      if (require_label && !labeled) {
        throw ParseError("line " + std::to_string(line_no) + ": first column must be 'label'");
      }
      if (fields.size() < (labeled ? 2u : 1u)) {
        throw ParseError("line " + std::to_string(line_no) + ": no feature columns");
      }
      continue;
    }
    if (fields.size() != table.header.size()) {
      throw ParseError("line " + std::to_string(line_no) + ": expected " +
                       std::to_string(table.header.size()) + " fields, got " +
                       std::to_string(fields.size()));
    }
    std::size_t start = 0;
    if (labeled) {
      table.labels.push_back(parse_label(fields[0], line_no));
      start = 1;
    }
    std::vector<double> row;
    for (std::size_t i = start; i < fields.size(); ++i) row.push_back(parse_double(fields[i], line_no));
    table.rows.push_back(std::move(row));
  }
  if (table.header.empty()) throw ParseError("line 1: missing header");
  return table;
}

RealMatrix rows_to_matrix(const std::vector<const std::vector<double>*>& rows, std::size_t cols) {
  RealMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = (*rows[r])[c];
    }
  }
  return m;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  return in;
}

json amplitudes_to_json(const StateVector& s) {
  json out = json::array();
  for (Eigen::Index i = 0; i < s.dim(); ++i) out.push_back({s[i].real(), s[i].imag()});
  return out;
}

StateVector amplitudes_from_json(const json& j) {
  ComplexVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    v(static_cast<Eigen::Index>(i)) = Complex(j[i].at(0).get<double>(), j[i].at(1).get<double>());
  }
  return StateVector(std::move(v));
}

json vector_to_json(const RealVector& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

RealVector vector_from_json(const json& j) {
  const auto values = j.get<std::vector<double>>();
  return Eigen::Map<const RealVector>(values.data(), static_cast<Eigen::Index>(values.size()));
}

json side_to_json(const QuantumSideRecord& s) {
  return json{{"state", amplitudes_to_json(s.state)},
              {"t0", s.config.t0},
              {"inversion_constant", s.config.inversion_constant},
              {"eigenvalue_cutoff", s.config.eigenvalue_cutoff},
              {"prep_success_probability", s.prep_success_probability},
              {"prep_attempts", s.prep_attempts},
              {"solve_success_probability", s.solve_success_probability},
              {"repetitions", s.repetitions},
              {"condition_number", std::isfinite(s.condition_number) ? json(s.condition_number)
                                                                     : json(nullptr)},
              {"fidelity_vs_classical", s.fidelity_vs_classical},
              {"gate_counts", s.gate_counts}};
}

QuantumSideRecord side_from_json(const json& j, const json& q) {
  QuantumSideRecord s{amplitudes_from_json(j.at("state"))};
  s.config.clock_qubits = q.at("clock_qubits").get<int>();
  s.config.use_trotter = q.at("use_trotter").get<bool>();
  s.config.trotter_steps_per_unit = q.at("trotter_steps_per_unit").get<int>();
  s.config.t0 = j.at("t0").get<double>();
  s.config.inversion_constant = j.at("inversion_constant").get<double>();
  s.config.eigenvalue_cutoff = j.at("eigenvalue_cutoff").get<double>();
  s.prep_success_probability = j.at("prep_success_probability").get<double>();
  s.prep_attempts = j.at("prep_attempts").get<std::uint64_t>();
  s.solve_success_probability = j.at("solve_success_probability").get<double>();
  s.repetitions = j.at("repetitions").get<std::uint64_t>();
  s.condition_number = j.at("condition_number").is_null()
                           ? std::numeric_limits<double>::infinity()
                           : j.at("condition_number").get<double>();
  s.fidelity_vs_classical = j.at("fidelity_vs_classical").get<double>();
  s.gate_counts = j.at("gate_counts").get<GateCounts>();
  return s;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << text;
}

}  // namespace

QuantumTrainConfig RunConfig::quantum() const {
  QuantumTrainConfig q;
  q.clock_qubits = clock_qubits;
  q.t0 = t0;
  q.use_trotter = trotter_steps.has_value();
  if (trotter_steps) q.trotter_steps_per_unit = *trotter_steps;
  q.max_qubits = max_qubits;
  return q;
}

PredictionConfig RunConfig::prediction(std::uint64_t stream) const {
  return PredictionConfig{shots, derive_seed(seed, stream), exact_probabilities};
}

std::uint64_t resolve_seed(std::optional<std::uint64_t> cli_seed) {
  if (cli_seed) return *cli_seed;
  if (const char* env = std::getenv("QTSVM_SEED"); env != nullptr && *env != '\0') {
    std::uint64_t value = 0;
    const std::string_view text(env);
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
      throw ParseError("QTSVM_SEED is not an unsigned integer: '" + std::string(text) + "'");
    }
    return value;
  }
  return kDefaultSeed;
}

Dataset read_dataset_csv(std::istream& in) {
  const CsvTable table = read_table(in, true);
  const std::size_t cols = table.header.size() - 1;
  std::vector<const std::vector<double>*> pos, neg;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    (table.labels[i] > 0 ? pos : neg).push_back(&table.rows[i]);
  }
  if (pos.empty() || neg.empty()) {
    throw ParseError("dataset needs at least one +1 and one -1 row");
  }
  return Dataset(rows_to_matrix(pos, cols), rows_to_matrix(neg, cols));
}

Dataset read_dataset_csv(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_dataset_csv(in);
}

void write_dataset_csv(const Dataset& data, std::ostream& out) {
  out << "label";
  for (Eigen::Index k = 0; k < data.features(); ++k) out << ",x" << k;
  out << '\n' << std::setprecision(17);
  const auto emit = [&](const RealMatrix& m, const char* label) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      out << label;
      for (Eigen::Index k = 0; k < m.cols(); ++k) out << ',' << m(r, k);
      out << '\n';
    }
  };
  emit(data.positive(), "+1");
  emit(data.negative(), "-1");
}

SampleSet read_samples_csv(std::istream& in) {
  const CsvTable table = read_table(in, false);
  const bool labeled = !table.labels.empty() || table.header.front() == "label";
  const std::size_t cols = table.header.size() - (labeled ? 1 : 0);
  std::vector<const std::vector<double>*> rows;
  for (const auto& r : table.rows) rows.push_back(&r);
  return SampleSet{rows_to_matrix(rows, cols), table.labels};
}

SampleSet read_samples_csv(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_samples_csv(in);
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    throw Error("SHA-256 digest failed");
  }
  std::ostringstream hex;
  for (unsigned int i = 0; i < length; ++i) {
    hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  }
  return hex.str();
}

std::string file_fingerprint(const std::filesystem::path& path) {
  auto in = open_input(path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return sha256_hex(buffer.str());
}

json to_json(const ModelFile& model) {
  const auto& c = model.classical;
  json j{{"format", "qtsvm-model"},
         {"version", model.version},
         {"seed", model.seed},
         {"dataset", {{"sha256", model.dataset_fingerprint}, {"features", model.features}}},
         {"classical",
          {{"w1", vector_to_json(c.plane1.w)},
           {"b1", c.plane1.b},
           {"w2", vector_to_json(c.plane2.w)},
           {"b2", c.plane2.b},
           {"c1", c.c1},
           {"c2", c.c2},
           {"ridge", c.ridge}}},
         {"quantum", nullptr}};
  if (model.quantum) {
    const auto& q = *model.quantum;
    j["quantum"] = json{{"clock_qubits", q.clock_qubits},
                        {"use_trotter", q.use_trotter},
                        {"trotter_steps_per_unit", q.trotter_steps_per_unit},
                        {"t0_policy", q.t0_auto ? "auto" : "explicit"},
                        {"side1", side_to_json(q.side1)},
                        {"side2", side_to_json(q.side2)}};
  }
  return j;
}

ModelFile model_from_json(const json& j) {
  try {
    if (j.at("format").get<std::string>() != "qtsvm-model") {
      throw ParseError("not a qtsvm model file");
    }
    ModelFile model;
    model.version = j.at("version").get<int>();
    if (model.version != kModelVersion) {
      throw ParseError("unsupported model version " + std::to_string(model.version));
    }
    model.seed = j.at("seed").get<std::uint64_t>();
    model.dataset_fingerprint = j.at("dataset").at("sha256").get<std::string>();
    model.features = j.at("dataset").at("features").get<Eigen::Index>();
    const json& c = j.at("classical");
    model.classical.plane1 = Hyperplane{vector_from_json(c.at("w1")), c.at("b1").get<double>()};
    model.classical.plane2 = Hyperplane{vector_from_json(c.at("w2")), c.at("b2").get<double>()};
    model.classical.c1 = c.at("c1").get<double>();
    model.classical.c2 = c.at("c2").get<double>();
    model.classical.ridge = c.at("ridge").get<double>();
    if (model.classical.plane1.w.size() != model.features ||
        model.classical.plane2.w.size() != model.features) {
      throw ParseError("hyperplane length does not match feature count");
    }
    const json& q = j.at("quantum");
    if (!q.is_null()) {
      model.quantum.emplace(QuantumRecord{side_from_json(q.at("side1"), q),
                                          side_from_json(q.at("side2"), q),
                                          q.at("clock_qubits").get<int>(),
                                          q.at("use_trotter").get<bool>(),
                                          q.at("trotter_steps_per_unit").get<int>(),
                                          q.at("t0_policy").get<std::string>() == "auto"});
    }
    return model;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed model file: ") + e.what());
  }
}

void save_model(const ModelFile& model, const std::filesystem::path& path) {
  write_text(path, to_json(model).dump(2) + "\n");
}

ModelFile load_model(const std::filesystem::path& path) {
  auto in = open_input(path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ParseError(std::string("model file is not valid JSON: ") + e.what());
  }
  return model_from_json(j);
}

QuantumRecord make_quantum_record(const QuantumTraining& training,
                                  const ClassicalModel& classical,
                                  const QuantumTrainConfig& config) {
  const auto side = [](const SideReport& r, const StateVector& state, const Hyperplane& plane) {
    QuantumSideRecord s{state};
    s.config = r.config;
    s.prep_success_probability = r.input.success_probability;
    s.prep_attempts = r.input.attempts;
    s.solve_success_probability = r.solve.success_probability;
    s.repetitions = r.solve.repetitions;
    s.condition_number = r.condition_number;
    s.fidelity_vs_classical = fidelity(state, normalize_to_state(plane.stacked()));
    s.gate_counts = r.solve.gate_counts;
    return s;
  };
  return QuantumRecord{side(training.side1, training.state1, classical.plane1),
                       side(training.side2, training.state2, classical.plane2),
                       config.clock_qubits, config.use_trotter, config.trotter_steps_per_unit,
                       !config.t0.has_value()};
}

Mode parse_mode(const std::string& text) {
  if (text == "classical") return Mode::kClassical;
  if (text == "quantum-sim" || text == "quantum") return Mode::kQuantumSim;
  throw ParseError("unknown mode '" + text + "' (expected classical or quantum-sim)");
}

json to_json(const CompareReport& r) {
  const auto finite = [](double v) { return std::isfinite(v) ? json(v) : json(nullptr); };
  return json{
      {"test_points", r.test_points},
      {"agreement", {{"sampled", r.sampled_agreement}, {"exact_probabilities", r.exact_agreement}}},
      {"fidelity", {{"plane1", r.fidelity1}, {"plane2", r.fidelity2}}},
      {"state_prep_success_probability", {{"plane1", r.prep_success1}, {"plane2", r.prep_success2}}},
      {"solve_success_probability", {{"plane1", r.solve_success1}, {"plane2", r.solve_success2}}},
      {"condition_number", {{"h1_hat", finite(r.kappa1)}, {"h2_hat", finite(r.kappa2)}}},
      {"registers",
       {{"data_qubits", r.data_qubits},
        {"positive_index_qubits", r.positive_index_qubits},
        {"negative_index_qubits", r.negative_index_qubits},
        {"clock_qubits", r.clock_qubits},
        {"peak_qubits", r.peak_qubits},
        {"padded_data_dim", r.padded_data_dim},
        {"padded_positive_dim", r.padded_positive_dim},
        {"padded_negative_dim", r.padded_negative_dim}}},
      {"gate_counts",
       {{"solve1", r.gate_counts1}, {"solve2", r.gate_counts2}, {"state_prep", r.state_prep_gates}}}};
}

CompareReport compare(const Dataset& data, const RunConfig& config,
                      const std::optional<SampleSet>& samples) {
  const ClassicalModel classical = train_classical(data, config.c1, config.c2, config.ridge);
  const QuantumTrainConfig qconfig = config.quantum();
  const QuantumTraining q = train_quantum(data, config.c1, config.c2, qconfig, config.seed);

  RealMatrix points;
  if (samples) {
    if (samples->features.cols() != data.features()) {
      throw DimensionMismatch("samples have a different feature count than the dataset");
    }
    points = samples->features;
  } else {
    points.resize(data.size(), data.features());
    points << data.positive(), data.negative();
  }

  CompareReport r;
  r.test_points = static_cast<std::size_t>(points.rows());
  std::size_t sampled_ok = 0;
  std::size_t exact_ok = 0;
  RunConfig exact = config;
  exact.exact_probabilities = true;
  RunConfig sampled = config;
  sampled.exact_probabilities = false;
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    const RealVector x = points.row(i).transpose();
    const int expected = predict_classical(classical, x).label;
    const auto stream = static_cast<std::uint64_t>(i);
    if (classify(x, q.state1, q.state2, sampled.prediction(stream)).label == expected) ++sampled_ok;
    if (classify(x, q.state1, q.state2, exact.prediction(stream)).label == expected) ++exact_ok;
  }
  const double total = std::max<double>(1.0, static_cast<double>(r.test_points));
  r.sampled_agreement = static_cast<double>(sampled_ok) / total;
  r.exact_agreement = static_cast<double>(exact_ok) / total;

  r.fidelity1 = fidelity(q.state1, normalize_to_state(classical.plane1.stacked()));
  r.fidelity2 = fidelity(q.state2, normalize_to_state(classical.plane2.stacked()));
  r.prep_success1 = q.side1.input.success_probability;
  r.prep_success2 = q.side2.input.success_probability;
  r.solve_success1 = q.side1.solve.success_probability;
  r.solve_success2 = q.side2.solve.success_probability;
  r.kappa1 = q.side1.condition_number;
  r.kappa2 = q.side2.condition_number;
  r.data_qubits = q.data_qubits;
  r.positive_index_qubits = q.positive_index_qubits;
  r.negative_index_qubits = q.negative_index_qubits;
  r.clock_qubits = qconfig.clock_qubits;
  r.peak_qubits = q.peak_qubits;
  r.padded_data_dim = Eigen::Index{1} << q.data_qubits;
  r.padded_positive_dim = Eigen::Index{1} << q.positive_index_qubits;
  r.padded_negative_dim = Eigen::Index{1} << q.negative_index_qubits;
  r.gate_counts1 = q.side1.solve.gate_counts;
  r.gate_counts2 = q.side2.solve.gate_counts;
  r.state_prep_gates["oracle_query"] = 2;
  r.state_prep_gates["hadamard"] =
      static_cast<std::uint64_t>(q.positive_index_qubits + q.negative_index_qubits);
  r.state_prep_gates["measurement"] = r.state_prep_gates["hadamard"];
  return r;
}

ErrorReportTables error_report(const Dataset& data, const RunConfig& config,
                               const ErrorSweep& sweep) {
  const AugmentedMatrices aug = build_augmented(data, config.c1, config.c2);
  const HamiltonianPair pair =
      assemble_hamiltonians(prepare_density_k(aug.E), prepare_density_k(aug.F),
                            aug.E.squaredNorm(), aug.F.squaredNorm(), config.c1, config.c2);
  ErrorReportTables tables;
  tables.trotter =
      trotter_error_report(pair, Side::kFirst, sweep.trotter_time, sweep.trotter_steps);

  const ClassicalModel classical = train_classical(data, config.c1, config.c2, config.ridge);
  const StateVector target1 = normalize_to_state(classical.plane1.stacked());
  const StateVector target2 = normalize_to_state(classical.plane2.stacked());
  for (int q : sweep.clock_qubits) {
    RunConfig c = config;
    c.clock_qubits = q;
    const QuantumTraining t = train_quantum(data, c.c1, c.c2, c.quantum(), c.seed);
    tables.clock.push_back({q, fidelity(t.state1, target1), fidelity(t.state2, target2)});
  }

  // SWAP-test error against exact overlaps of the first hyperplane with the
  // training samples.
  const StateVector& plane = target1;
  RealMatrix points(data.size(), data.features());
  points << data.positive(), data.negative();
  for (std::uint64_t shots : sweep.shots) {
    double sum = 0.0;
    double worst = 0.0;
    std::size_t count = 0;
    for (int trial = 0; trial < sweep.trials; ++trial) {
      const Eigen::Index i = trial % points.rows();
      const StateVector x = prepare_sample_state(points.row(i).transpose());
      const auto result = swap_test(plane, x, shots,
                                    derive_seed(config.seed, static_cast<std::uint64_t>(trial)));
      const double err = std::abs(result.estimate - result.exact_overlap());
      sum += err;
      worst = std::max(worst, err);
      ++count;
    }
    tables.shots.push_back({shots, sum / static_cast<double>(std::max<std::size_t>(1, count)), worst});
  }
  return tables;
}

void write_error_tables(const ErrorReportTables& t, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::ostringstream trotter;
  trotter << std::setprecision(17) << "steps,step_size,single_step_error,total_error\n";
  for (const auto& r : t.trotter.rows) {
    trotter << r.steps << ',' << r.step_size << ',' << r.single_step_error << ','
            << r.total_error << '\n';
  }
  write_text(dir / "trotter.csv", trotter.str());

  std::ostringstream clock;
  clock << std::setprecision(17) << "clock_qubits,fidelity_plane1,fidelity_plane2\n";
  for (const auto& r : t.clock) clock << r.clock_qubits << ',' << r.fidelity1 << ',' << r.fidelity2 << '\n';
  write_text(dir / "clock_fidelity.csv", clock.str());

  std::ostringstream shots;
  shots << std::setprecision(17) << "shots,mean_abs_error,max_abs_error\n";
  for (const auto& r : t.shots) shots << r.shots << ',' << r.mean_abs_error << ',' << r.max_abs_error << '\n';
  write_text(dir / "shot_error.csv", shots.str());
}

void write_error_summary(const ErrorReportTables& t, std::ostream& out) {
  out << "trotter: ";
  if (t.trotter.commuting) {
    out << "commuting pair, Trotter error below 1e-11 (slope undefined)\n";
  } else if (t.trotter.single_step_slope) {
    out << "single-step log-log slope " << std::setprecision(4) << *t.trotter.single_step_slope;
    if (!t.trotter.doubling_ratios.empty()) {
      out << ", total-error reduction per doubling of T:";
      for (double r : t.trotter.doubling_ratios) out << ' ' << r;
    }
    out << '\n';
  }
  out << "clock fidelity:";
  for (const auto& r : t.clock) {
    out << " q=" << r.clock_qubits << " (" << r.fidelity1 << ", " << r.fidelity2 << ")";
  }
  out << "\nshot error:";
  for (const auto& r : t.shots) out << " " << r.shots << "->" << r.mean_abs_error;
  out << '\n';
}

int report_failure(const std::exception& e, std::ostream& err) {
  err << "error: " << e.what() << '\n';
  if (dynamic_cast<const ParseError*>(&e)) return kExitParse;
  if (dynamic_cast<const QubitCapExceeded*>(&e)) return kExitQubitCap;
  if (dynamic_cast<const DimensionMismatch*>(&e)) return kExitDimension;
  if (dynamic_cast<const NumericalError*>(&e)) return kExitNumerical;
  return kExitFailure;
}

int cmd_train(const std::filesystem::path& dataset, Mode mode, const RunConfig& config,
              const std::filesystem::path& output, std::ostream& out, std::ostream& err) {
  try {
    const Dataset data = read_dataset_csv(dataset);
    ModelFile model;
    model.dataset_fingerprint = file_fingerprint(dataset);
    model.features = data.features();
    model.seed = config.seed;
    model.classical = train_classical(data, config.c1, config.c2, config.ridge);
    if (mode == Mode::kQuantumSim) {
      const QuantumTrainConfig qconfig = config.quantum();
      if (qconfig.t0 == std::nullopt) {
        err << "note: t0 chosen so that lambda_max * t0 = pi from the classical spectrum\n";
      }
      const QuantumTraining q = train_quantum(data, config.c1, config.c2, qconfig, config.seed);
      model.quantum = make_quantum_record(q, model.classical, qconfig);
      out << "fidelity plane1 " << model.quantum->side1.fidelity_vs_classical << "\n"
          << "fidelity plane2 " << model.quantum->side2.fidelity_vs_classical << "\n";
    }
    save_model(model, output);
    out << "model written to " << output.string() << "\n";
    return kExitOk;
  } catch (const std::exception& e) {
    return report_failure(e, err);
  }
}

int cmd_predict(const std::filesystem::path& model_path, const std::filesystem::path& samples_path,
                Mode mode, const RunConfig& config,
                const std::optional<std::filesystem::path>& output, std::ostream& out,
                std::ostream& err) {
  try {
    const ModelFile model = load_model(model_path);
    const SampleSet samples = read_samples_csv(samples_path);
    if (samples.features.cols() != model.features) {
      throw DimensionMismatch("samples have " + std::to_string(samples.features.cols()) +
                              " features, model expects " + std::to_string(model.features));
    }
    std::ostringstream table;
    table << std::setprecision(17);
    if (mode == Mode::kClassical) {
      table << "index,label,d1_sq,d2_sq\n";
      for (Eigen::Index i = 0; i < samples.features.rows(); ++i) {
        const auto p = predict_classical(model.classical, samples.features.row(i).transpose());
        table << i << ',' << p.label << ',' << p.d1 * p.d1 << ',' << p.d2 * p.d2 << '\n';
      }
    } else {
      if (!model.quantum) {
        throw InvalidSpec("model has no quantum states; train with --mode quantum-sim");
      }
      table << "index,label,inner1,inner2,normsq_w1,normsq_w2,ratio1,ratio2,margin\n";
      for (Eigen::Index i = 0; i < samples.features.rows(); ++i) {
        const auto p = classify(samples.features.row(i).transpose(), model.quantum->side1.state,
                                model.quantum->side2.state,
                                config.prediction(static_cast<std::uint64_t>(i)));
        const auto& e = p.estimates;
        table << i << ',' << p.label << ',' << e.inner1 << ',' << e.inner2 << ',' << e.normsq_w1
              << ',' << e.normsq_w2 << ',' << e.ratio1 << ',' << e.ratio2 << ',' << e.margin
              << '\n';
      }
    }
    if (output) {
      write_text(*output, table.str());
    } else {
      out << table.str();
    }
    return kExitOk;
  } catch (const std::exception& e) {
    return report_failure(e, err);
  }
}

int cmd_compare(const std::filesystem::path& dataset, const RunConfig& config,
                const std::optional<std::filesystem::path>& samples, std::ostream& out,
                std::ostream& err) {
  try {
    const Dataset data = read_dataset_csv(dataset);
    std::optional<SampleSet> points;
    if (samples) points = read_samples_csv(*samples);
    out << to_json(compare(data, config, points)).dump(2) << '\n';
    return kExitOk;
  } catch (const std::exception& e) {
    return report_failure(e, err);
  }
}

int cmd_error_report(const std::filesystem::path& dataset, const RunConfig& config,
                     const ErrorSweep& sweep, const std::filesystem::path& output_dir,
                     std::ostream& out, std::ostream& err) {
  try {
    const Dataset data = read_dataset_csv(dataset);
    const ErrorReportTables tables = error_report(data, config, sweep);
    write_error_tables(tables, output_dir);
    write_error_summary(tables, out);
    return kExitOk;
  } catch (const std::exception& e) {
    return report_failure(e, err);
  }
}

int cmd_datagen(const SynthSpec& spec, const std::optional<std::filesystem::path>& output,
                std::ostream& out, std::ostream& err) {
  try {
    const Dataset data = generate_crossplanes(spec);
    if (output) {
      std::ostringstream csv;
      write_dataset_csv(data, csv);
      write_text(*output, csv.str());
    } else {
      write_dataset_csv(data, out);
    }
    return kExitOk;
  } catch (const std::exception& e) {
    return report_failure(e, err);
  }
}

}  // namespace qtsvm
