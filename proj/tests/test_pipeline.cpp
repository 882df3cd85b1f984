#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "qtsvm/errors.hpp"
#include "qtsvm/pipeline.hpp"

using namespace qtsvm;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("qtsvm_test_" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream(p) << text;
}

std::string parse_error_message(const std::string& csv) {
  std::istringstream in(csv);
  try {
    read_dataset_csv(in);
  } catch (const ParseError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_SUITE("pipeline_cli") {
  TEST_CASE("dataset CSV parsing") {
    std::istringstream in("label,x0,x1\n1,0.5,1\n-1,2,3\n+1,4,5\n");
    const Dataset d = read_dataset_csv(in);
    CHECK(d.positive().rows() == 2);
    CHECK(d.negative().rows() == 1);
    CHECK(d.positive()(1, 0) == 4.0);

    CHECK(parse_error_message("label,x0\n1,0.5\n-1,abc\n").find("line 3") != std::string::npos);
    CHECK(parse_error_message("label,x0\n1,0.5,7\n-1,1\n").find("line 2") != std::string::npos);
    CHECK(parse_error_message("label,x0\n2,0.5\n-1,1\n").find("line 2") != std::string::npos);
    CHECK(parse_error_message("y,x0\n1,0.5\n-1,1\n").find("line 1") != std::string::npos);
    CHECK_FALSE(parse_error_message("label,x0\n1,0.5\n1,1\n").empty());
    CHECK_FALSE(parse_error_message("").empty());
  }

  TEST_CASE("dataset CSV round trip is exact") {
    const Dataset d = generate_crossplanes(crossplanes_spec(5, 6, 0.1, 3));
    std::stringstream buf;
    write_dataset_csv(d, buf);
    const Dataset back = read_dataset_csv(buf);
    CHECK(back.positive() == d.positive());
    CHECK(back.negative() == d.negative());
  }

  TEST_CASE("sample CSV with and without labels") {
    std::istringstream plain("x0,x1\n1,2\n3,4\n");
    const SampleSet a = read_samples_csv(plain);
    CHECK(a.features.rows() == 2);
    CHECK(a.labels.empty());
    std::istringstream labelled("label,x0,x1\n1,1,2\n-1,3,4\n");
    const SampleSet b = read_samples_csv(labelled);
    CHECK(b.features == a.features);
    CHECK(b.labels == std::vector<int>{1, -1});
  }

  TEST_CASE("sha256 known answers") {
    CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  }

  TEST_CASE("seed resolution order") {
    ::unsetenv("QTSVM_SEED");
    CHECK(resolve_seed(std::nullopt) == kDefaultSeed);
    ::setenv("QTSVM_SEED", "99", 1);
    CHECK(resolve_seed(std::nullopt) == 99);
    CHECK(resolve_seed(5) == 5);
    ::setenv("QTSVM_SEED", "nope", 1);
    CHECK_THROWS_AS(resolve_seed(std::nullopt), ParseError);
    ::unsetenv("QTSVM_SEED");
  }

  TEST_CASE("modes and exit codes") {
    CHECK(parse_mode("classical") == Mode::kClassical);
    CHECK(parse_mode("quantum-sim") == Mode::kQuantumSim);
    CHECK_THROWS_AS(parse_mode("qsim"), ParseError);
    std::ostringstream err;
    CHECK(report_failure(ParseError("x"), err) == kExitParse);
    CHECK(report_failure(SingularSystem("x"), err) == kExitNumerical);
    CHECK(report_failure(QubitCapExceeded("x"), err) == kExitQubitCap);
    CHECK(report_failure(DimensionMismatch("x"), err) == kExitDimension);
    CHECK(report_failure(InvalidSpec("x"), err) == kExitFailure);
  }

  TEST_CASE("model JSON round trip keeps predictions bit-identical") {
    TempDir tmp;
    const fs::path data_path = tmp.path / "train.csv";
    const fs::path model_path = tmp.path / "model.json";
    std::ostringstream out, err;
    REQUIRE(cmd_datagen(crossplanes_spec(8, 8, 0.05, 4), data_path, out, err) == kExitOk);
    RunConfig cfg;
    cfg.clock_qubits = 6;
    REQUIRE(cmd_train(data_path, Mode::kQuantumSim, cfg, model_path, out, err) == kExitOk);

    const ModelFile model = load_model(model_path);
    CHECK(model.dataset_fingerprint == file_fingerprint(data_path));
    CHECK(model.features == 2);
    REQUIRE(model.quantum.has_value());
    CHECK(model.quantum->clock_qubits == 6);

    const Dataset data = read_dataset_csv(data_path);
    const ClassicalModel fresh = train_classical(data, 1.0, 1.0);
    CHECK(model.classical.plane1.stacked() == fresh.plane1.stacked());
    CHECK(model.classical.plane2.stacked() == fresh.plane2.stacked());

    const QuantumTraining q = train_quantum(data, 1.0, 1.0, cfg.quantum(), cfg.seed);
    CHECK(model.quantum->side1.state.amplitudes() == q.state1.amplitudes());
    CHECK(model.quantum->side2.state.amplitudes() == q.state2.amplitudes());

    const ModelFile again = model_from_json(to_json(model));
    CHECK(to_json(again) == to_json(model));

    const fs::path samples = tmp.path / "samples.csv";
    write_file(samples, "x0,x1\n0.1,0.2\n0.7,0.25\n-0.3,0.9\n");
    std::ostringstream p1, p2;
    REQUIRE(cmd_predict(model_path, samples, Mode::kQuantumSim, cfg, std::nullopt, p1, err) == kExitOk);
    REQUIRE(cmd_predict(model_path, samples, Mode::kQuantumSim, cfg, std::nullopt, p2, err) == kExitOk);
    CHECK(p1.str() == p2.str());
    CHECK(p1.str().rfind("index,label,inner1,inner2,normsq_w1,normsq_w2,ratio1,ratio2,margin\n", 0) == 0);

    std::ostringstream pc;
    REQUIRE(cmd_predict(model_path, samples, Mode::kClassical, cfg, std::nullopt, pc, err) == kExitOk);
    std::istringstream lines(pc.str());
    std::string line;
    std::getline(lines, line);
    CHECK(line == "index,label,d1_sq,d2_sq");
    std::getline(lines, line);
    const auto expected = predict_classical(fresh, RealVector{{0.1, 0.2}});
    CHECK(line.rfind("0," + std::to_string(expected.label) + ",", 0) == 0);
  }

  TEST_CASE("command failures map to exit codes") {
    TempDir tmp;
    std::ostringstream out, err;
    const fs::path bad = tmp.path / "bad.csv";
    write_file(bad, "label,x0\n1,0.5\n-1,oops\n");
    CHECK(cmd_train(bad, Mode::kClassical, RunConfig{}, tmp.path / "m.json", out, err) == kExitParse);
    CHECK(err.str().find("line 3") != std::string::npos);

    const fs::path data_path = tmp.path / "train.csv";
    REQUIRE(cmd_datagen(crossplanes_spec(8, 8, 0.05, 4), data_path, out, err) == kExitOk);
    RunConfig tight;
    tight.max_qubits = 6;
    CHECK(cmd_train(data_path, Mode::kQuantumSim, tight, tmp.path / "m.json", out, err) ==
          kExitQubitCap);

    REQUIRE(cmd_train(data_path, Mode::kClassical, RunConfig{}, tmp.path / "m.json", out, err) == kExitOk);
    const fs::path wide = tmp.path / "wide.csv";
    write_file(wide, "x0,x1,x2\n1,2,3\n");
    CHECK(cmd_predict(tmp.path / "m.json", wide, Mode::kClassical, RunConfig{}, std::nullopt, out, err) ==
          kExitDimension);
    CHECK(cmd_predict(tmp.path / "m.json", tmp.path / "missing.csv", Mode::kClassical, RunConfig{},
                      std::nullopt, out, err) == kExitParse);
    write_file(tmp.path / "junk.json", "{\"format\": \"other\"}");
    CHECK(cmd_predict(tmp.path / "junk.json", wide, Mode::kClassical, RunConfig{}, std::nullopt, out, err) ==
          kExitParse);
  }

  TEST_CASE("compare reports widths from padded dimensions") {
    RunConfig cfg;
    cfg.shots = 20000;
    for (Eigen::Index m : {8, 16, 32}) {
      const Dataset data = generate_crossplanes(crossplanes_spec(m / 2, m / 2, 0.05, 9));
      const CompareReport r = compare(data, cfg);
      CHECK(r.test_points == static_cast<std::size_t>(m));
      CHECK(r.padded_data_dim == 4);
      CHECK(r.padded_positive_dim == m / 2);
      CHECK(r.data_qubits == 2);
      CHECK((Eigen::Index{1} << r.positive_index_qubits) == r.padded_positive_dim);
      CHECK(r.exact_agreement >= 0.9);
      CHECK(r.fidelity1 >= 0.98);
    }
  }

  TEST_CASE("error report tables") {
    TempDir tmp;
    const Dataset data = generate_crossplanes(crossplanes_spec(8, 8, 0.05, 2));
    ErrorSweep sweep;
    sweep.trotter_steps = {1, 2, 4};
    sweep.clock_qubits = {4, 6};
    sweep.shots = {1000, 100000};
    sweep.trials = 10;
    const auto tables = error_report(data, RunConfig{}, sweep);
    CHECK(tables.trotter.rows.size() == 3);
    CHECK(tables.clock.size() == 2);
    CHECK(tables.shots.size() == 2);
    CHECK(tables.shots[1].mean_abs_error < tables.shots[0].mean_abs_error);
    write_error_tables(tables, tmp.path);
    for (const char* f : {"trotter.csv", "clock_fidelity.csv", "shot_error.csv"}) CHECK(fs::exists(tmp.path / f));
    std::ostringstream summary;
    write_error_summary(tables, summary);
    CHECK(summary.str().find("clock fidelity") != std::string::npos);
  }
}
