#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qtsvm/classical.hpp"
#include "qtsvm/datagen.hpp"
#include "qtsvm/errors.hpp"
#include "qtsvm/hhl.hpp"
#include "qtsvm/pipeline.hpp"
#include "qtsvm/swap_predict.hpp"

namespace py = pybind11;
using namespace qtsvm;

namespace {

py::dict estimates_dict(const DistanceEstimates& e) {
  py::dict d;
  d["inner1"] = e.inner1;
  d["inner2"] = e.inner2;
  d["normsq_w1"] = e.normsq_w1;
  d["normsq_w2"] = e.normsq_w2;
  d["ratio1"] = e.ratio1;
  d["ratio2"] = e.ratio2;
  d["sample_norm"] = e.sample_norm;
  d["margin"] = e.margin;
  return d;
}

}  // namespace

PYBIND11_MODULE(_qtsvm, m) {
  m.doc() = "Least-squares twin SVM with a statevector simulation of its quantum pipeline";

  auto base = py::register_exception<Error>(m, "QtsvmError", PyExc_RuntimeError);
  py::register_exception<NumericalError>(m, "NumericalError", base.ptr());
  py::register_exception<DimensionMismatch>(m, "DimensionMismatch", base.ptr());
  py::register_exception<QubitCapExceeded>(m, "QubitCapExceeded", base.ptr());
  py::register_exception<ParseError>(m, "ParseError", base.ptr());

  py::class_<Dataset>(m, "Dataset")
      .def(py::init<RealMatrix, RealMatrix>(), py::arg("positive"), py::arg("negative"))
      .def_property_readonly("positive", &Dataset::positive)
      .def_property_readonly("negative", &Dataset::negative)
      .def_property_readonly("features", &Dataset::features)
      .def("__len__", &Dataset::size);

  py::class_<ClassicalModel>(m, "ClassicalModel")
      .def_property_readonly("w1", [](const ClassicalModel& c) { return c.plane1.w; })
      .def_property_readonly("b1", [](const ClassicalModel& c) { return c.plane1.b; })
      .def_property_readonly("w2", [](const ClassicalModel& c) { return c.plane2.w; })
      .def_property_readonly("b2", [](const ClassicalModel& c) { return c.plane2.b; })
      .def_readonly("c1", &ClassicalModel::c1)
      .def_readonly("c2", &ClassicalModel::c2)
      .def_readonly("ridge", &ClassicalModel::ridge);

  m.def("train_classical", &train_classical, py::arg("data"), py::arg("c1") = 1.0,
        py::arg("c2") = 1.0, py::arg("ridge") = 0.0);
  m.def(
      "predict_classical",
      [](const ClassicalModel& model, const RealVector& x) {
        const auto p = predict_classical(model, x);
        return py::make_tuple(p.label, p.d1, p.d2);
      },
      py::arg("model"), py::arg("x"), "Returns (label, d1, d2).");

  py::class_<StateVector>(m, "StateVector")
      .def(py::init<ComplexVector>(), py::arg("amplitudes"))
      .def_property_readonly("amplitudes", &StateVector::amplitudes)
      .def_property_readonly("num_qubits", &StateVector::num_qubits)
      .def("__len__", &StateVector::dim);

  m.def("normalize_to_state", py::overload_cast<const ComplexVector&>(&normalize_to_state),
        py::arg("v"));
  m.def("fidelity", &fidelity, py::arg("a"), py::arg("b"));
  m.def("prepare_sample_state", &prepare_sample_state, py::arg("x"));
  m.def(
      "prepare_density_k", [](const RealMatrix& mat) { return prepare_density_k(mat).entries(); },
      py::arg("m"), "Reduced data-register density matrix M^T M / tr(M^T M), zero padded.");
  m.def(
      "postselect_input_state",
      [](const RealMatrix& mat, std::uint64_t seed) {
        const auto p = postselect_input_state(build_chi(mat), seed);
        return py::make_tuple(p.state, p.success_probability, p.attempts);
      },
      py::arg("m"), py::arg("seed") = kDefaultSeed,
      "Returns (state, success_probability, attempts).");

  py::class_<SwapTestResult>(m, "SwapTestResult")
      .def_readonly("exact_p0", &SwapTestResult::exact_p0)
      .def_readonly("sampled_p0", &SwapTestResult::sampled_p0)
      .def_readonly("estimate", &SwapTestResult::estimate);
  m.def("swap_test", &swap_test, py::arg("a"), py::arg("b"), py::arg("shots") = 100000,
        py::arg("seed") = kDefaultSeed);

  m.def(
      "solve_qls",
      [](const ComplexMatrix& h, const StateVector& b, int clock_qubits, std::uint64_t seed) {
        const HermitianMatrix hm(h);
        const auto config = default_hhl_config(hm, clock_qubits);
        const auto r = solve_qls(hm, b, config, seed);
        return py::make_tuple(r.solution_state, r.success_probability, r.gate_counts);
      },
      py::arg("h"), py::arg("b"), py::arg("clock_qubits") = 8, py::arg("seed") = kDefaultSeed,
      "Returns (solution_state, success_probability, gate_counts).");

  py::class_<QuantumTraining>(m, "QuantumTraining")
      .def_readonly("state1", &QuantumTraining::state1)
      .def_readonly("state2", &QuantumTraining::state2)
      .def_property_readonly("success_probabilities",
                             [](const QuantumTraining& q) {
                               return py::make_tuple(q.side1.solve.success_probability,
                                                     q.side2.solve.success_probability);
                             })
      .def_property_readonly("condition_numbers",
                             [](const QuantumTraining& q) {
                               return py::make_tuple(q.side1.condition_number,
                                                     q.side2.condition_number);
                             })
      .def_readonly("peak_qubits", &QuantumTraining::peak_qubits);

  m.def(
      "train_quantum",
      [](const Dataset& data, double c1, double c2, int clock_qubits, std::optional<double> t0,
         std::optional<int> trotter_steps, std::uint64_t seed, int max_qubits) {
        QuantumTrainConfig config;
        config.clock_qubits = clock_qubits;
        config.t0 = t0;
        config.use_trotter = trotter_steps.has_value();
        if (trotter_steps) config.trotter_steps_per_unit = *trotter_steps;
        config.max_qubits = max_qubits;
        return train_quantum(data, c1, c2, config, seed);
      },
      py::arg("data"), py::arg("c1") = 1.0, py::arg("c2") = 1.0, py::arg("clock_qubits") = 8,
      py::arg("t0") = py::none(), py::arg("trotter_steps") = py::none(),
      py::arg("seed") = kDefaultSeed, py::arg("max_qubits") = kDefaultMaxQubits);

  m.def(
      "classify",
      [](const RealVector& x, const StateVector& s1, const StateVector& s2, std::uint64_t shots,
         std::uint64_t seed, bool exact) {
        const auto p = classify(x, s1, s2, PredictionConfig{shots, seed, exact});
        return py::make_tuple(p.label, estimates_dict(p.estimates));
      },
      py::arg("x"), py::arg("state1"), py::arg("state2"), py::arg("shots") = 100000,
      py::arg("seed") = kDefaultSeed, py::arg("exact") = false,
      "Returns (label, estimates).");

  m.def(
      "generate_crossplanes",
      [](Eigen::Index m1, Eigen::Index m2, double noise, std::uint64_t seed) {
        return generate_crossplanes(crossplanes_spec(m1, m2, noise, seed));
      },
      py::arg("m1") = 16, py::arg("m2") = 16, py::arg("noise") = 0.05,
      py::arg("seed") = kDefaultSeed);
}
