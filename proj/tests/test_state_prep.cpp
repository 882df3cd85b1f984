#include <cmath>

#include "doctest.h"
#include "qtsvm/errors.hpp"
#include "qtsvm/state_prep.hpp"
#include "test_support.hpp"

using namespace qtsvm;
using namespace qtsvm::testing;

namespace {

RealMatrix f_example() {
  RealMatrix f(2, 3);
  f << 1, 0, 1, 0, 1, 1;
  return f;
}

}  // namespace

TEST_SUITE("state_prep") {
  TEST_CASE("chi amplitudes follow the data-major layout") {
    Rng rng(41);
    const RealMatrix m = random_real(5, 3, rng);
    const auto chi = build_chi(m);
    CHECK(chi.layout.width(kDataRegister) == 2);
    CHECK(chi.layout.width(kIndexRegister) == 3);
    CHECK(chi.layout.registers().front().name == kDataRegister);
    const double fro = m.norm();
    for (Eigen::Index k = 0; k < 4; ++k)
      for (Eigen::Index i = 0; i < 8; ++i) {
        const double expected = (k < 3 && i < 5) ? m(i, k) / fro : 0.0;
        CHECK(std::abs(chi.state[k * 8 + i] - expected) < 1e-15);
      }
    CHECK_THROWS_AS(build_chi(RealMatrix(0, 3)), EmptyMatrix);
    CHECK_THROWS_AS(build_chi(RealMatrix(RealMatrix::Zero(2, 2))), EmptyMatrix);
  }

  TEST_CASE("postselected state for the two-row example") {
    const auto in = postselect_input_state(build_chi(f_example()), 3);
    // Column sums (1, 1, 2) padded to (1, 1, 2, 0) / sqrt(6).
    const RealVector expected = RealVector{{1.0, 1.0, 2.0, 0.0}} / std::sqrt(6.0);
    CHECK((in.state.amplitudes() - expected.cast<Complex>()).norm() < 1e-12);
    // ||sum_i F_i||^2 / (2^k ||F||_F^2) = 6 / (2 * 4).
    CHECK(in.success_probability == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(in.index_qubits == 1);
    CHECK(in.data_qubits == 2);
    CHECK(in.attempts >= 1);
  }

  TEST_CASE("single-row input succeeds with probability 2^-k") {
    RealMatrix m(1, 3);
    m << 0.5, -2.0, 1.0;
    const auto in = postselect_input_state(build_chi(m), 9);
    // The index register of a single row still carries one qubit.
    CHECK(in.success_probability == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(fidelity(in.state, normalize_to_state(RealVector(m.row(0).transpose()))) ==
          doctest::Approx(1.0));
  }

  TEST_CASE("cancelling rows leave nothing to postselect") {
    RealMatrix m(2, 2);
    m << 1, 2, -1, -2;
    CHECK_THROWS_AS(postselect_input_state(build_chi(m), 1), ZeroColumnSum);
  }

  TEST_CASE("property: postselected state is the normalized column sum") {
    Rng rng(42);
    for (int trial = 0; trial < 50; ++trial) {
      const RealMatrix m = random_real(1 + trial % 9, 1 + trial % 5, rng);
      const RealVector sum = m.colwise().sum().transpose();
      if (sum.norm() < 1e-6) continue;
      const auto in = postselect_input_state(build_chi(m), trial);
      CHECK(fidelity(in.state, normalize_to_state(sum)) == doctest::Approx(1.0).epsilon(1e-12));
      const double k = std::ldexp(1.0, qubits_for(m.rows()));
      CHECK(in.success_probability ==
            doctest::Approx(sum.squaredNorm() / (k * m.squaredNorm())).epsilon(1e-10));
    }
  }

  TEST_CASE("attempt counts are geometric in the success probability") {
    RealMatrix m(4, 2);
    m << 1, 0, 0, 1, 1, 1, -1, 0.5;
    const auto chi = build_chi(m);
    const int runs = 4000;
    double total = 0.0;
    double p = 0.0;
    for (int s = 0; s < runs; ++s) {
      const auto in = postselect_input_state(chi, 500 + s);
      total += static_cast<double>(in.attempts);
      p = in.success_probability;
    }
    const double mean = 1.0 / p;
    const double sigma = std::sqrt((1.0 - p) / (p * p) / runs);
    CHECK(std::abs(total / runs - mean) <= 3.0 * sigma);
  }

  TEST_CASE("density of K matches the normalized Gram matrix") {
    const auto rho = prepare_density_k(f_example());
    const RealMatrix expected = f_example().transpose() * f_example() / 4.0;
    CHECK(rho.dim() == 4);
    CHECK(frobenius(rho.cropped(3), expected.cast<Complex>()) < 1e-14);
    CHECK(std::abs(rho.entries()(3, 3)) == 0.0);

    Rng rng(43);
    for (int trial = 0; trial < 20; ++trial) {
      const RealMatrix m = random_real(6, 3, rng);
      const auto chi = build_chi(m);
      const auto traced = partial_trace(chi.state, chi.layout, kDataRegister);
      CHECK(frobenius(prepare_density_k(m).entries(), traced.entries()) < 1e-12);
      const RealMatrix gram = m.transpose() * m / m.squaredNorm();
      CHECK(frobenius(traced.cropped(3), gram.cast<Complex>()) < 1e-12);
    }
  }

  TEST_CASE("sample state appends the bias coordinate") {
    const RealVector x{{1.0, 2.0}};
    const auto s = prepare_sample_state(x);
    CHECK(sample_norm_squared(x) == doctest::Approx(6.0));
    CHECK(s.dim() == 4);
    CHECK(std::abs(s[2] - 1.0 / std::sqrt(6.0)) < 1e-15);
    CHECK(std::abs(s[3]) == 0.0);
    CHECK(sample_norm_squared(RealVector(RealVector::Zero(3))) == doctest::Approx(1.0));
  }
}
