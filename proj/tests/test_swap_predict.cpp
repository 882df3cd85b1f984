#include <cmath>

#include "doctest.h"
#include "qtsvm/classical.hpp"
#include "qtsvm/errors.hpp"
#include "qtsvm/state_prep.hpp"
#include "qtsvm/swap_predict.hpp"
#include "test_support.hpp"

using namespace qtsvm;
using namespace qtsvm::testing;

namespace {

// Dense circuit: ancilla (high bit) H, controlled SWAP as a permutation
// matrix, H again; returns P(ancilla = 0).
double dense_swap_p0(const StateVector& a, const StateVector& b) {
  const Eigen::Index d = a.dim();
  const Eigen::Index n = 2 * d * d;
  ComplexVector psi = ComplexVector::Zero(n);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) psi(i * d + j) = a[i] * b[j];
  ComplexMatrix h = ComplexMatrix::Zero(n, n);
  const double s = 1.0 / std::sqrt(2.0);
  for (Eigen::Index r = 0; r < d * d; ++r) {
    h(r, r) = s;
    h(r, r + d * d) = s;
    h(r + d * d, r) = s;
    h(r + d * d, r + d * d) = -s;
  }
  ComplexMatrix cswap = ComplexMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) {
      cswap(i * d + j, i * d + j) = 1.0;
      cswap(d * d + j * d + i, d * d + i * d + j) = 1.0;
    }
  const ComplexVector out = h * cswap * h * psi;
  return out.head(d * d).squaredNorm();
}

ClassicalModel random_model(Eigen::Index n, Rng& rng) {
  ClassicalModel m;
  const RealMatrix p = random_real(2, n + 1, rng);
  m.plane1 = Hyperplane{p.row(0).head(n).transpose(), p(0, n)};
  m.plane2 = Hyperplane{p.row(1).head(n).transpose(), p(1, n)};
  return m;
}

StateVector plane_state(const Hyperplane& h) { return normalize_to_state(h.stacked()); }

}  // namespace

TEST_SUITE("swap_predict") {
  TEST_CASE("swap test on identical and orthogonal states") {
    const auto zero = StateVector::basis(1, 0);
    const auto one = StateVector::basis(1, 1);
    CHECK(swap_test(zero, zero, 1000, 1).exact_p0 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(swap_test(zero, one, 1000, 1).exact_p0 == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(swap_test(zero, zero, 1000, 1).sampled_p0 == 1.0);
    CHECK_THROWS_AS(swap_test(zero, StateVector::basis(2, 0), 10, 1), DimensionMismatch);
  }

  TEST_CASE("property: simulated circuit matches the dense oracle") {
    Rng rng(71);
    for (int trial = 0; trial < 100; ++trial) {
      const int q = 1 + trial % 3;
      const auto a = random_state(q, rng);
      const auto b = random_state(q, rng);
      const auto r = swap_test(a, b, 100, trial);
      const double overlap = std::norm(a.amplitudes().dot(b.amplitudes()));
      CHECK(std::abs(r.exact_p0 - (1.0 + overlap) / 2.0) <= 1e-12);
      CHECK(std::abs(r.exact_p0 - dense_swap_p0(a, b)) <= 1e-12);
      CHECK(r.estimate >= 0.0);
      CHECK(r.estimate <= 1.0);
    }
  }

  TEST_CASE("sampled overlap concentrates at the shot-noise scale") {
    Rng rng(72);
    const auto a = random_state(2, rng);
    const auto b = random_state(2, rng);
    int within = 0;
    const int seeds = 200;
    for (int s = 0; s < seeds; ++s) {
      const auto r = swap_test(a, b, 100000, 9000 + s);
      if (std::abs(r.estimate - r.exact_overlap()) <= 0.01) ++within;
    }
    CHECK(within >= seeds * 99 / 100);
  }

  TEST_CASE("norm estimate of a hyperplane state") {
    const auto s = normalize_to_state(RealVector{{3.0, 0.0, 4.0}});
    const auto est = estimate_norm_w(s, 2, 100000, 3);
    CHECK(est.exact == doctest::Approx(9.0 / 25.0).epsilon(1e-12));
    CHECK(std::abs(est.estimate - est.exact) < 0.01);
    // Amplitude on the padding slot is rejected.
    const auto leaky = normalize_to_state(RealVector{{1.0, 0.0, 1.0, 1.0}});
    CHECK_THROWS_AS(estimate_norm_w(leaky, 2, 100, 1), PaddingLeakage);
  }

  TEST_CASE("exact ratios are the classical squared distances") {
    Rng rng(73);
    for (int trial = 0; trial < 100; ++trial) {
      const Eigen::Index n = 1 + trial % 4;
      const auto model = random_model(n, rng);
      const RealVector x = random_real(n, 1, rng);
      PredictionConfig cfg;
      cfg.exact = true;
      const auto q = classify(x, plane_state(model.plane1), plane_state(model.plane2), cfg);
      const auto c = predict_classical(model, x);
      CHECK(std::abs(q.estimates.ratio1 - c.d1 * c.d1) <= 1e-9 * (1.0 + c.d1 * c.d1));
      CHECK(std::abs(q.estimates.ratio2 - c.d2 * c.d2) <= 1e-9 * (1.0 + c.d2 * c.d2));
      if (std::abs(c.d1 - c.d2) > 1e-9) CHECK(q.label == c.label);
      CHECK(q.estimates.sample_norm == doctest::Approx(x.squaredNorm() + 1.0));
    }
  }

  TEST_CASE("hyperplane states are sign insensitive") {
    Rng rng(74);
    const auto model = random_model(2, rng);
    const RealVector x = random_real(2, 1, rng);
    PredictionConfig cfg;
    cfg.exact = true;
    const auto a = classify(x, plane_state(model.plane1), plane_state(model.plane2), cfg);
    const StateVector flipped(ComplexVector(-plane_state(model.plane1).amplitudes()));
    const auto b = classify(x, flipped, plane_state(model.plane2), cfg);
    CHECK(a.estimates.ratio1 == doctest::Approx(b.estimates.ratio1));
    CHECK(a.label == b.label);
  }

  TEST_CASE("sampled classification is reproducible and agrees away from ties") {
    Rng rng(75);
    const auto model = random_model(2, rng);
    const auto s1 = plane_state(model.plane1);
    const auto s2 = plane_state(model.plane2);
    PredictionConfig cfg;
    cfg.seed = 11;
    int agree = 0, counted = 0;
    for (int i = 0; i < 50; ++i) {
      const RealVector x = random_real(2, 1, rng);
      const auto c = predict_classical(model, x);
      const auto q = classify(x, s1, s2, cfg);
      CHECK(q.label == classify(x, s1, s2, cfg).label);
      if (std::abs(c.d1 * c.d1 - c.d2 * c.d2) > 0.2 * (1.0 + c.d1 * c.d1 + c.d2 * c.d2)) {
        ++counted;
        agree += q.label == c.label;
      }
    }
    CHECK(agree == counted);
  }

  TEST_CASE("degenerate hyperplanes and shape errors") {
    PredictionConfig cfg;
    cfg.exact = true;
    const auto bias_only = normalize_to_state(RealVector{{0.0, 0.0, 1.0}});
    const auto good = normalize_to_state(RealVector{{1.0, 1.0, 1.0}});
    CHECK_THROWS_AS(classify(RealVector{{1.0, 2.0}}, bias_only, good, cfg), DegenerateHyperplane);
    CHECK_THROWS_AS(classify(RealVector{{1.0, 2.0, 3.0, 4.0}}, good, good, cfg), DimensionMismatch);
    cfg.exact = false;
    cfg.shots = 0;
    CHECK_THROWS_AS(classify(RealVector{{1.0, 2.0}}, good, good, cfg), InvalidSpec);
  }
}
