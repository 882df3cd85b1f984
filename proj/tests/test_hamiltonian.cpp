#include <cmath>

#include "doctest.h"
#include "qtsvm/errors.hpp"
#include "qtsvm/hamiltonian.hpp"
#include "qtsvm/state_prep.hpp"
#include "test_support.hpp"

using namespace qtsvm;
using namespace qtsvm::testing;

namespace {

// Scaling-and-squaring Taylor exponential of -i M t, independent of eigh.
ComplexMatrix taylor_exp(const ComplexMatrix& m, double t) {
  const ComplexMatrix a = m * Complex(0.0, -t);
  int squarings = 0;
  double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
  while (norm > 0.25) {
    norm /= 2.0;
    ++squarings;
  }
  const ComplexMatrix b = a / std::ldexp(1.0, squarings);
  ComplexMatrix term = ComplexMatrix::Identity(m.rows(), m.cols());
  ComplexMatrix sum = term;
  for (int k = 1; k < 30; ++k) {
    term = term * b / static_cast<double>(k);
    sum += term;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

struct Gram {
  RealMatrix e;
  RealMatrix f;
};

Gram random_gram(Eigen::Index m1, Eigen::Index m2, Eigen::Index cols, Rng& rng) {
  return {random_real(m1, cols, rng), random_real(m2, cols, rng)};
}

HamiltonianPair pair_from(const Gram& g, double c1, double c2) {
  return assemble_hamiltonians(prepare_density_k(g.e), prepare_density_k(g.f), g.e.squaredNorm(),
                               g.f.squaredNorm(), c1, c2);
}

double op_norm(const ComplexMatrix& m) {
  return Eigen::JacobiSVD<ComplexMatrix>(m).singularValues()(0);
}

}  // namespace

TEST_SUITE("hamiltonian_sim") {
  TEST_CASE("assembled Hamiltonians equal the trace-normalized direct sums") {
    Rng rng(51);
    for (int trial = 0; trial < 20; ++trial) {
      const Gram g = random_gram(5, 7, 4, rng);
      const double c1 = 0.3 + trial * 0.2, c2 = 2.5 - trial * 0.1;
      const auto pair = pair_from(g, c1, c2);
      const RealMatrix k1 = g.e.transpose() * g.e, k2 = g.f.transpose() * g.f;
      const RealMatrix h1 = k1 / c1 + k2, h2 = k1 + k2 / c2;
      CHECK(frobenius(pair.h1_hat.entries(), (h1 / h1.trace()).cast<Complex>()) < 1e-12);
      CHECK(frobenius(pair.h2_hat.entries(), (h2 / h2.trace()).cast<Complex>()) < 1e-12);
      CHECK(std::abs(pair.h1_hat.entries().trace() - 1.0) < 1e-12);
      CHECK(std::abs(pair.h2_hat.entries().trace() - 1.0) < 1e-12);
      const auto [a, b] = pair.weights(Side::kFirst);
      CHECK(a + b == doctest::Approx(1.0));
    }
  }

  TEST_CASE("equal penalties and equal data give the shared density") {
    Rng rng(52);
    const RealMatrix m = random_real(6, 3, rng);
    const auto rho = prepare_density_k(m);
    const auto pair = assemble_hamiltonians(rho, rho, m.squaredNorm(), m.squaredNorm(), 1.0, 1.0);
    CHECK(frobenius(pair.h1_hat.entries(), rho.entries()) < 1e-12);
    CHECK(frobenius(pair.h2_hat.entries(), rho.entries()) < 1e-12);
  }

  TEST_CASE("large penalty limit") {
    Rng rng(53);
    const Gram g = random_gram(5, 5, 3, rng);
    const auto pair = pair_from(g, 1e9, 1e9);
    CHECK(frobenius(pair.h1_hat.entries(), pair.k2_hat.entries()) < 1e-8);
    CHECK(frobenius(pair.h2_hat.entries(), pair.k1_hat.entries()) < 1e-8);
    CHECK_THROWS_AS(pair_from(g, 0.0, 1.0), InvalidPenalty);
  }

  TEST_CASE("trotter factors are unitary and the zero step is the identity") {
    Rng rng(54);
    const auto pair = pair_from(random_gram(4, 4, 3, rng), 1.0, 2.0);
    const ComplexMatrix id = ComplexMatrix::Identity(4, 4);
    CHECK(frobenius(trotter_step(pair, Side::kFirst, 0.0), id) < 1e-14);
    const ComplexMatrix u = trotter_step(pair, Side::kSecond, 0.37);
    CHECK(frobenius(u * u.adjoint(), id) < 1e-12);
  }

  TEST_CASE("trotter step matches an independent Taylor product") {
    Rng rng(55);
    for (int trial = 0; trial < 10; ++trial) {
      const auto pair = pair_from(random_gram(5, 6, 4, rng), 0.8, 1.7);
      for (Side side : {Side::kFirst, Side::kSecond}) {
        const auto [a, b] = pair.weights(side);
        const double dt = 0.05 * (trial + 1);
        const ComplexMatrix oracle = taylor_exp(pair.k1_hat.entries(), a * dt) *
                                     taylor_exp(pair.k2_hat.entries(), b * dt);
        CHECK(frobenius(trotter_step(pair, side, dt), oracle) < 1e-12);
        const TrotterConfig cfg{1.0, 4};
        const ComplexMatrix step = taylor_exp(pair.k1_hat.entries(), a * 0.25) *
                                   taylor_exp(pair.k2_hat.entries(), b * 0.25);
        CHECK(frobenius(simulate_evolution(pair, side, cfg), step * step * step * step) < 1e-12);
      }
    }
  }

  TEST_CASE("commuting pairs are exact at every step count") {
    Rng rng(56);
    const ComplexMatrix u = random_unitary(4, rng);
    const auto diag = [&](RealVector v) {
      v /= v.sum();
      return DensityMatrix(ComplexMatrix(u * v.cast<Complex>().asDiagonal() * u.adjoint()));
    };
    const auto pair = assemble_hamiltonians(diag(RealVector{{1, 2, 3, 4}}),
                                            diag(RealVector{{4, 1, 1, 2}}), 3.0, 5.0, 0.7, 1.3);
    const auto report = trotter_error_report(pair, Side::kFirst, 1.0, {1, 2, 4, 8});
    CHECK(report.commuting);
    CHECK_FALSE(report.single_step_slope.has_value());
    for (const auto& row : report.rows) CHECK(row.total_error < 1e-11);
  }

  TEST_CASE("non-commuting pairs show second-order single steps and first-order totals") {
    Rng rng(57);
    for (int trial = 0; trial < 5; ++trial) {
      const auto pair = pair_from(random_gram(4, 4, 4, rng), 1.0, 1.0);
      std::vector<int> steps;
      for (int s = 1; s <= 128; s *= 2) steps.push_back(s);
      const auto report = trotter_error_report(pair, Side::kFirst, 0.1, steps);
      REQUIRE(report.single_step_slope.has_value());
      CHECK(*report.single_step_slope >= 1.8);
      CHECK(*report.single_step_slope <= 2.2);
      for (double r : report.doubling_ratios) {
        CHECK(r >= 1.7);
        CHECK(r <= 2.3);
      }
      // Total error after T steps stays below the one-step error over t0.
      for (const auto& row : report.rows) CHECK(row.total_error <= report.rows.front().total_error + 1e-15);
      const ComplexMatrix exact = taylor_exp(pair.h1_hat.entries(), 0.1);
      CHECK(std::abs(report.rows.back().total_error -
                     op_norm(simulate_evolution(pair, Side::kFirst, {0.1, 128}) - exact)) < 1e-12);
    }
  }

  TEST_CASE("loglog slope of exact power laws") {
    std::vector<double> x, y;
    for (int i = 1; i <= 6; ++i) {
      x.push_back(std::pow(2.0, -i));
      y.push_back(3.0 * std::pow(x.back(), 2.5));
    }
    CHECK(loglog_slope(x, y) == doctest::Approx(2.5).epsilon(1e-10));
  }
}
