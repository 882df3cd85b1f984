#pragma once

#include <cstdint>

#include "qtsvm/classical.hpp"

namespace qtsvm {

/// Hyperplane {x : normal . x + offset = 0}.
struct GeneratorPlane {
  RealVector normal;
  double offset = 0.0;
};

struct SynthSpec {
  Eigen::Index n = 2;
  Eigen::Index m1 = 16;
  Eigen::Index m2 = 16;
  GeneratorPlane plane1;
  GeneratorPlane plane2;
  double noise_sigma = 0.0;
  double span = 1.0;  // in-plane points come from projecting U[-span, span]^n
  std::uint64_t seed = 0;
};

/// Two crossing lines through the unit square: y = x for the positive class
/// and y = 1 - x for the negative one.
SynthSpec crossplanes_spec(Eigen::Index m1, Eigen::Index m2, double noise_sigma,
                           std::uint64_t seed);

/// Positive rows lie on plane1, negative rows on plane2, each perturbed by
/// isotropic Gaussian noise. Deterministic per seed.
Dataset generate_crossplanes(const SynthSpec& spec);

}  // namespace qtsvm
