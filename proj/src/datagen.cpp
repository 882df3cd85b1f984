#include "qtsvm/datagen.hpp"

#include <random>

#include "qtsvm/errors.hpp"

namespace qtsvm {

namespace {

RealMatrix sample_plane(const GeneratorPlane& plane, Eigen::Index rows, const SynthSpec& spec,
                        std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uniform(-spec.span, spec.span);
  std::normal_distribution<double> noise(0.0, 1.0);
  const double nn = plane.normal.squaredNorm();
  RealMatrix out(rows, spec.n);
  for (Eigen::Index r = 0; r < rows; ++r) {
    RealVector u(spec.n);
    for (Eigen::Index k = 0; k < spec.n; ++k) u(k) = uniform(rng);
    const RealVector on_plane = u - ((plane.normal.dot(u) + plane.offset) / nn) * plane.normal;
    for (Eigen::Index k = 0; k < spec.n; ++k) {
      const double z = noise(rng);
      out(r, k) = on_plane(k) + spec.noise_sigma * z;
    }
  }
  return out;
}

}  // namespace

SynthSpec crossplanes_spec(Eigen::Index m1, Eigen::Index m2, double noise_sigma,
                           std::uint64_t seed) {
  SynthSpec spec;
  spec.n = 2;
  spec.m1 = m1;
  spec.m2 = m2;
  spec.plane1 = GeneratorPlane{RealVector{{1.0, -1.0}}, 0.0};
  spec.plane2 = GeneratorPlane{RealVector{{1.0, 1.0}}, -1.0};
  spec.noise_sigma = noise_sigma;
  spec.span = 1.0;
  spec.seed = seed;
  return spec;
}

Dataset generate_crossplanes(const SynthSpec& spec) {
  if (spec.n < 1 || spec.m1 < 1 || spec.m2 < 1) {
    throw InvalidSpec("dimension and class sizes must be >= 1");
  }
  if (spec.plane1.normal.size() != spec.n || spec.plane2.normal.size() != spec.n) {
    throw InvalidSpec("generator normals must have length n");
  }
  if (!(spec.plane1.normal.norm() > 0.0) || !(spec.plane2.normal.norm() > 0.0)) {
    throw InvalidSpec("generator normals must be nonzero");
  }
  if (!(spec.noise_sigma >= 0.0) || !(spec.span > 0.0)) {
    throw InvalidSpec("noise must be >= 0 and span > 0");
  }
  std::mt19937_64 rng(spec.seed);
  RealMatrix positive = sample_plane(spec.plane1, spec.m1, spec, rng);
  RealMatrix negative = sample_plane(spec.plane2, spec.m2, spec, rng);
  return Dataset(std::move(positive), std::move(negative));
}

}  // namespace qtsvm
