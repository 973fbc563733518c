#pragma once

#include <Eigen/Core>

#include <cmath>
#include <cstdint>

namespace polyfam {

// Counter-based generator: every draw is a pure function of (seed, counter),
// so sampling is deterministic under any parallel schedule.
struct CounterRng {
  std::uint64_t seed;

  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t bits(std::uint64_t counter) const {
    return mix(seed ^ mix(counter));
  }

  // Uniform in (0, 1).
  double uniform(std::uint64_t counter) const {
    return (double(bits(counter) >> 11) + 0.5) * 0x1.0p-53;
  }
};

// Uniform Dirichlet weights on the simplex, indexed by sample number.
inline Eigen::VectorXd dirichlet_weights(Eigen::Index n, const CounterRng& rng,
                                         std::uint64_t sample_index) {
  Eigen::VectorXd w(n);
  double sum = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    double e = -std::log(rng.uniform(sample_index * std::uint64_t(n) + std::uint64_t(i)));
    w[i] = e;
    sum += e;
  }
  return w / sum;
}

}  // namespace polyfam
