#pragma once

#include <cstdint>

namespace fracyam {

/// Deterministic generator (xoshiro256**) with explicit distributions, so
/// results are bit-identical across platforms and standard library versions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64();
  double uniform();                 // [0,1)
  double uniform(double a, double b);
  double normal();                  // Box-Muller, no cached spare
  double gamma_dist(double shape);  // Marsaglia-Tsang, scale 1
  double beta_dist(double a, double b);

 private:
  std::uint64_t s_[4];
};

}  // namespace fracyam
