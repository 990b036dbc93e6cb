#pragma once

#include "pwtime/correlations.hpp"

#include <array>
#include <cstdint>
#include <utility>

namespace pwtime {

// splitmix64: state advances by the golden-gamma constant and the output is
// the finalized state (Vigna's reference constants). Small enough to respecify
// in any language, which is what makes recorded counts portable; the README
// carries test vectors and the unit tests freeze them.
struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0,1) from the top 53 bits.
  double next_unit() {
    return static_cast<double>(next() >> 11) * (1.0 / 9007199254740992.0);
  }
};

// O(1) jump to the (index+1)-th output of the master stream; used to hand
// independent child seeds to sweep points so serial and parallel runs draw
// identical counts.
std::uint64_t child_seed(std::uint64_t master, std::uint64_t index);

// One finite-shot detection record: multinomial counts over the four record
// pairs plus the derived per-cell estimates. Identical (distribution, shots,
// seed) always reproduces bit-identical counts.
struct CountRecord {
  std::array<std::array<std::uint64_t, 2>, 2> counts;
  std::uint64_t shots;
  std::uint64_t seed;
  double phase;

  double estimate(int ia, int ib) const;
  /// Binomial standard error sqrt(p_hat (1 - p_hat) / shots) for one cell.
  double std_err(int ia, int ib) const;
  JointDistribution estimated_joint() const;
};

// One multinomial draw via per-shot inverse CDF over the four cells in
// fixed (a,b) lexicographic order (+,+), (+,-), (-,+), (-,-).
CountRecord draw_counts(const JointDistribution& j, std::uint64_t shots,
                        std::uint64_t seed);

// c_hat = 2*p_same_hat - 1 and its standard error
// 2*sqrt(p_same_hat (1 - p_same_hat) / shots).
std::pair<double, double> correlation_estimate(const CountRecord& r);

// K3 estimate from three independent runs, errors propagated as
// uncorrelated: sqrt(se12^2 + se23^2 + se13^2).
std::pair<double, double> estimate_k3(const CountRecord& r12, const CountRecord& r23,
                                      const CountRecord& r13);

}  // namespace pwtime
