#include "pwtime/sampling.hpp"

#include <cmath>

namespace pwtime {

std::uint64_t child_seed(std::uint64_t master, std::uint64_t index) {
  SplitMix64 g(master + index * 0x9E3779B97F4A7C15ULL);
  return g.next();
}

double CountRecord::estimate(int ia, int ib) const {
  return static_cast<double>(counts[ia][ib]) / static_cast<double>(shots);
}

double CountRecord::std_err(int ia, int ib) const {
  const double p = estimate(ia, ib);
  return std::sqrt(p * (1.0 - p) / static_cast<double>(shots));
}

JointDistribution CountRecord::estimated_joint() const {
  return {{{{estimate(0, 0), estimate(0, 1)}, {estimate(1, 0), estimate(1, 1)}}}, phase};
}

CountRecord draw_counts(const JointDistribution& j, std::uint64_t shots,
                        std::uint64_t seed) {
  if (shots < 1) throw std::invalid_argument("shots must be >= 1");
  const double c0 = j.p[0][0];
  const double c1 = c0 + j.p[0][1];
  const double c2 = c1 + j.p[1][0];
  SplitMix64 gen(seed);
  std::array<std::array<std::uint64_t, 2>, 2> counts{};
  for (std::uint64_t s = 0; s < shots; ++s) {
    const double u = gen.next_unit();
    if (u < c0)
      ++counts[0][0];
    else if (u < c1)
      ++counts[0][1];
    else if (u < c2)
      ++counts[1][0];
    else
      ++counts[1][1];
  }
  return {counts, shots, seed, j.phase};
}

std::pair<double, double> correlation_estimate(const CountRecord& r) {
  const double p_same = r.estimate(0, 0) + r.estimate(1, 1);
  const double c = 2.0 * p_same - 1.0;
  const double se =
      2.0 * std::sqrt(p_same * (1.0 - p_same) / static_cast<double>(r.shots));
  return {c, se};
}

std::pair<double, double> estimate_k3(const CountRecord& r12, const CountRecord& r23,
                                      const CountRecord& r13) {
  const auto [c12, se12] = correlation_estimate(r12);
  const auto [c23, se23] = correlation_estimate(r23);
  const auto [c13, se13] = correlation_estimate(r13);
  const double k3 = c12 + c23 - c13;
  const double se = std::sqrt(se12 * se12 + se23 * se23 + se13 * se13);
  return {k3, se};
}

}  // namespace pwtime
