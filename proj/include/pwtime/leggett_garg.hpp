#pragma once

#include "pwtime/sampling.hpp"

#include <optional>
#include <vector>

namespace pwtime {

struct LgSampling {
  std::uint64_t shots;
  std::uint64_t seed;
};

struct LgSampled {
  double c12_hat, c23_hat, c13_hat;
  double k3_hat;
  double k3_se;
  CountRecord r12, r23, r13;
};

struct LgPoint {
  double x;  // dimensionless phase w * delta_t between successive measurements
  double c12, c23, c13;
  double k3;
  bool violated;  // k3 > 1: impossible for a classical realistic model
  std::optional<LgSampled> sampled;
};

/// K3 = c12 + c23 - c13; inputs must lie in [-1, 1].
double k3_combine(double c12, double c23, double c13);

/// Closed form K3(x) = 2 cos(2x) - cos(4x); maximum 1.5 at x = pi/6.
double k3_analytic(double x);

// Number of lattice steps realizing the phase x = omega*gap*dt. Throws if x
// is not a whole (positive) number of steps, naming the nearest realizable
// phase.
Eigen::Index lattice_gap_for_phase(const ClockRegister& c, double omega, double x);

// Builds the three two-measurement histories behind K3(x): gap phase x for
// c12, doubled gap for c13, and for c23 the same gap with the initial state
// pre-evolved through x, which makes the first measurement noninvasive (the
// initial state is stationary, so this reproduces the middle interval
// without a third memory). With `sampling`, counts for the three
// correlations are drawn with child seeds (seed, 0..2).
LgPoint k3_simulated(const ClockRegister& c, double omega, double x,
                     const std::optional<LgSampling>& sampling = std::nullopt);

// Pointwise k3_simulated over a phase grid; output order follows the grid.
// Sampled child seeds derive from (master seed, point index), so any
// thread count gives identical results.
std::vector<LgPoint> k3_sweep(const ClockRegister& c, double omega,
                              const std::vector<double>& grid,
                              const std::optional<LgSampling>& sampling = std::nullopt,
                              int threads = 1);

}  // namespace pwtime
