#pragma once

#include "pwtime/history.hpp"

#include <array>

namespace pwtime {

// Joint record distribution p(a,b) with a,b in {+1,-1}; cell [0][0] is
// (+1,+1), second index moves fastest. `phase` is the dimensionless
// w*(t_b - t_a) the distribution belongs to.
struct JointDistribution {
  std::array<std::array<double, 2>, 2> p;
  double phase;

  /// Cells must be nonnegative and sum to 1 within 1e-12.
  JointDistribution(const std::array<std::array<double, 2>, 2>& cells, double ph);

  double marginal_a(int ia) const { return p[ia][0] + p[ia][1]; }
  double p_same() const { return p[0][0] + p[1][1]; }
  double p_diff() const { return p[0][1] + p[1][0]; }
};

// Bayes conditionals p(b|a); rows with vanishing marginal are flagged
// undefined rather than silently zero-filled.
struct ConditionalTable {
  std::array<std::array<double, 2>, 2> p;
  std::array<bool, 2> defined;
};

// Born-rule joint over the two records, read from the renormalized
// conditioned state at the first lattice point after the second
// measurement (any later point gives the same distribution).
JointDistribution extract_joint(const HistoryState& h);

ConditionalTable bayes_conditional(const JointDistribution& j);

/// Closed form: p(a=b) = cos^2(phase)/2 per cell, p(a != b) = sin^2(phase)/2.
JointDistribution analytic_joint(double phase);

/// C = sum_ab Q_a Q_b p(a,b) with Q = +1, -1.
double two_time_correlation(const JointDistribution& j);

}  // namespace pwtime
