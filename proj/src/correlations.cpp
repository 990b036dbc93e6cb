#include "pwtime/correlations.hpp"

#include <cmath>

namespace pwtime {

JointDistribution::JointDistribution(const std::array<std::array<double, 2>, 2>& cells,
                                     double ph)
    : p(cells), phase(ph) {
  double sum = 0.0;
  for (const auto& row : p)
    for (double cell : row) {
      if (cell < 0.0) throw NumericError("joint probability cell is negative");
      sum += cell;
    }
  if (std::abs(sum - 1.0) > 1e-12)
    throw NumericError("joint probabilities must sum to 1");
}

JointDistribution extract_joint(const HistoryState& h) {
  if (h.measurements() != 2)
    throw std::invalid_argument("joint extraction needs a two-measurement history");
  const StateVector slice = condition_on_time(h, *h.kb).normalized();
  std::array<std::array<double, 2>, 2> cells{};
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      double w = 0.0;
      for (Eigen::Index s = 0; s < 2; ++s)
        w += std::norm(
            slice.amps((s * kMemoryDim + record_level(a)) * kMemoryDim + record_level(b)));
      cells[a][b] = w;
    }
  const double phase = h.omega * h.clock.dt * static_cast<double>(*h.kb - *h.ka);
  return {cells, phase};
}

ConditionalTable bayes_conditional(const JointDistribution& j) {
  ConditionalTable t{};
  for (int a = 0; a < 2; ++a) {
    const double pa = j.marginal_a(a);
    t.defined[a] = pa > 1e-15;
    for (int b = 0; b < 2; ++b) t.p[a][b] = t.defined[a] ? j.p[a][b] / pa : 0.0;
  }
  return t;
}

JointDistribution analytic_joint(double phase) {
  const double c = std::cos(phase), s = std::sin(phase);
  const double same = 0.5 * c * c, diff = 0.5 * s * s;
  return {{{{same, diff}, {diff, same}}}, phase};
}

double two_time_correlation(const JointDistribution& j) {
  return j.p[0][0] - j.p[0][1] - j.p[1][0] + j.p[1][1];
}

}  // namespace pwtime
