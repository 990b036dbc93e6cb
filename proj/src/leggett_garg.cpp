#include "pwtime/leggett_garg.hpp"

#include <cmath>
#include <sstream>
#include <thread>

namespace pwtime {

double k3_combine(double c12, double c23, double c13) {
  for (double c : {c12, c23, c13})
    if (std::abs(c) > 1.0 + 1e-9)
      throw std::invalid_argument("correlation outside [-1, 1]");
  return c12 + c23 - c13;
}

double k3_analytic(double x) { return 2.0 * std::cos(2.0 * x) - std::cos(4.0 * x); }

Eigen::Index lattice_gap_for_phase(const ClockRegister& c, double omega, double x) {
  if (!(omega > 0.0))
    throw std::invalid_argument("phase realization requires omega > 0");
  const double step = omega * c.dt;  // phase advanced per lattice step
  const double g_real = x / step;
  const auto g = static_cast<Eigen::Index>(std::llround(g_real));
  if (g < 1 || std::abs(g_real - static_cast<double>(g)) >
                   1e-9 * std::max(1.0, std::abs(g_real))) {
    const double nearest = step * static_cast<double>(std::max<Eigen::Index>(g, 1));
    std::ostringstream msg;
    msg << "phase " << x << " is not a whole number of lattice steps at omega*dt="
        << step << "; nearest realizable phase is " << nearest;
    throw std::invalid_argument(msg.str());
  }
  return g;
}

LgPoint k3_simulated(const ClockRegister& c, double omega, double x,
                     const std::optional<LgSampling>& sampling) {
  const Eigen::Index gap = lattice_gap_for_phase(c, omega, x);
  const Eigen::Index ka = 1;
  if (ka + 2 * gap > c.n - 1) {
    std::ostringstream msg;
    msg << "doubled interval does not fit: need ka + 2*gap <= n - 1, got gap=" << gap
        << " at n=" << c.n;
    throw std::invalid_argument(msg.str());
  }
  const Qubit psi0 = initial_state();
  const Qubit psi0_pre(evolution(x).mat * psi0.amps);

  const JointDistribution j12 =
      extract_joint(double_measurement_history(c, psi0, omega, ka, ka + gap));
  const JointDistribution j23 =
      extract_joint(double_measurement_history(c, psi0_pre, omega, ka, ka + gap));
  const JointDistribution j13 =
      extract_joint(double_measurement_history(c, psi0, omega, ka, ka + 2 * gap));

  LgPoint p{};
  p.x = x;
  p.c12 = two_time_correlation(j12);
  p.c23 = two_time_correlation(j23);
  p.c13 = two_time_correlation(j13);
  p.k3 = k3_combine(p.c12, p.c23, p.c13);
  p.violated = p.k3 > 1.0;

  if (sampling) {
    const CountRecord r12 = draw_counts(j12, sampling->shots, child_seed(sampling->seed, 0));
    const CountRecord r23 = draw_counts(j23, sampling->shots, child_seed(sampling->seed, 1));
    const CountRecord r13 = draw_counts(j13, sampling->shots, child_seed(sampling->seed, 2));
    const auto [k3_hat, k3_se] = estimate_k3(r12, r23, r13);
    p.sampled = LgSampled{correlation_estimate(r12).first, correlation_estimate(r23).first,
                          correlation_estimate(r13).first, k3_hat, k3_se, r12, r23, r13};
  }
  return p;
}

std::vector<LgPoint> k3_sweep(const ClockRegister& c, double omega,
                              const std::vector<double>& grid,
                              const std::optional<LgSampling>& sampling, int threads) {
  if (threads < 1) throw std::invalid_argument("thread count must be >= 1");
  std::vector<LgPoint> out(grid.size());
  auto run_point = [&](std::size_t i) {
    std::optional<LgSampling> point_sampling;
    if (sampling) point_sampling = LgSampling{sampling->shots, child_seed(sampling->seed, i)};
    out[i] = k3_simulated(c, omega, grid[i], point_sampling);
  };
  if (threads == 1 || grid.size() < 2) {
    for (std::size_t i = 0; i < grid.size(); ++i) run_point(i);
  } else {
    const int used = std::min<int>(threads, static_cast<int>(grid.size()));
    std::vector<std::exception_ptr> errors(used);
    std::vector<std::thread> pool;
    pool.reserve(used);
    for (int t = 0; t < used; ++t)
      pool.emplace_back([&, t] {
        try {
          for (std::size_t i = t; i < grid.size(); i += used) run_point(i);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    for (auto& th : pool) th.join();
    for (const auto& e : errors)
      if (e) std::rethrow_exception(e);
  }
  return out;
}

}  // namespace pwtime
