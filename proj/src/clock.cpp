#include "pwtime/clock.hpp"

#include <numbers>
#include <string>

namespace pwtime {

ClockRegister::ClockRegister(Eigen::Index n_, double dt_) : n(n_), dt(dt_) {
  if (n < 4 || n % 2 != 0)
    throw std::invalid_argument("clock lattice size must be even and >= 4");
  if (!(dt > 0.0)) throw std::invalid_argument("clock spacing dt must be > 0");
}

StateVector time_eigenstate(const ClockRegister& c, Eigen::Index k) {
  if (k < 0 || k >= c.n)
    throw std::invalid_argument("time eigenstate index out of range");
  Vec v = Vec::Zero(c.n);
  v(k) = 1.0;
  return {std::move(v), {c.n}};
}

Operator momentum_operator(const ClockRegister& c) {
  const Operator f = dft(c.n);
  Vec freqs(c.n);
  for (Eigen::Index m = 0; m < c.n; ++m) {
    const Eigen::Index centered = (m <= c.n / 2 - 1) ? m : m - c.n;
    freqs(m) = 2.0 * std::numbers::pi * static_cast<double>(centered) /
               (static_cast<double>(c.n) * c.dt);
  }
  Operator omega(f.mat * freqs.asDiagonal() * f.mat.adjoint(), {c.n});
  omega.hermitian = true;
  return omega;
}

Operator clock_hamiltonian(const ClockRegister& c) {
  return momentum_operator(c);  // hbar = 1
}

double commensurate_frequency(const ClockRegister& c, Eigen::Index j) {
  if (j < 1 || j > c.n / 2 - 1)
    throw std::invalid_argument(
        "harmonic must satisfy 1 <= j <= n/2 - 1 (Nyquist rule: -w must also "
        "lie on the momentum grid), got j=" + std::to_string(j) +
        " at n=" + std::to_string(c.n));
  return 2.0 * std::numbers::pi * static_cast<double>(j) /
         (static_cast<double>(c.n) * c.dt);
}

}  // namespace pwtime
