#pragma once

#include "pwtime/kernel.hpp"

namespace pwtime {

// n-point periodic time lattice with spacing dt: t_k = k*dt, span n*dt.
// n must be even (>= 4) so the signed momentum grid is symmetric around 0
// up to the one unpaired Nyquist mode. hbar = 1 throughout: every observable
// in this project depends only on the dimensionless phase w*(t_b - t_a).
struct ClockRegister {
  Eigen::Index n;
  double dt;

  ClockRegister(Eigen::Index n, double dt);

  double time(Eigen::Index k) const { return dt * static_cast<double>(k); }
  double span() const { return dt * static_cast<double>(n); }
};

/// k-th lattice-time basis vector on the n-dimensional clock space.
StateVector time_eigenstate(const ClockRegister& c, Eigen::Index k);

// Clock momentum on the periodic lattice: F diag(w_m) F^dagger with
// w_m = 2 pi m~ / (n dt), m~ the centered (signed) frequency index. The
// centered convention keeps +w and -w paired in the spectrum for every
// commensurate harmonic, which is what lets the global constraint vanish
// exactly (see history module).
Operator momentum_operator(const ClockRegister& c);

/// H_c = hbar * Omega with hbar = 1.
Operator clock_hamiltonian(const ClockRegister& c);

// w = 2 pi j / (n dt) for an integer harmonic 1 <= j <= n/2 - 1; both +w
// and -w are then exact momentum eigenvalues. j outside that range (the
// unpaired Nyquist mode or worse) is rejected.
double commensurate_frequency(const ClockRegister& c, Eigen::Index j);

}  // namespace pwtime
