#pragma once

#include "pwtime/kernel.hpp"

namespace pwtime {

// Two-level system: photon polarization. Basis order is fixed project-wide:
// index 0 = |H> = outcome Q = +1, index 1 = |V> = outcome Q = -1.
struct Qubit {
  Eigen::Vector2cd amps;

  /// Requires unit norm within 1e-12 (in particular, rejects the zero vector).
  explicit Qubit(const Eigen::Vector2cd& a);

  static Qubit normalized(Complex h, Complex v);
  StateVector state() const;
};

Qubit horizontal();
Qubit vertical();

/// (|H> + |V>)/sqrt(2): the +1 eigenstate of sigma_x.
Qubit initial_state();

// Waveplate evolution through optical thickness delta:
//   U|H> = cos(d)|H> + i sin(d)|V>,  U|V> = i sin(d)|H> + cos(d)|V>,
// i.e. exp(i d sigma_x). Time evolution is U_t = evolution(w*t).
Operator evolution(double delta);

// Generator of the waveplate evolution with delta = w*t:
// H_s = -w sigma_x, so exp(-i H_s t) = evolution(w*t). Eigenvalues -w, +w
// on (|H>+|V>)/sqrt(2), (|H>-|V>)/sqrt(2).
Operator system_hamiltonian(double omega);

// Measurement basis given as a unitary pre-rotation of {|H>,|V>}; column o
// is the eigenstate recorded as outcome o (0 -> Q=+1, 1 -> Q=-1). Default
// is the identity, i.e. the plain H/V basis.
struct MeasurementBasis {
  Eigen::Matrix2cd rot = Eigen::Matrix2cd::Identity();

  MeasurementBasis() = default;
  explicit MeasurementBasis(const Eigen::Matrix2cd& u);  // must be unitary

  Eigen::Vector2cd ket(int outcome) const;
};

}  // namespace pwtime
