#pragma once

#include "pwtime/clock.hpp"
#include "pwtime/qubit.hpp"

#include <optional>

namespace pwtime {

// Each measurement writes into its own three-level memory register:
// level 0 is the ready state, levels 1 and 2 hold the records for
// outcomes +1 and -1. Keeping the ready level distinguishable from both
// records is what lets a single state carry before/after regions.
inline constexpr Eigen::Index kMemoryDim = 3;
inline constexpr Eigen::Index kReadyLevel = 0;

/// Memory level holding the record for basis outcome index 0 or 1.
inline Eigen::Index record_level(int outcome) { return outcome + 1; }

// Global "timeless" state over clock (x) system (x memories), with uniform
// clock weight 1/sqrt(n) on every lattice slice. Measurement times, when
// present, split the lattice into the regions [0,ka), [ka,kb), [kb,n); the
// constructors require every region to contain at least one lattice point.
// Immutable after construction; safe to share across threads.
struct HistoryState {
  StateVector state;
  ClockRegister clock;
  double omega;
  Qubit psi0;
  std::optional<Eigen::Index> ka;
  std::optional<Eigen::Index> kb;
  MeasurementBasis basis_a;
  MeasurementBasis basis_b;

  int measurements() const { return (ka ? 1 : 0) + (kb ? 1 : 0); }
};

// |Psi>> = sum_k |t_k> U_{t_k} |psi0> / sqrt(n). For omega produced by
// commensurate_frequency the state lies in the kernel of the global
// Hamiltonian to machine precision; for other omega the caller accepts a
// nonzero constraint residual.
HistoryState free_history(const ClockRegister& c, const Qubit& psi0, double omega);

// Instantaneous record interaction on system (x) memory: conditioned on
// basis column a, the memory levels cycle ready -> record(a) ->
// record(other) -> ready. Only the action on the ready level is physically
// reached; completing the cycle keeps the interaction exactly unitary.
Operator von_neumann_unitary(const MeasurementBasis& basis);

// One measurement at lattice index ka (record visible for k >= ka):
//   sum_{k<ka} |t_k> U_{t_k}|psi0>|ready>/sqrt(n)
// + sum_{k>=ka}|t_k> sum_a <a|psi(t_a)> U_{t_k-t_a}|a>|a>_m /sqrt(n).
HistoryState single_measurement_history(const ClockRegister& c, const Qubit& psi0,
                                        double omega, Eigen::Index ka,
                                        const MeasurementBasis& basis_a = {});

// Two measurements at lattice indices 0 < ka < kb < n; the third region
// carries amplitude <b|U_{t_b-t_a}|a><a|psi(t_a)> on the record pair (a,b).
HistoryState double_measurement_history(const ClockRegister& c, const Qubit& psi0,
                                        double omega, Eigen::Index ka, Eigen::Index kb,
                                        const MeasurementBasis& basis_a = {},
                                        const MeasurementBasis& basis_b = {});

// The same state built by the alternative route: a single piecewise global
// propagator (free evolution interleaved with the record unitaries as each
// measurement time is reached) applied to |psi0, ready, ready> at every
// lattice time. Agrees with double_measurement_history to ~1e-10.
HistoryState history_via_global_propagator(const ClockRegister& c, const Qubit& psi0,
                                           double omega, Eigen::Index ka, Eigen::Index kb,
                                           const MeasurementBasis& basis_a = {},
                                           const MeasurementBasis& basis_b = {});

/// H_c (x) 1 + 1 (x) H_s on the clock (x) system space.
Operator global_hamiltonian(const ClockRegister& c, double omega);

// ||H_g Psi|| / ||Psi||. Defined for free histories only; for
// measurement-bearing histories the global-propagator equivalence above is
// the verified stationarity statement instead.
double constraint_residual(const HistoryState& h, const Operator& hg);

// Unnormalized partial inner product <t_k|Psi>>: the system(+memory)
// vector conditioned on the clock reading t_k. Its norm is 1/sqrt(n) for
// every history state.
StateVector condition_on_time(const HistoryState& h, Eigen::Index k);

// Shift the measurement times by a whole number of lattice steps and
// pre-evolve the initial state backwards to compensate; every record
// statistic is unchanged. Shifts that would push a region boundary off the
// lattice are rejected (no periodic wrap).
HistoryState translate_internal_time(const HistoryState& h, Eigen::Index shift);

}  // namespace pwtime
