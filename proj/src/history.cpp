#include "pwtime/history.hpp"

#include <cmath>
#include <string>

namespace pwtime {

namespace {

double clock_weight(const ClockRegister& c) {
  return 1.0 / std::sqrt(static_cast<double>(c.n));
}

void check_measurement_indices(const ClockRegister& c, Eigen::Index ka,
                               std::optional<Eigen::Index> kb) {
  if (ka < 1 || ka > c.n - 1)
    throw std::invalid_argument("first measurement index must satisfy 0 < ka < n");
  if (kb) {
    if (*kb <= ka || *kb > c.n - 1)
      throw std::invalid_argument(
          "measurement indices must satisfy 0 < ka < kb < n with a nonempty "
          "final region");
  }
}

}  // namespace

HistoryState free_history(const ClockRegister& c, const Qubit& psi0, double omega) {
  const double w = clock_weight(c);
  Vec amps(c.n * 2);
  for (Eigen::Index k = 0; k < c.n; ++k)
    amps.segment(2 * k, 2) = w * (evolution(omega * c.time(k)).mat * psi0.amps);
  StateVector state(std::move(amps), {c.n, 2});
  return {std::move(state), c, omega, psi0, std::nullopt, std::nullopt, {}, {}};
}

Operator von_neumann_unitary(const MeasurementBasis& basis) {
  Mat v = Mat::Zero(2 * kMemoryDim, 2 * kMemoryDim);
  for (int a = 0; a < 2; ++a) {
    const Eigen::Vector2cd ket = basis.ket(a);
    const Eigen::Matrix2cd proj = ket * ket.adjoint();
    const Eigen::Index rec = record_level(a);
    const Eigen::Index other = record_level(1 - a);
    // memory cycle conditioned on this outcome's projector
    Mat cycle = Mat::Zero(kMemoryDim, kMemoryDim);
    cycle(rec, kReadyLevel) = 1.0;
    cycle(other, rec) = 1.0;
    cycle(kReadyLevel, other) = 1.0;
    for (Eigen::Index i = 0; i < 2; ++i)
      for (Eigen::Index j = 0; j < 2; ++j)
        v.block(i * kMemoryDim, j * kMemoryDim, kMemoryDim, kMemoryDim) +=
            proj(i, j) * cycle;
  }
  Operator op(std::move(v), {2, kMemoryDim});
  op.unitary = true;
  return op;
}

HistoryState single_measurement_history(const ClockRegister& c, const Qubit& psi0,
                                        double omega, Eigen::Index ka,
                                        const MeasurementBasis& basis_a) {
  check_measurement_indices(c, ka, std::nullopt);
  const double w = clock_weight(c);
  const double ta = c.time(ka);
  const Eigen::Vector2cd psi_ta = evolution(omega * ta).mat * psi0.amps;

  Vec amps = Vec::Zero(c.n * 2 * kMemoryDim);
  for (Eigen::Index k = 0; k < c.n; ++k) {
    if (k < ka) {
      const Eigen::Vector2cd sys = evolution(omega * c.time(k)).mat * psi0.amps;
      for (Eigen::Index s = 0; s < 2; ++s)
        amps((k * 2 + s) * kMemoryDim + kReadyLevel) = w * sys(s);
    } else {
      for (int a = 0; a < 2; ++a) {
        const Complex amp_a = basis_a.ket(a).dot(psi_ta);
        const Eigen::Vector2cd sys =
            evolution(omega * (c.time(k) - ta)).mat * basis_a.ket(a);
        for (Eigen::Index s = 0; s < 2; ++s)
          amps((k * 2 + s) * kMemoryDim + record_level(a)) += w * amp_a * sys(s);
      }
    }
  }
  StateVector state(std::move(amps), {c.n, 2, kMemoryDim});
  return {std::move(state), c, omega, psi0, ka, std::nullopt, basis_a, {}};
}

HistoryState double_measurement_history(const ClockRegister& c, const Qubit& psi0,
                                        double omega, Eigen::Index ka, Eigen::Index kb,
                                        const MeasurementBasis& basis_a,
                                        const MeasurementBasis& basis_b) {
  check_measurement_indices(c, ka, kb);
  const double w = clock_weight(c);
  const double ta = c.time(ka);
  const double tb = c.time(kb);
  const Eigen::Vector2cd psi_ta = evolution(omega * ta).mat * psi0.amps;
  const Mat u_ab = evolution(omega * (tb - ta)).mat;

  Vec amps = Vec::Zero(c.n * 2 * kMemoryDim * kMemoryDim);
  auto at = [&](Eigen::Index k, Eigen::Index s, Eigen::Index m1,
                Eigen::Index m2) -> Complex& {
    return amps(((k * 2 + s) * kMemoryDim + m1) * kMemoryDim + m2);
  };

  for (Eigen::Index k = 0; k < c.n; ++k) {
    if (k < ka) {
      const Eigen::Vector2cd sys = evolution(omega * c.time(k)).mat * psi0.amps;
      for (Eigen::Index s = 0; s < 2; ++s)
        at(k, s, kReadyLevel, kReadyLevel) = w * sys(s);
    } else if (k < kb) {
      for (int a = 0; a < 2; ++a) {
        const Complex amp_a = basis_a.ket(a).dot(psi_ta);
        const Eigen::Vector2cd sys =
            evolution(omega * (c.time(k) - ta)).mat * basis_a.ket(a);
        for (Eigen::Index s = 0; s < 2; ++s)
          at(k, s, record_level(a), kReadyLevel) += w * amp_a * sys(s);
      }
    } else {
      for (int a = 0; a < 2; ++a) {
        const Complex amp_a = basis_a.ket(a).dot(psi_ta);
        for (int b = 0; b < 2; ++b) {
          const Complex amp_b = basis_b.ket(b).dot(u_ab * basis_a.ket(a));
          const Eigen::Vector2cd sys =
              evolution(omega * (c.time(k) - tb)).mat * basis_b.ket(b);
          for (Eigen::Index s = 0; s < 2; ++s)
            at(k, s, record_level(a), record_level(b)) += w * amp_b * amp_a * sys(s);
        }
      }
    }
  }
  StateVector state(std::move(amps), {c.n, 2, kMemoryDim, kMemoryDim});
  return {std::move(state), c, omega, psi0, ka, kb, basis_a, basis_b};
}

HistoryState history_via_global_propagator(const ClockRegister& c, const Qubit& psi0,
                                           double omega, Eigen::Index ka, Eigen::Index kb,
                                           const MeasurementBasis& basis_a,
                                           const MeasurementBasis& basis_b) {
  check_measurement_indices(c, ka, kb);
  const std::vector<Eigen::Index> slice_dims = {2, kMemoryDim, kMemoryDim};
  const Operator va = embed(von_neumann_unitary(basis_a), slice_dims, {0, 1});
  const Operator vb = embed(von_neumann_unitary(basis_b), slice_dims, {0, 2});
  auto free_step = [&](double t) {
    return embed(evolution(omega * t), slice_dims, {0});
  };

  Vec ready = Vec::Zero(kMemoryDim);
  ready(kReadyLevel) = 1.0;
  StateVector start =
      tensor(psi0.state(), tensor({ready, {kMemoryDim}}, {ready, {kMemoryDim}}));

  const double w = clock_weight(c);
  const double ta = c.time(ka);
  const double tb = c.time(kb);
  Vec amps(c.n * 2 * kMemoryDim * kMemoryDim);
  for (Eigen::Index k = 0; k < c.n; ++k) {
    const double t = c.time(k);
    StateVector slice = start;
    if (k < ka) {
      slice = apply(free_step(t), slice);
    } else if (k < kb) {
      slice = apply(free_step(t - ta) * va * free_step(ta), slice);
    } else {
      slice = apply(free_step(t - tb) * vb * free_step(tb - ta) * va * free_step(ta),
                    slice);
    }
    amps.segment(k * slice.size(), slice.size()) = w * slice.amps;
  }
  StateVector state(std::move(amps), {c.n, 2, kMemoryDim, kMemoryDim});
  return {std::move(state), c, omega, psi0, ka, kb, basis_a, basis_b};
}

Operator global_hamiltonian(const ClockRegister& c, double omega) {
  return kron(clock_hamiltonian(c), identity({2})) +
         kron(identity({c.n}), system_hamiltonian(omega));
}

double constraint_residual(const HistoryState& h, const Operator& hg) {
  if (h.measurements() != 0)
    throw std::invalid_argument(
        "constraint residual is defined for free histories only; "
        "measurement-bearing histories are checked via the global-propagator "
        "equivalence");
  return apply(hg, h.state).norm() / h.state.norm();
}

StateVector condition_on_time(const HistoryState& h, Eigen::Index k) {
  if (k < 0 || k >= h.clock.n)
    throw std::invalid_argument("clock index out of range");
  std::vector<Eigen::Index> rest(h.state.dims.begin() + 1, h.state.dims.end());
  const Eigen::Index block = dim_product(rest);
  return {h.state.amps.segment(k * block, block), std::move(rest)};
}

HistoryState translate_internal_time(const HistoryState& h, Eigen::Index shift) {
  const Qubit shifted(evolution(-h.omega * h.clock.dt * static_cast<double>(shift)).mat *
                      h.psi0.amps);
  auto shifted_index = [&](Eigen::Index k) {
    const Eigen::Index ks = k + shift;
    if (ks < 1 || ks > h.clock.n - 1)
      throw std::invalid_argument(
          "time translation would push a measurement across the lattice end "
          "(periodic wrap is not allowed)");
    return ks;
  };
  switch (h.measurements()) {
    case 0:
      return free_history(h.clock, shifted, h.omega);
    case 1:
      return single_measurement_history(h.clock, shifted, h.omega, shifted_index(*h.ka),
                                        h.basis_a);
    default:
      return double_measurement_history(h.clock, shifted, h.omega, shifted_index(*h.ka),
                                        shifted_index(*h.kb), h.basis_a, h.basis_b);
  }
}

}  // namespace pwtime
