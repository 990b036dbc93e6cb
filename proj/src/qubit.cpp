#include "pwtime/qubit.hpp"

#include <cmath>

namespace pwtime {

Qubit::Qubit(const Eigen::Vector2cd& a) : amps(a) {
  if (std::abs(amps.norm() - 1.0) > 1e-12)
    throw std::invalid_argument("qubit amplitudes must be normalized");
}

Qubit Qubit::normalized(Complex h, Complex v) {
  Eigen::Vector2cd a;
  a << h, v;
  const double n = a.norm();
  if (n == 0.0) throw std::invalid_argument("qubit amplitudes cannot all vanish");
  return Qubit(a / n);
}

StateVector Qubit::state() const {
  Vec v(2);
  v << amps(0), amps(1);
  return {std::move(v), {2}};
}

Qubit horizontal() { return Qubit::normalized(1.0, 0.0); }
Qubit vertical() { return Qubit::normalized(0.0, 1.0); }
Qubit initial_state() { return Qubit::normalized(1.0, 1.0); }

Operator evolution(double delta) {
  const double c = std::cos(delta);
  const Complex is(0.0, std::sin(delta));
  Mat u(2, 2);
  u << c, is, is, c;
  Operator op(std::move(u), {2});
  op.unitary = true;
  return op;
}

Operator system_hamiltonian(double omega) {
  Mat h(2, 2);
  h << 0.0, -omega, -omega, 0.0;
  Operator op(std::move(h), {2});
  op.hermitian = true;
  return op;
}

MeasurementBasis::MeasurementBasis(const Eigen::Matrix2cd& u) : rot(u) {
  if ((u.adjoint() * u - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() > kFlagTol)
    throw std::invalid_argument("measurement basis rotation must be unitary");
}

Eigen::Vector2cd MeasurementBasis::ket(int outcome) const {
  if (outcome != 0 && outcome != 1)
    throw std::invalid_argument("measurement outcome index must be 0 or 1");
  return rot.col(outcome);
}

}  // namespace pwtime
