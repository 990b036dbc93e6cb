#include <doctest.h>

#include "pwtime/clock.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace pwtime;

namespace {
constexpr double kPi = std::numbers::pi;

// plane wave sum_k e^{+-i w t_k} |t_k> / sqrt(n)
StateVector plane_wave(const ClockRegister& c, double omega, int sign) {
  Vec v(c.n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(c.n));
  for (Eigen::Index k = 0; k < c.n; ++k)
    v(k) = std::polar(scale, sign * omega * c.time(k));
  return {std::move(v), {c.n}};
}
}  // namespace

TEST_SUITE("clock") {

TEST_CASE("register validation") {
  CHECK_THROWS_AS(ClockRegister(3, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(ClockRegister(6, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(ClockRegister(7, 1.0), std::invalid_argument);
  const ClockRegister c(8, 0.5);
  CHECK(c.span() == doctest::Approx(4.0));
  CHECK(c.time(3) == doctest::Approx(1.5));
}

TEST_CASE("time eigenstates are the lattice basis") {
  const ClockRegister c(4, 1.0);
  CHECK(time_eigenstate(c, 0).amps(0) == Complex(1, 0));
  CHECK(time_eigenstate(c, 0).amps.tail(3).norm() == 0.0);
  CHECK(time_eigenstate(c, 3).amps(3) == Complex(1, 0));
  CHECK_THROWS_AS(time_eigenstate(c, 4), std::invalid_argument);
  CHECK_THROWS_AS(time_eigenstate(c, -1), std::invalid_argument);

  const ClockRegister c8(8, 1.0);
  for (Eigen::Index k = 0; k < 8; ++k)
    for (Eigen::Index j = 0; j < 8; ++j) {
      const Complex ip = inner(time_eigenstate(c8, k), time_eigenstate(c8, j));
      CHECK(std::abs(ip - (k == j ? Complex(1, 0) : Complex(0, 0))) == 0.0);
    }
}

TEST_CASE("momentum spectrum is the centered frequency grid") {
  const ClockRegister c(4, 1.0);
  const Operator om = momentum_operator(c);
  CHECK(om.is_hermitian(1e-12));

  Eigen::SelfAdjointEigenSolver<Mat> es(om.mat);
  std::vector<double> eigs(es.eigenvalues().data(), es.eigenvalues().data() + 4);
  std::sort(eigs.begin(), eigs.end());
  const double expect[] = {-kPi, -kPi / 2, 0.0, kPi / 2};
  for (int i = 0; i < 4; ++i) CHECK(eigs[i] == doctest::Approx(expect[i]).epsilon(1e-12));
}

TEST_CASE("uniform superposition is the zero mode") {
  const ClockRegister c(8, 1.0);
  StateVector uniform(Vec::Constant(8, 1.0 / std::sqrt(8.0)), {8});
  CHECK(apply(momentum_operator(c), uniform).norm() <= 1e-13);
}

TEST_CASE("commensurate plane waves are eigenstates at +-omega") {
  for (Eigen::Index n : {8, 16, 64})
    for (Eigen::Index j : {1, 2, 3}) {
      const ClockRegister c(n, 1.0);
      const double omega = commensurate_frequency(c, j);
      const Operator om = momentum_operator(c);
      for (int sign : {+1, -1}) {
        const StateVector w = plane_wave(c, omega, sign);
        const StateVector got = apply(om, w);
        Vec want = sign * omega * w.amps;
        CHECK(max_abs_diff(got.amps, want) <= 1e-11);
      }
    }
}

TEST_CASE("clock hamiltonian equals the momentum at hbar = 1") {
  for (Eigen::Index n : {4, 8, 64}) {
    const ClockRegister c(n, 1.0);
    const Operator hc = clock_hamiltonian(c);
    CHECK(hc.is_hermitian(1e-12));
    CHECK(max_abs_diff(hc.mat, momentum_operator(c).mat) == 0.0);
  }
}

TEST_CASE("trace of the clock hamiltonian is -pi/dt") {
  for (double dt : {1.0, 0.5})
    for (Eigen::Index n : {4, 8, 64}) {
      const ClockRegister c(n, dt);
      const Complex tr = clock_hamiltonian(c).mat.trace();
      CHECK(tr.real() == doctest::Approx(-kPi / dt).epsilon(1e-12));
      CHECK(std::abs(tr.imag()) <= 1e-12);
    }
}

TEST_CASE("rebuilding the momentum operator is stable") {
  const ClockRegister c(32, 0.7);
  CHECK(max_abs_diff(momentum_operator(c).mat, momentum_operator(c).mat) <= 1e-13);
}

TEST_CASE("commensurate frequency selection") {
  CHECK(commensurate_frequency(ClockRegister(64, 1.0), 1) ==
        doctest::Approx(2.0 * kPi / 64.0).epsilon(1e-15));
  CHECK_THROWS_AS(commensurate_frequency(ClockRegister(64, 1.0), 32),
                  std::invalid_argument);
  CHECK_THROWS_AS(commensurate_frequency(ClockRegister(64, 1.0), 0),
                  std::invalid_argument);
  CHECK(commensurate_frequency(ClockRegister(8, 0.5), 2) == doctest::Approx(kPi));

  // doubling dt at fixed (n, j) halves the frequency exactly
  for (Eigen::Index j : {1, 2, 3}) {
    const double full = commensurate_frequency(ClockRegister(16, 1.0), j);
    const double half = commensurate_frequency(ClockRegister(16, 2.0), j);
    CHECK(half == 0.5 * full);
  }
}

}  // TEST_SUITE
