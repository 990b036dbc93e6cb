#include <doctest.h>

#include "pwtime/qubit.hpp"
#include "pwtime/sampling.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <numbers>

using namespace pwtime;

namespace {
constexpr double kPi = std::numbers::pi;
const double kSqrtHalf = 1.0 / std::sqrt(2.0);
}  // namespace

TEST_SUITE("system") {

TEST_CASE("initial state is the uniform H/V superposition") {
  const Qubit psi0 = initial_state();
  CHECK(psi0.amps.norm() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(psi0.amps(0) - Complex(kSqrtHalf, 0)) <= 1e-15);

  // +1 eigenstate of sigma_x
  Eigen::Matrix2cd sx;
  sx << 0, 1, 1, 0;
  CHECK((sx * psi0.amps - psi0.amps).norm() <= 1e-15);
}

TEST_CASE("qubit validation") {
  Eigen::Vector2cd bad;
  bad << 0.5, 0.5;
  CHECK_THROWS_AS(Qubit{bad}, std::invalid_argument);
  CHECK_THROWS_AS(Qubit::normalized(0.0, 0.0), std::invalid_argument);
}

TEST_CASE("waveplate evolution closed form") {
  CHECK(max_abs_diff(evolution(0.0).mat, Mat::Identity(2, 2)) == 0.0);

  const Vec out = evolution(kPi / 2).mat * horizontal().amps;
  CHECK(std::abs(out(0)) <= 1e-15);
  CHECK(std::abs(out(1) - Complex(0, 1)) <= 1e-12);

  const Vec mid = evolution(kPi / 4).mat * horizontal().amps;
  CHECK(std::norm(mid(1)) == doctest::Approx(0.5).epsilon(1e-12));

  for (double d : {-2.0, -0.3, 0.1, 1.9}) CHECK(evolution(d).is_unitary(1e-12));
}

TEST_CASE("system hamiltonian generates the waveplate evolution") {
  CHECK(max_abs_diff(system_hamiltonian(0.0).mat, Mat::Zero(2, 2)) == 0.0);
  CHECK(system_hamiltonian(1.3).is_hermitian(1e-15));

  // independent route: dense matrix exponential of -i H t
  SplitMix64 g(3);
  for (int rep = 0; rep < 12; ++rep) {
    const double omega = 4.0 * g.next_unit() - 2.0;
    const double t = 3.0 * g.next_unit();
    const Mat u = (Complex(0, -1) * t * system_hamiltonian(omega).mat).exp();
    CHECK(max_abs_diff(u, evolution(omega * t).mat) <= 1e-12);
  }
  const Mat u_quarter = (Complex(0, -1) * (kPi / 2) * system_hamiltonian(1.0).mat).exp();
  CHECK(max_abs_diff(u_quarter, evolution(kPi / 2).mat) <= 1e-12);

  Eigen::SelfAdjointEigenSolver<Mat> es(system_hamiltonian(1.0).mat);
  CHECK(es.eigenvalues()(0) == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(es.eigenvalues()(1) == doctest::Approx(1.0).epsilon(1e-12));
  // -omega on (|H>+|V>)/sqrt(2)
  const Vec hv = initial_state().state().amps;
  CHECK(max_abs_diff(Vec(system_hamiltonian(2.0).mat * hv), Vec(-2.0 * hv)) <= 1e-12);
}

TEST_CASE("evolution group law and inverse") {
  SplitMix64 g(9);
  for (int rep = 0; rep < 100; ++rep) {
    const double d1 = 8.0 * g.next_unit() - 4.0;
    const double d2 = 8.0 * g.next_unit() - 4.0;
    CHECK(max_abs_diff(Mat(evolution(d1).mat * evolution(d2).mat),
                       evolution(d1 + d2).mat) <= 1e-12);
  }
  for (double d : {0.3, 1.1, -2.2})
    CHECK(max_abs_diff(evolution(d).adjoint().mat, evolution(-d).mat) <= 1e-15);
}

TEST_CASE("transition probabilities follow cos^2/sin^2") {
  for (int i = 0; i <= 49; ++i) {
    const double d = kPi * i / 49.0;
    const Mat u = evolution(d).mat;
    const double c2 = std::cos(d) * std::cos(d);
    const double s2 = std::sin(d) * std::sin(d);
    CHECK(std::norm(u(0, 0)) == doctest::Approx(c2).epsilon(1e-12));
    CHECK(std::norm(u(1, 1)) == doctest::Approx(c2).epsilon(1e-12));
    CHECK(std::norm(u(1, 0)) == doctest::Approx(s2).epsilon(1e-12));
    CHECK(std::norm(u(0, 1)) == doctest::Approx(s2).epsilon(1e-12));

    // the initial state is stationary in probability
    const Vec evolved = u * initial_state().amps;
    CHECK(std::norm(evolved(0)) == doctest::Approx(0.5).epsilon(1e-12));
  }
}

TEST_CASE("measurement basis rotation must be unitary") {
  Eigen::Matrix2cd m;
  m << 1, 1, 0, 1;
  CHECK_THROWS_AS(MeasurementBasis{m}, std::invalid_argument);
  const MeasurementBasis def;
  CHECK(def.ket(0)(0) == Complex(1, 0));
  CHECK(def.ket(1)(1) == Complex(1, 0));
  CHECK_THROWS_AS(def.ket(2), std::invalid_argument);
}

}  // TEST_SUITE
