#include <doctest.h>

#include "pwtime/kernel.hpp"
#include "pwtime/qubit.hpp"
#include "test_helpers.hpp"

#include <cmath>
#include <numbers>

using namespace pwtime;
using pwtest::make_state;

namespace {
const double kSqrtHalf = 1.0 / std::sqrt(2.0);

Operator sigma_x() {
  Mat m(2, 2);
  m << 0, 1, 1, 0;
  Operator op(std::move(m), {2});
  op.unitary = true;
  op.hermitian = true;
  return op;
}

Operator diag2(Complex a, Complex b) {
  Mat m = Mat::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return Operator(std::move(m), {2});
}
}  // namespace

TEST_SUITE("kernel") {

TEST_CASE("tensor places amplitudes in row-major factor order") {
  const auto e0 = make_state({1, 0}, {2});
  const auto e1 = make_state({0, 1}, {2});
  const auto plus = make_state({kSqrtHalf, kSqrtHalf}, {2});

  auto t = tensor(e0, e1);
  CHECK(t.dims == std::vector<Eigen::Index>{2, 2});
  CHECK(max_abs_diff(t.amps, make_state({0, 1, 0, 0}, {2, 2}).amps) == 0.0);

  t = tensor(e0, e0);
  CHECK(max_abs_diff(t.amps, make_state({1, 0, 0, 0}, {2, 2}).amps) == 0.0);

  t = tensor(plus, e0);
  CHECK(max_abs_diff(t.amps, make_state({kSqrtHalf, 0, kSqrtHalf, 0}, {2, 2}).amps) <=
        1e-15);
}

TEST_CASE("kron basics") {
  const Operator i6 = kron(identity({2}), identity({3}));
  CHECK(max_abs_diff(i6.mat, Mat::Identity(6, 6)) == 0.0);
  CHECK(i6.dims == std::vector<Eigen::Index>{2, 3});

  const auto zz = tensor(make_state({1, 0}, {2}), make_state({1, 0}, {2}));
  const auto flipped = apply(kron(sigma_x(), identity({2})), zz);
  CHECK(max_abs_diff(flipped.amps, make_state({0, 0, 1, 0}, {2, 2}).amps) == 0.0);

  const Operator d = kron(diag2(1, 2), diag2(3, 4));
  Mat expect = Mat::Zero(4, 4);
  expect(0, 0) = 3;
  expect(1, 1) = 4;
  expect(2, 2) = 6;
  expect(3, 3) = 8;
  CHECK(max_abs_diff(d.mat, expect) == 0.0);
}

TEST_CASE("apply") {
  pwtime::SplitMix64 g(11);
  const auto v = pwtest::random_state(g, {2, 3});
  CHECK(max_abs_diff(apply(identity({2, 3}), v).amps, v.amps) == 0.0);

  const auto h = make_state({1, 0}, {2});
  CHECK(max_abs_diff(apply(sigma_x(), h).amps, make_state({0, 1}, {2}).amps) == 0.0);

  // waveplate at quarter turn: |H> -> i|V>
  const auto out = apply(evolution(std::numbers::pi / 2), h);
  CHECK(max_abs_diff(out.amps, make_state({0, Complex(0, 1)}, {2}).amps) <= 1e-12);

  CHECK_THROWS_AS(apply(identity({3}), h), std::invalid_argument);
}

TEST_CASE("dft small cases") {
  CHECK(max_abs_diff(dft(1).mat, Mat::Identity(1, 1)) == 0.0);

  Mat f2(2, 2);
  f2 << kSqrtHalf, kSqrtHalf, kSqrtHalf, -kSqrtHalf;
  CHECK(max_abs_diff(dft(2).mat, f2) <= 1e-12);

  const Mat f4 = dft(4).mat;
  Vec col1(4);
  col1 << 0.5, Complex(0, 0.5), -0.5, Complex(0, -0.5);
  CHECK(max_abs_diff(Vec(f4.col(1)), col1) <= 1e-12);

  CHECK_THROWS_AS(dft(0), std::invalid_argument);
}

TEST_CASE("dft is unitary for n = 1..256") {
  double worst = 0.0;
  for (Eigen::Index n = 1; n <= 256; ++n) {
    const Mat f = dft(n).mat;
    worst = std::max(worst, max_abs_diff(f.adjoint() * f, Mat::Identity(n, n)));
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("inner product is conjugate-linear in the first argument") {
  pwtime::SplitMix64 g(5);
  const auto v = pwtest::random_state(g, {4});
  CHECK(std::abs(inner(v, v) - Complex(1, 0)) <= 1e-12);

  CHECK(inner(make_state({1, 0}, {2}), make_state({0, 1}, {2})) == Complex(0, 0));

  const auto a = make_state({kSqrtHalf, Complex(0, kSqrtHalf)}, {2});
  const auto b = make_state({1, 0}, {2});
  CHECK(std::abs(inner(a, b) - Complex(kSqrtHalf, 0)) <= 1e-12);

  CHECK_THROWS_AS(inner(a, make_state({1, 0, 0}, {3})), std::invalid_argument);
}

TEST_CASE("flagged unitaries preserve norm") {
  pwtime::SplitMix64 g(17);
  std::vector<Operator> us;
  us.push_back(dft(6));
  us.push_back(evolution(0.37));
  us.push_back(kron(dft(3), evolution(-1.2)));
  us.push_back(kron(evolution(2.5), kron(sigma_x(), dft(2))));
  for (const Operator& u : us) {
    REQUIRE(u.unitary);
    u.verify_flags();
    for (int rep = 0; rep < 20; ++rep) {
      const auto v = pwtest::random_state(g, u.dims);
      CHECK(std::abs(apply(u, v).norm() - 1.0) <= 1e-12);
    }
  }
}

TEST_CASE("tensor and kron associate up to reshaping") {
  pwtime::SplitMix64 g(23);
  const auto a = pwtest::random_state(g, {2});
  const auto b = pwtest::random_state(g, {3});
  const auto c = pwtest::random_state(g, {4});
  const auto left = tensor(tensor(a, b), c);
  const auto right = tensor(a, tensor(b, c));
  CHECK(left.dims == right.dims);
  CHECK(max_abs_diff(left.amps, right.amps) <= 1e-14);

  const Operator ka = kron(kron(dft(2), evolution(0.3)), dft(3));
  const Operator kb = kron(dft(2), kron(evolution(0.3), dft(3)));
  CHECK(ka.dims == kb.dims);
  CHECK(max_abs_diff(ka.mat, kb.mat) <= 1e-14);
}

TEST_CASE("kron and tensor commute with apply") {
  pwtime::SplitMix64 g(29);
  for (int rep = 0; rep < 20; ++rep) {
    const Operator a = evolution(3.0 * g.next_unit() - 1.5);
    const Operator b = dft(3);
    const auto u = pwtest::random_state(g, {2});
    const auto v = pwtest::random_state(g, {3});
    const auto lhs = apply(kron(a, b), tensor(u, v));
    const auto rhs = tensor(apply(a, u), apply(b, v));
    CHECK(max_abs_diff(lhs.amps, rhs.amps) <= 1e-12);
  }
}

TEST_CASE("embed places factors against identity padding") {
  // embedding on non-adjacent factors must equal a permuted kron
  const Operator v = kron(evolution(0.7), dft(3));  // acts on factors {0, 2}
  const Operator full = embed(v, {2, 4, 3}, {0, 2});
  pwtime::SplitMix64 g(31);
  const auto s = pwtest::random_state(g, {2});
  const auto m = pwtest::random_state(g, {4});
  const auto t = pwtest::random_state(g, {3});
  const auto lhs = apply(full, tensor(s, tensor(m, t)));
  const auto rhs =
      tensor(apply(evolution(0.7), s), tensor(m, apply(dft(3), t)));
  CHECK(max_abs_diff(lhs.amps, rhs.amps) <= 1e-12);

  CHECK_THROWS_AS(embed(v, {2, 4, 3}, {2, 0}), std::invalid_argument);
  CHECK_THROWS_AS(embed(v, {2, 4, 4}, {0, 2}), std::invalid_argument);
}

TEST_CASE("state and operator validation") {
  CHECK_THROWS_AS(make_state({1, 0, 0}, {2}), std::invalid_argument);
  CHECK_THROWS_AS(Operator(Mat::Zero(2, 3), {2}), std::invalid_argument);
  CHECK_THROWS_AS(make_state({0, 0}, {2}).normalize(), NumericError);

  Operator bad = diag2(1, 2);
  bad.unitary = true;
  CHECK_THROWS_AS(bad.verify_flags(), NumericError);
}

}  // TEST_SUITE
