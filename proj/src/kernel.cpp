#include "pwtime/kernel.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace pwtime {

Eigen::Index dim_product(const std::vector<Eigen::Index>& dims) {
  Eigen::Index p = 1;
  for (Eigen::Index d : dims) {
    if (d < 1) throw std::invalid_argument("factor dimension must be >= 1");
    p *= d;
  }
  return p;
}

StateVector::StateVector(Vec a, std::vector<Eigen::Index> d)
    : amps(std::move(a)), dims(std::move(d)) {
  if (amps.size() != dim_product(dims))
    throw std::invalid_argument("amplitude count does not match factor dimensions");
}

StateVector& StateVector::normalize() {
  const double n = amps.norm();
  if (n == 0.0) throw NumericError("cannot normalize a zero vector");
  amps /= n;
  return *this;
}

StateVector StateVector::normalized() const {
  StateVector c = *this;
  c.normalize();
  return c;
}

Operator::Operator(Mat m, std::vector<Eigen::Index> d)
    : mat(std::move(m)), dims(std::move(d)) {
  const Eigen::Index n = dim_product(dims);
  if (mat.rows() != n || mat.cols() != n)
    throw std::invalid_argument("operator must be square on the product space");
}

Operator Operator::adjoint() const {
  Operator a(mat.adjoint(), dims);
  a.unitary = unitary;
  a.hermitian = hermitian;
  return a;
}

bool Operator::is_unitary(double tol) const {
  const Mat g = mat.adjoint() * mat;
  return max_abs_diff(g, Mat::Identity(mat.rows(), mat.cols())) <= tol;
}

bool Operator::is_hermitian(double tol) const {
  return max_abs_diff(mat, mat.adjoint()) <= tol;
}

void Operator::verify_flags(double tol) const {
  if (unitary && !is_unitary(tol))
    throw NumericError("operator flagged unitary fails U^dagger U = I");
  if (hermitian && !is_hermitian(tol))
    throw NumericError("operator flagged hermitian fails A = A^dagger");
}

Operator identity(std::vector<Eigen::Index> dims) {
  const Eigen::Index n = dim_product(dims);
  Operator op(Mat::Identity(n, n), std::move(dims));
  op.unitary = true;
  op.hermitian = true;
  return op;
}

StateVector tensor(const StateVector& a, const StateVector& b) {
  Vec out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i)
    out.segment(i * b.size(), b.size()) = a.amps(i) * b.amps;
  std::vector<Eigen::Index> dims = a.dims;
  dims.insert(dims.end(), b.dims.begin(), b.dims.end());
  return {std::move(out), std::move(dims)};
}

Operator kron(const Operator& a, const Operator& b) {
  const Eigen::Index na = a.size(), nb = b.size();
  Mat out(na * nb, na * nb);
  for (Eigen::Index i = 0; i < na; ++i)
    for (Eigen::Index j = 0; j < na; ++j)
      out.block(i * nb, j * nb, nb, nb) = a.mat(i, j) * b.mat;
  std::vector<Eigen::Index> dims = a.dims;
  dims.insert(dims.end(), b.dims.begin(), b.dims.end());
  Operator op(std::move(out), std::move(dims));
  op.unitary = a.unitary && b.unitary;
  op.hermitian = a.hermitian && b.hermitian;
  return op;
}

StateVector apply(const Operator& op, const StateVector& v) {
  if (op.dims != v.dims)
    throw std::invalid_argument("operator/state factor dimensions differ");
  return {op.mat * v.amps, v.dims};
}

Complex inner(const StateVector& a, const StateVector& b) {
  if (a.dims != b.dims)
    throw std::invalid_argument("inner product requires identical factor dimensions");
  return a.amps.dot(b.amps);  // Eigen's dot conjugates the first argument
}

Operator dft(Eigen::Index n) {
  if (n < 1) throw std::invalid_argument("dft size must be >= 1");
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  Mat f(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index k = 0; k < n; ++k) {
      const Eigen::Index r = (j * k) % n;
      f(j, k) = std::polar(scale, 2.0 * std::numbers::pi * static_cast<double>(r) /
                                      static_cast<double>(n));
    }
  Operator op(std::move(f), {n});
  op.unitary = true;
  return op;
}

Operator embed(const Operator& op, const std::vector<Eigen::Index>& full_dims,
               const std::vector<int>& factors) {
  if (factors.empty()) throw std::invalid_argument("embed needs at least one factor");
  if (factors.size() != op.dims.size())
    throw std::invalid_argument("embed factor count does not match operator dims");
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const int f = factors[i];
    if (f < 0 || static_cast<std::size_t>(f) >= full_dims.size())
      throw std::invalid_argument("embed factor index out of range");
    if (i > 0 && factors[i - 1] >= f)
      throw std::invalid_argument("embed factors must be strictly increasing");
    if (full_dims[f] != op.dims[i])
      throw std::invalid_argument("embed factor dimension mismatch");
  }

  const std::size_t nf = full_dims.size();
  const Eigen::Index full = dim_product(full_dims);
  std::vector<Eigen::Index> stride(nf, 1);
  for (std::size_t f = nf - 1; f-- > 0;) stride[f] = stride[f + 1] * full_dims[f + 1];

  Mat out = Mat::Zero(full, full);
  std::vector<Eigen::Index> digits(nf);
  for (Eigen::Index row = 0; row < full; ++row) {
    Eigen::Index rest = row;
    for (std::size_t f = 0; f < nf; ++f) {
      digits[f] = rest / stride[f];
      rest %= stride[f];
    }
    Eigen::Index op_row = 0;
    for (int f : factors) op_row = op_row * full_dims[f] + digits[f];
    for (Eigen::Index op_col = 0; op_col < op.size(); ++op_col) {
      Eigen::Index col = row, rem = op_col;
      for (std::size_t i = factors.size(); i-- > 0;) {
        const int f = factors[i];
        const Eigen::Index digit = rem % full_dims[f];
        rem /= full_dims[f];
        col += (digit - digits[f]) * stride[f];
      }
      out(row, col) = op.mat(op_row, op_col);
    }
  }
  Operator res(std::move(out), full_dims);
  res.unitary = op.unitary;
  res.hermitian = op.hermitian;
  return res;
}

namespace {
void require_same_space(const Operator& a, const Operator& b, const char* what) {
  if (a.dims != b.dims)
    throw std::invalid_argument(std::string("operator ") + what +
                                " requires identical factor dimensions");
}
}  // namespace

Operator operator+(const Operator& a, const Operator& b) {
  require_same_space(a, b, "sum");
  Operator r(a.mat + b.mat, a.dims);
  r.hermitian = a.hermitian && b.hermitian;
  return r;
}

Operator operator-(const Operator& a, const Operator& b) {
  require_same_space(a, b, "difference");
  Operator r(a.mat - b.mat, a.dims);
  r.hermitian = a.hermitian && b.hermitian;
  return r;
}

Operator operator*(const Operator& a, const Operator& b) {
  require_same_space(a, b, "product");
  Operator r(a.mat * b.mat, a.dims);
  r.unitary = a.unitary && b.unitary;
  return r;
}

Operator operator*(Complex s, const Operator& a) {
  Operator r(s * a.mat, a.dims);
  r.hermitian = a.hermitian && s.imag() == 0.0;
  return r;
}

}  // namespace pwtime
