#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <vector>

namespace pwtime {

using Complex = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;

/// Tolerance backing the unitary/hermitian operator flags (max-norm).
inline constexpr double kFlagTol = 1e-12;

/// Raised when a numerical invariant (not a caller precondition) fails.
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Eigen::Index dim_product(const std::vector<Eigen::Index>& dims);

// Complex amplitude vector over a labeled tensor-product space. Factor
// order is fixed project-wide as [clock, system, memory1, memory2];
// flat indices are row-major in that order.
struct StateVector {
  Vec amps;
  std::vector<Eigen::Index> dims;

  StateVector(Vec a, std::vector<Eigen::Index> d);

  Eigen::Index size() const { return amps.size(); }
  double norm() const { return amps.norm(); }

  /// Scales to unit norm in place; throws NumericError on a zero vector.
  StateVector& normalize();
  StateVector normalized() const;
};

// Dense complex square matrix acting on a labeled space. The unitary and
// hermitian fields are claims; verify_flags checks them in max-norm at
// kFlagTol. Factory functions set the flags their construction guarantees.
struct Operator {
  Mat mat;
  std::vector<Eigen::Index> dims;
  bool unitary = false;
  bool hermitian = false;

  Operator(Mat m, std::vector<Eigen::Index> d);

  Eigen::Index size() const { return mat.rows(); }
  Operator adjoint() const;

  bool is_unitary(double tol = kFlagTol) const;
  bool is_hermitian(double tol = kFlagTol) const;
  void verify_flags(double tol = kFlagTol) const;
};

Operator identity(std::vector<Eigen::Index> dims);

/// Kronecker product of states; dims concatenate in row-major factor order.
StateVector tensor(const StateVector& a, const StateVector& b);

/// Kronecker product of operators; dims concatenate.
Operator kron(const Operator& a, const Operator& b);

/// Matrix-vector product; requires identical factor dimensions.
StateVector apply(const Operator& op, const StateVector& v);

/// <a|b>, conjugate-linear in the first argument.
Complex inner(const StateVector& a, const StateVector& b);

// Unitary discrete Fourier matrix F[j,k] = exp(+i 2 pi j k / n) / sqrt(n).
// The +i sign convention puts the phase e^{+i w t} on the +w momentum
// eigenvalue. Arguments to exp are reduced mod n before evaluation so the
// matrix stays unitary to ~1e-13 even at large n.
Operator dft(Eigen::Index n);

// Promote an operator acting on a subset of tensor factors to the full
// space (identity on the rest). `factors` are strictly increasing indices
// into full_dims and must match op.dims.
Operator embed(const Operator& op, const std::vector<Eigen::Index>& full_dims,
               const std::vector<int>& factors);

Operator operator+(const Operator& a, const Operator& b);
Operator operator-(const Operator& a, const Operator& b);
Operator operator*(const Operator& a, const Operator& b);
Operator operator*(Complex s, const Operator& a);

template <typename A, typename B>
double max_abs_diff(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace pwtime
