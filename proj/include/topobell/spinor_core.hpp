#pragma once

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace topobell {

template <typename Scalar>
using Complex = std::complex<Scalar>;

/// Single-particle spin state in the planar basis (|up>, |down>).
template <typename Scalar>
using Spinor2 = Eigen::Matrix<Complex<Scalar>, 2, 1>;

/// Two-particle state with amplitudes ordered (uu, ud, du, dd); the left
/// particle is the major index.
template <typename Scalar>
using State4 = Eigen::Matrix<Complex<Scalar>, 4, 1>;

template <typename Scalar>
using Operator2 = Eigen::Matrix<Complex<Scalar>, 2, 2>;

template <typename Scalar>
using Operator4 = Eigen::Matrix<Complex<Scalar>, 4, 4>;

/// Thrown by operations that require a Hermitian input matrix.
class NonHermitianInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

template <typename Scalar>
Operator2<Scalar> pauli_x() {
  Operator2<Scalar> m;
  m << Complex<Scalar>(0, 0), Complex<Scalar>(1, 0),
       Complex<Scalar>(1, 0), Complex<Scalar>(0, 0);
  return m;
}

template <typename Scalar>
Operator2<Scalar> pauli_y() {
  Operator2<Scalar> m;
  m << Complex<Scalar>(0, 0), Complex<Scalar>(0, -1),
       Complex<Scalar>(0, 1), Complex<Scalar>(0, 0);
  return m;
}

template <typename Scalar>
Operator2<Scalar> pauli_z() {
  Operator2<Scalar> m;
  m << Complex<Scalar>(1, 0), Complex<Scalar>(0, 0),
       Complex<Scalar>(0, 0), Complex<Scalar>(-1, 0);
  return m;
}

/// Kronecker product of fixed-size operands; the left factor owns the major
/// index of the result. Works for operators (2x2 -> 4x4) and kets (2 -> 4).
template <typename DerivedA, typename DerivedB>
auto tensor(const Eigen::MatrixBase<DerivedA>& a,
            const Eigen::MatrixBase<DerivedB>& b) {
  constexpr int ra = DerivedA::RowsAtCompileTime;
  constexpr int ca = DerivedA::ColsAtCompileTime;
  constexpr int rb = DerivedB::RowsAtCompileTime;
  constexpr int cb = DerivedB::ColsAtCompileTime;
  static_assert(ra > 0 && ca > 0 && rb > 0 && cb > 0,
                "tensor() requires fixed-size operands");
  Eigen::Matrix<typename DerivedA::Scalar, ra * rb, ca * cb> out;
  for (int i = 0; i < ra; ++i)
    for (int j = 0; j < ca; ++j)
      out.template block<rb, cb>(i * rb, j * cb) = a(i, j) * b.derived();
  return out;
}

template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived>& m,
                  typename Eigen::NumTraits<typename Derived::Scalar>::Real tol) {
  return ((m.derived() - m.derived().adjoint()).cwiseAbs().maxCoeff()) <= tol;
}

/// Multiplies a ket by the unit scalar that makes its first nonzero component
/// real and positive. Components below `nonzero_tol` in magnitude are treated
/// as zero. Bitwise idempotent.
template <typename Derived>
typename Derived::PlainObject phase_canonicalized(
    const Eigen::MatrixBase<Derived>& v,
    typename Eigen::NumTraits<typename Derived::Scalar>::Real nonzero_tol = 1e-12) {
  using ComplexT = typename Derived::Scalar;
  using RealT = typename Eigen::NumTraits<ComplexT>::Real;
  typename Derived::PlainObject out = v.derived();
  for (Eigen::Index i = 0; i < out.size(); ++i) {
    const RealT mag = std::abs(out(i));
    if (mag > nonzero_tol) {
      const ComplexT u = std::conj(out(i)) / mag;
      if (u != ComplexT(1, 0)) out *= u;
      break;
    }
  }
  return out;
}

/// True iff two unit-norm kets describe the same physical state:
/// |<u|v>| >= 1 - tol.
template <typename DerivedA, typename DerivedB>
bool equal_up_to_global_phase(
    const Eigen::MatrixBase<DerivedA>& u, const Eigen::MatrixBase<DerivedB>& v,
    typename Eigen::NumTraits<typename DerivedA::Scalar>::Real tol) {
  using RealT = typename Eigen::NumTraits<typename DerivedA::Scalar>::Real;
  return std::abs(u.dot(v)) >= RealT(1) - tol;
}

template <typename Scalar>
struct EigenPair {
  Scalar value;
  Spinor2<Scalar> vector;
};

/// Eigendecomposition of a 2x2 Hermitian matrix, sorted descending by
/// eigenvalue. Eigenvectors are unit norm with their first nonzero component
/// made real and positive; for degenerate spectra any orthonormal pair may be
/// returned. Throws NonHermitianInput if m deviates from m^dagger beyond
/// `hermiticity_tol` in any entry.
template <typename Scalar>
std::array<EigenPair<Scalar>, 2> eig_hermitian_2x2(
    const Operator2<Scalar>& m, Scalar hermiticity_tol = Scalar(1e-12)) {
  if (!is_hermitian(m, hermiticity_tol))
    throw NonHermitianInput("eig_hermitian_2x2: input is not Hermitian within tolerance");
  Eigen::SelfAdjointEigenSolver<Operator2<Scalar>> solver(m);
  std::array<EigenPair<Scalar>, 2> pairs;
  for (int k = 0; k < 2; ++k) {
    // the solver sorts ascending
    pairs[k].value = solver.eigenvalues()(1 - k);
    pairs[k].vector = phase_canonicalized(solver.eigenvectors().col(1 - k));
  }
  return pairs;
}

}  // namespace topobell
