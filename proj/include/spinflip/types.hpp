#pragma once

// Shared numeric types for the two-channel point-interaction toolkit.
//
// Units: hbar^2/2m = 1, so energies are k^2 and lengths are dimensionless.
// Boundary 4-vectors are ordered (psi1, psi1', psi2, psi2').

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>

namespace spinflip {

using Complex = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;
using Vec2 = Eigen::Vector2cd;
using Vec4 = Eigen::Vector4cd;

inline constexpr Complex kI{0.0, 1.0};

/// Raised when a numerical procedure cannot produce a trustworthy result
/// (singular maps, ill-conditioned matching, integrator failure).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Block-diagonal skew form J4 = diag(J2, J2), J2 = [[0,-1],[1,0]].
inline Mat4 j4() {
  Mat4 j = Mat4::Zero();
  j(0, 1) = -1.0;
  j(1, 0) = 1.0;
  j(2, 3) = -1.0;
  j(3, 2) = 1.0;
  return j;
}

namespace pauli {
inline Mat2 identity() { return Mat2::Identity(); }
inline Mat2 x() {
  Mat2 s;
  s << 0.0, 1.0, 1.0, 0.0;
  return s;
}
inline Mat2 y() {
  Mat2 s;
  s << 0.0, -kI, kI, 0.0;
  return s;
}
inline Mat2 z() {
  Mat2 s;
  s << 1.0, 0.0, 0.0, -1.0;
  return s;
}
}  // namespace pauli

template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived>& m, double tol) {
  return (m - m.adjoint()).norm() <= tol;
}

}  // namespace spinflip
