#pragma once

// Parameterizations of the state-mixing self-adjoint extensions of -d^2/dx^2
// acting on two-component wave functions, with the point interaction at x = 0.
//
// Three equivalent descriptions are provided:
//   M       boundary matrix,  Gamma(0+) = M Gamma(0-), J4-unitary
//   h       hermitian coupling matrix of the finite-rank perturbation
//   Lambda  jump matrix, 2 beta = Lambda delta on the mean-value / half-jump
//           functionals
//
// Families are indexed 1..4 by the boundary condition they produce:
//   1: psi1' += z psi2',   psi2 -= conj(z) psi1
//   2: psi1  += z psi2,    psi2' -= conj(z) psi1'
//   3: psi1' += z psi2,    psi2' += conj(z) psi1
//   4: psi1  += z psi2',   psi2 += conj(z) psi1'

#include "spinflip/types.hpp"

#include <array>

namespace spinflip {

struct BoundaryVector {
  Complex psi1{};
  Complex dpsi1{};
  Complex psi2{};
  Complex dpsi2{};

  Vec4 vec() const { return Vec4{psi1, dpsi1, psi2, dpsi2}; }
  static BoundaryVector from(const Vec4& v) { return {v(0), v(1), v(2), v(3)}; }
  Vec2 values() const { return Vec2{psi1, psi2}; }
  Vec2 derivatives() const { return Vec2{dpsi1, dpsi2}; }
};

struct MixingParams {
  Complex z1{};
  Complex z2{};
  Complex z3{};
  Complex z4{};

  Complex operator[](int family) const;
};

struct BoundaryMatrix {
  Mat4 m = Mat4::Identity();
};

struct CouplingMatrix {
  Mat4 h = Mat4::Zero();
};

struct JumpMatrix {
  Mat4 lambda = Mat4::Zero();
};

struct Generator {
  Mat4 x = Mat4::Zero();
};

/// Image of a Lambda family under m_from_lambda: family index and the sign
/// applied to z.
struct FamilyImage {
  int family;
  int z_sign;
};

/// lambda_family(f, z) maps to m_family(kLambdaToBoundary[f-1].family,
/// kLambdaToBoundary[f-1].z_sign * z).
inline constexpr std::array<FamilyImage, 4> kLambdaToBoundary{
    {{3, +1}, {2, +1}, {1, -1}, {4, -1}}};

/// Frobenius norm of M^dagger J4 M - J4.
double j4_residual(const BoundaryMatrix& m);

/// Frobenius norm of X^dagger J4 + J4 X.
double generator_residual(const Generator& x);

/// Throws std::out_of_range("family out of range") unless 1 <= family <= 4.
void check_family(int family);

BoundaryMatrix m_family(int family, Complex z);

CouplingMatrix h_family(int family, Complex z);

/// Jump matrices exactly as they enter 2 beta = Lambda delta.
JumpMatrix lambda_family(int family, Complex z);

/// M = (1 - A h I)^{-1} (1 + A h I), with A the half-swap of each
/// (value, derivative) pair and I = diag(1,-1,1,-1).
/// Throws NumericalError("non-invertible extension map") if 1 - A h I is
/// singular (condition number above 1e12).
BoundaryMatrix m_from_h(const CouplingMatrix& h);

/// M = (1 - D Lambda D / 2)^{-1} (1 + D Lambda D / 2), D = diag(1,-1,1,-1).
/// D accounts for the minus signs in the derivative functionals, the 1/2 for
/// beta being the half-jump.
BoundaryMatrix m_from_lambda(const JumpMatrix& lambda);

BoundaryVector apply_bc(const BoundaryMatrix& m, const BoundaryVector& gamma_minus);

/// Boundary matrix of the combined coupling sum_f h_family(f, z_f).
BoundaryMatrix mixing_matrix(const MixingParams& p);

}  // namespace spinflip
