#include "spinflip/extension_algebra.hpp"

#include "linalg_detail.hpp"

#include <stdexcept>

namespace spinflip {

namespace {

// Entry helper using the 1-based (row, col) labels of the printed matrices.
void put(Mat4& m, int row, int col, Complex v) { m(row - 1, col - 1) = v; }

Mat4 derivative_sign() { return Eigen::Vector4cd(1.0, -1.0, 1.0, -1.0).asDiagonal(); }

Mat4 cayley(const Mat4& n, const char* what) {
  const Mat4 id = Mat4::Identity();
  const Mat4 lhs = id - n;
  if (detail::condition_number(lhs) > detail::kMaxCondition) throw NumericalError(what);
  return lhs.partialPivLu().solve(id + n);
}

}  // namespace

Complex MixingParams::operator[](int family) const {
  check_family(family);
  switch (family) {
    case 1: return z1;
    case 2: return z2;
    case 3: return z3;
    default: return z4;
  }
}

void check_family(int family) {
  if (family < 1 || family > 4) throw std::out_of_range("family out of range");
}

double j4_residual(const BoundaryMatrix& m) {
  const Mat4 j = j4();
  return (m.m.adjoint() * j * m.m - j).norm();
}

double generator_residual(const Generator& x) {
  const Mat4 j = j4();
  return (x.x.adjoint() * j + j * x.x).norm();
}

BoundaryMatrix m_family(int family, Complex z) {
  check_family(family);
  BoundaryMatrix out;
  const Complex zc = std::conj(z);
  switch (family) {
    case 1:
      put(out.m, 2, 4, z);
      put(out.m, 3, 1, -zc);
      break;
    case 2:
      put(out.m, 1, 3, z);
      put(out.m, 4, 2, -zc);
      break;
    case 3:
      put(out.m, 2, 3, z);
      put(out.m, 4, 1, zc);
      break;
    case 4:
      put(out.m, 1, 4, z);
      put(out.m, 3, 2, zc);
      break;
  }
  return out;
}

// Indexed by the boundary family each matrix generates through m_from_h, so
// families 2 and 4 appear in the opposite order to their usual listing.
CouplingMatrix h_family(int family, Complex z) {
  check_family(family);
  CouplingMatrix out;
  const Complex zc = std::conj(z);
  switch (family) {
    case 1:
      put(out.h, 1, 4, -z);
      put(out.h, 4, 1, -zc);
      break;
    case 2:
      put(out.h, 2, 3, z);
      put(out.h, 3, 2, zc);
      break;
    case 3:
      put(out.h, 1, 3, z);
      put(out.h, 3, 1, zc);
      break;
    case 4:
      put(out.h, 2, 4, -z);
      put(out.h, 4, 2, -zc);
      break;
  }
  return out;
}

JumpMatrix lambda_family(int family, Complex z) {
  check_family(family);
  JumpMatrix out;
  const Complex zc = std::conj(z);
  switch (family) {
    case 1:
      put(out.lambda, 2, 3, -z);
      put(out.lambda, 4, 1, -zc);
      break;
    case 2:
      put(out.lambda, 1, 3, z);
      put(out.lambda, 4, 2, -zc);
      break;
    case 3:
      put(out.lambda, 2, 4, -z);
      put(out.lambda, 3, 1, zc);
      break;
    case 4:
      put(out.lambda, 1, 4, z);
      put(out.lambda, 3, 2, zc);
      break;
  }
  return out;
}

BoundaryMatrix m_from_h(const CouplingMatrix& h) {
  Mat4 swap_half = Mat4::Zero();
  swap_half(0, 1) = swap_half(1, 0) = 0.5;
  swap_half(2, 3) = swap_half(3, 2) = 0.5;
  const Mat4 n = swap_half * h.h * derivative_sign();
  return {cayley(n, "non-invertible extension map")};
}

BoundaryMatrix m_from_lambda(const JumpMatrix& lambda) {
  const Mat4 d = derivative_sign();
  const Mat4 n = 0.5 * d * lambda.lambda * d;
  return {cayley(n, "non-invertible jump map")};
}

BoundaryVector apply_bc(const BoundaryMatrix& m, const BoundaryVector& gamma_minus) {
  return BoundaryVector::from(m.m * gamma_minus.vec());
}

BoundaryMatrix mixing_matrix(const MixingParams& p) {
  CouplingMatrix h;
  for (int f = 1; f <= 4; ++f) h.h += h_family(f, p[f]).h;
  return m_from_h(h);
}

}  // namespace spinflip
