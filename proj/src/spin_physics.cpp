#include "spinflip/spin_physics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace spinflip {

namespace {

constexpr double kHermitianTol = 1e-12;

void require_hermitian(const Mat2& m, const char* what) {
  if (!is_hermitian(m, kHermitianTol)) throw std::invalid_argument(what);
}

double bilinear_current(const BoundaryVector& g, const Mat2& sigma) {
  const Vec2 psi = g.values();
  const Vec2 dpsi = g.derivatives();
  // psi'^dag s psi + psi^dag s psi' is real for hermitian s.
  return (dpsi.dot(sigma * psi) + psi.dot(sigma * dpsi)).real();
}

}  // namespace

Mat2 PauliDecomposition::reconstruct() const {
  return omega * pauli::identity() + w[0] * pauli::x() + w[1] * pauli::y() + w[2] * pauli::z();
}

PauliDecomposition pauli_decompose(const Mat2& w_matrix) {
  require_hermitian(w_matrix, "pauli_decompose: matrix is not hermitian");
  PauliDecomposition d;
  d.omega = 0.5 * w_matrix.trace().real();
  d.w[0] = 0.5 * (pauli::x() * w_matrix).trace().real();
  d.w[1] = 0.5 * (pauli::y() * w_matrix).trace().real();
  d.w[2] = 0.5 * (pauli::z() * w_matrix).trace().real();
  return d;
}

SpinFilterResult spin_filter(const MixingParams& p, double tol) {
  SpinFilterResult r;
  if (std::abs(p.z2) > tol) r.violated.emplace_back("z2 != 0");
  if (std::abs(p.z3) > tol) r.violated.emplace_back("z3 != 0");
  if (std::abs(p.z1.real()) > tol) r.violated.emplace_back("Re z1 != 0");
  if (std::abs(p.z4.imag()) > tol) r.violated.emplace_back("Im z4 != 0");
  r.accepted = r.violated.empty();
  if (r.accepted) r.rashba = {-p.z1.imag(), -p.z4.real()};
  return r;
}

BoundaryMatrix rashba_bc(RashbaKind kind, double value) {
  BoundaryMatrix out;
  const double c = 2.0 * value;
  if (kind == RashbaKind::x1) {
    out.m(1, 3) = c;
    out.m(3, 1) = c;
  } else {
    out.m(0, 3) = c;
    out.m(2, 1) = c;
  }
  return out;
}

SxConjugation sx_conjugate(const Mat2& w_matrix) {
  require_hermitian(w_matrix, "sx_conjugate: matrix is not hermitian");
  SxConjugation out;
  const Complex off = w_matrix(0, 1);
  out.theta = std::abs(off) > 0.0 ? std::arg(off) : 0.0;

  const Mat2 gauge = Vec2(1.0, std::polar(1.0, out.theta)).asDiagonal();
  Mat2 u;
  u << 1.0, 1.0, 1.0, -1.0;
  u /= std::sqrt(2.0);
  out.matrix = u.adjoint() * gauge * w_matrix * gauge.adjoint() * u;
  return out;
}

double current_jy(const BoundaryVector& g) { return -bilinear_current(g, pauli::z()); }

double current_jz(const BoundaryVector& g) { return bilinear_current(g, pauli::y()); }

CurrentJump pauli_current_jump(const BoundaryMatrix& m, const BoundaryVector& gamma_minus) {
  const BoundaryVector plus = apply_bc(m, gamma_minus);
  return {current_jy(plus) - current_jy(gamma_minus), current_jz(plus) - current_jz(gamma_minus)};
}

const std::vector<BoundaryVector>& probe_states() {
  static const std::vector<BoundaryVector> probes = [] {
    std::vector<BoundaryVector> out;
    for (int i = 0; i < 4; ++i) out.push_back(BoundaryVector::from(Vec4::Unit(i)));
    for (int i = 0; i < 4; ++i) {
      for (int j = i + 1; j < 4; ++j) {
        out.push_back(BoundaryVector::from(Vec4::Unit(i) + Vec4::Unit(j)));
        out.push_back(BoundaryVector::from(Vec4::Unit(i) + kI * Vec4::Unit(j)));
      }
    }
    return out;
  }();
  return probes;
}

CurrentJump max_current_jump(const BoundaryMatrix& m) {
  CurrentJump worst;
  for (const auto& g : probe_states()) {
    const CurrentJump j = pauli_current_jump(m, g);
    worst.d_jy = std::max(worst.d_jy, std::abs(j.d_jy));
    worst.d_jz = std::max(worst.d_jz, std::abs(j.d_jz));
  }
  return worst;
}

}  // namespace spinflip
