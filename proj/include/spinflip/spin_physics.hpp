#pragma once

// Spin interpretation of the two-component extensions: Pauli decomposition,
// the spin-compatibility filter, the Rashba-type boundary matrices, the
// S_x-basis rotation and jumps of the transverse Pauli currents.

#include "spinflip/extension_algebra.hpp"
#include "spinflip/types.hpp"

#include <array>
#include <string>
#include <vector>

namespace spinflip {

struct PauliDecomposition {
  double omega = 0.0;
  std::array<double, 3> w{};

  Mat2 reconstruct() const;
};

struct RashbaParams {
  double x1 = 0.0;  ///< potential-type strength, -Im z1
  double x4 = 0.0;  ///< kinetic-type strength, -Re z4
};

/// Outcome of spin_filter. On rejection `violated` names every failed
/// condition in the order z2, z3, Re z1, Im z4.
struct SpinFilterResult {
  bool accepted = false;
  RashbaParams rashba{};
  std::vector<std::string> violated;
};

struct CurrentJump {
  double d_jy = 0.0;
  double d_jz = 0.0;
};

enum class RashbaKind { x1, x4 };

struct SxConjugation {
  Mat2 matrix;
  double theta = 0.0;  ///< gauge phase applied before the rotation
};

/// Throws std::invalid_argument for input further than 1e-12 from hermitian.
PauliDecomposition pauli_decompose(const Mat2& w_matrix);

SpinFilterResult spin_filter(const MixingParams& p, double tol);

/// Boundary matrices stored verbatim:
///   x1: psi' continuous up to  psi_up' += 2 v psi_dn',  psi_dn' += 2 v psi_up'
///   x4: psi_up += 2 v psi_dn',  psi_dn += 2 v psi_up'
/// Neither is J4-unitary in general; see classify diagnostics.
BoundaryMatrix rashba_bc(RashbaKind kind, double value);

/// U^dagger G W G^dagger U with U = [[1,1],[1,-1]]/sqrt(2) and the gauge
/// G = diag(1, e^{i theta}), theta = arg W(0,1), making the off-diagonal
/// entry real and non-negative first.
SxConjugation sx_conjugate(const Mat2& w_matrix);

/// Transverse currents J_y = -(psi'^dag sz psi + psi^dag sz psi') and
/// J_z = psi'^dag sy psi + psi^dag sy psi' evaluated from boundary data.
double current_jy(const BoundaryVector& g);
double current_jz(const BoundaryVector& g);

/// J(0+) - J(0-) with Gamma(0+) = M Gamma(0-).
CurrentJump pauli_current_jump(const BoundaryMatrix& m, const BoundaryVector& gamma_minus);

/// Unit vectors e_i plus e_i + e_j and e_i + i e_j for i < j. Any hermitian
/// form on C^4 that vanishes on all sixteen vanishes identically.
const std::vector<BoundaryVector>& probe_states();

/// Largest |d_jy| and |d_jz| over probe_states().
CurrentJump max_current_jump(const BoundaryMatrix& m);

}  // namespace spinflip
