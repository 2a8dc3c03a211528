#pragma once

// Stationary two-channel scattering and bound states on the line for a point
// interaction Gamma(0+) = M Gamma(0-).
//
// Incidence from the left in spin channel s:
//   x < 0: e^{ikx} chi_s + sum_j r_js e^{-ikx} chi_j
//   x > 0: sum_j t_js e^{ikx} chi_j
// and mirrored for incidence from the right. Column s of r and t holds the
// amplitudes for incident spin s (0 = up, 1 = down).

#include "spinflip/extension_algebra.hpp"
#include "spinflip/types.hpp"

#include <vector>

namespace spinflip {

enum class Side { left, right };

struct ScatterAmplitudes {
  double k = 0.0;
  Side side = Side::left;
  Mat2 r = Mat2::Zero();
  Mat2 t = Mat2::Identity();

  /// 1 - sum_j (|r_js|^2 + |t_js|^2) for incident spin s.
  double flux_defect(int spin) const;
};

struct BoundState1D {
  double kappa = 0.0;
  double energy = 0.0;
  Vec2 left_spinor = Vec2::Zero();   ///< psi(x) = left_spinor e^{kappa x}, x < 0
  Vec2 right_spinor = Vec2::Zero();  ///< psi(x) = right_spinor e^{-kappa x}, x > 0
  double boundary_residual = 0.0;    ///< ||Gamma(0+) - M Gamma(0-)||
};

/// Throws std::invalid_argument for k <= 0 and NumericalError("resonant/
/// ill-conditioned matching") when the matching matrix has condition number
/// above 1e12.
ScatterAmplitudes scatter(const BoundaryMatrix& m, double k, Side side);

/// Basis (left up, left down, right up, right down) for both incoming and
/// outgoing waves: S = [[r_L, t_R], [t_L, r_R]].
Mat4 s_matrix(const BoundaryMatrix& m, double k);

/// max over sides and incident spins of |1 - sum(|r|^2 + |t|^2)|.
double flux_residual(const BoundaryMatrix& m, double k);

struct BoundStateOptions {
  double kappa_min = 1e-6;
  int grid_points = 4000;
  double accept_tol = 1e-10;       ///< on sigma_min / max(1, sigma_max)
  double degeneracy_tol = 1e-8;    ///< second singular value below => two states
};

/// States ordered by increasing kappa. Wave functions are normalized in L2 and
/// the largest coefficient is made real positive.
std::vector<BoundState1D> bound_states(const BoundaryMatrix& m, double kappa_max,
                                       const BoundStateOptions& opts = {});

}  // namespace spinflip
