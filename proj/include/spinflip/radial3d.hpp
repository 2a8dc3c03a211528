#pragma once

// s-wave reduction of the 3D problem to the half-line with phi = r psi and the
// boundary condition Phi'(0) = W Phi(0), W = Omega I + w . sigma.

#include "spinflip/types.hpp"

#include <array>
#include <utility>
#include <vector>

namespace spinflip {

struct RadialExtension {
  double omega = 0.0;
  std::array<double, 3> w{};

  Mat2 matrix() const;
};

struct RadialBoundState {
  double energy = 0.0;
  Vec2 channel_spinor = Vec2::Zero();
  double kappa = 0.0;
};

/// Eigenchannel of W: eigenvalue and unit eigenvector, phase fixed so the
/// largest component is real positive.
struct RadialChannel {
  double eigenvalue = 0.0;
  Vec2 spinor = Vec2::Zero();
};

/// Channels ordered (Omega + |w|, Omega - |w|).
std::array<RadialChannel, 2> radial_channels(const RadialExtension& ext);

/// One state per negative eigenvalue lambda: kappa = -lambda, E = -kappa^2.
/// Ordered by increasing energy. lambda = 0 gives no state.
std::vector<RadialBoundState> radial_bound_states(const RadialExtension& ext);

/// Energies (E_up, E_down) = (-(Omega + omega)^2, -(Omega - omega)^2) of
/// W = Omega I + omega sz. Requires Omega < 0 and |Omega| > |omega|, otherwise
/// throws std::invalid_argument.
std::pair<double, double> hyperfine_split(double omega_scalar, double omega_spin);

struct RadialPhaseShifts {
  double delta_plus = 0.0;   ///< channel Omega + |w|
  double delta_minus = 0.0;  ///< channel Omega - |w|
};

/// delta = arccot(lambda / k) on the branch (-pi/2, pi/2], from
/// phi = sin(kr + delta), phi'(0) = lambda phi(0). Throws for k <= 0.
RadialPhaseShifts radial_phase_shifts(const RadialExtension& ext, double k);

double s_wave_phase_shift(double lambda, double k);

}  // namespace spinflip
