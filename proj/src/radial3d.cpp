#include "spinflip/radial3d.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace spinflip {

Mat2 RadialExtension::matrix() const {
  return omega * pauli::identity() + w[0] * pauli::x() + w[1] * pauli::y() + w[2] * pauli::z();
}

std::array<RadialChannel, 2> radial_channels(const RadialExtension& ext) {
  const Eigen::SelfAdjointEigenSolver<Mat2> eig(ext.matrix());
  std::array<RadialChannel, 2> out;
  // eigenvalues come back ascending; report the + channel first
  for (int i = 0; i < 2; ++i) {
    const int src = 1 - i;
    Vec2 v = eig.eigenvectors().col(src);
    Eigen::Index lead = 0;
    v.cwiseAbs().maxCoeff(&lead);
    v *= std::abs(v(lead)) / v(lead);
    out[i] = {eig.eigenvalues()(src), v};
  }
  return out;
}

std::vector<RadialBoundState> radial_bound_states(const RadialExtension& ext) {
  std::vector<RadialBoundState> states;
  const auto channels = radial_channels(ext);
  // the minus channel is deeper, so visiting it first orders by energy
  for (int i = 1; i >= 0; --i) {
    const double lambda = channels[i].eigenvalue;
    if (lambda < 0.0) states.push_back({-lambda * lambda, channels[i].spinor, -lambda});
  }
  return states;
}

std::pair<double, double> hyperfine_split(double omega_scalar, double omega_spin) {
  if (!(omega_scalar < 0.0 && std::abs(omega_scalar) > std::abs(omega_spin)))
    throw std::invalid_argument("hyperfine_split requires Omega < 0 and |Omega| > |omega|");
  const double up = omega_scalar + omega_spin;
  const double down = omega_scalar - omega_spin;
  return {-up * up, -down * down};
}

double s_wave_phase_shift(double lambda, double k) {
  if (!(k > 0.0)) throw std::invalid_argument("phase shift: k must be positive");
  if (lambda == 0.0) return 0.5 * std::numbers::pi;
  return std::atan(k / lambda);
}

RadialPhaseShifts radial_phase_shifts(const RadialExtension& ext, double k) {
  const auto channels = radial_channels(ext);
  return {s_wave_phase_shift(channels[0].eigenvalue, k), s_wave_phase_shift(channels[1].eigenvalue, k)};
}

}  // namespace spinflip
