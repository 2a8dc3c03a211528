#pragma once

// Smooth-profile realizations of the singular spin couplings and their
// epsilon -> 0 behaviour.
//
// The regularized stationary equation is taken in the symmetric
// effective-mass form
//
//   -[(I + x4 sy V) psi']' + a_pot V psi = k^2 psi,
//
// equivalently (I + x4 sy V) psi'' = -x4 sy V' psi' + (a_pot V - k^2) psi,
// and is integrated in the variables (psi, p = (I + x4 sy V) psi'), which
// stay continuous across the rectangle profile's jumps.

#include "spinflip/extension_algebra.hpp"
#include "spinflip/types.hpp"

#include <optional>
#include <vector>

namespace spinflip {

enum class ProfileShape { bump, rectangle };

struct Profile {
  ProfileShape shape = ProfileShape::bump;
  double epsilon = 0.1;

  /// Unit-integral delta-sequence member:
  ///   rectangle: 1/eps on |x| <= eps/2
  ///   bump:      (C/eps) exp(-1/(1 - (x/eps)^2)) on |x| < eps
  double operator()(double x) const;
  double max_value() const;
};

/// Normalization C of the bump profile, 1 / int_{-1}^{1} exp(-1/(1-u^2)) du.
double bump_normalization();

double profile_eval(const Profile& p, double x);

struct RegularizedCoupling {
  Profile profile;
  Mat2 a_pot = Mat2::Zero();  ///< hermitian potential coefficient, e.g. x1 * sy
  double x4 = 0.0;            ///< kinetic coupling along sy
};

struct TransferMatrix {
  double k = 0.0;
  Mat4 t = Mat4::Identity();
};

struct IntegratorOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double margin_fraction = 0.1;  ///< free margin beyond the support, in units of eps
};

/// Maps Gamma(0-) to Gamma(0+) of the free solutions continued through the
/// profile region. Throws std::invalid_argument for k <= 0 or non-hermitian
/// a_pot, NumericalError("kinetic coefficient singular") when
/// |x4| max V >= 1, and NumericalError on integrator step-size underflow.
TransferMatrix transfer_matrix_eps(const RegularizedCoupling& c, double k,
                                   const IntegratorOptions& opts = {});

/// Point interaction matched to a coupling to first order in its integrated
/// strengths: psi' jumps by a_pot psi, psi jumps by -x4 sy psi'.
BoundaryMatrix point_interaction_limit(const Mat2& a_pot, double x4_integrated);

struct FamilyMatch {
  bool matched = false;
  int family = 0;
  Complex z{};
  double residual = 0.0;  ///< ||T - m_family(family, z)||_F of the best fit
};

/// Least-squares fit of T by every m_family (each linear in Re z, Im z) and
/// selection of the family with the smallest residual.
FamilyMatch match_family(const TransferMatrix& t, double tol);

struct ConvergenceRow {
  double epsilon = 0.0;
  double residual = 0.0;
  double kinetic_strength = 0.0;  ///< width-integrated x4 actually applied
};

struct ConvergenceReport {
  double k = 0.0;
  std::vector<ConvergenceRow> rows;
  std::optional<double> fitted_order;  ///< slope of log residual vs log eps
  bool exploratory = false;            ///< true when a kinetic coupling is present
  FamilyMatch limit_match;             ///< family fit of the finest-eps target
};

struct ConvergenceOptions {
  IntegratorOptions integrator{};
  /// Kinetic studies cap |x4| max V at this value, so the applied integrated
  /// strength shrinks with eps once the cap is active.
  double kinetic_amplitude_cap = 0.5;
  /// All residuals above this floor are required for the order to be fitted.
  double residual_floor = 1e-10;
};

/// Residual ||T_eps(k) - M_target||_F per eps (eps strictly decreasing,
/// at least three values) with M_target = point_interaction_limit.
ConvergenceReport converge_study(const RegularizedCoupling& c_base, double k,
                                 const std::vector<double>& eps_list,
                                 const ConvergenceOptions& opts = {});

}  // namespace spinflip
