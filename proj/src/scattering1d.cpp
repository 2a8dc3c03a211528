#include "spinflip/scattering1d.hpp"

#include "linalg_detail.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace spinflip {

namespace {

// Row of psi_j and psi_j' inside a boundary 4-vector.
constexpr int value_row(int j) { return 2 * j; }
constexpr int deriv_row(int j) { return 2 * j + 1; }

// Gamma(0-) = a + L u,  Gamma(0+) = b + R u,  u = (r_up, r_dn, t_up, t_dn).
struct MatchingAnsatz {
  Mat4 lower = Mat4::Zero();
  Mat4 upper = Mat4::Zero();
  Vec4 lower_incident = Vec4::Zero();
  Vec4 upper_incident = Vec4::Zero();
};

MatchingAnsatz build_ansatz(double k, Side side, int spin) {
  const Complex ik{0.0, k};
  MatchingAnsatz a;
  for (int j = 0; j < 2; ++j) {
    if (side == Side::left) {
      // reflected e^{-ikx} on the left, transmitted e^{ikx} on the right
      a.lower(value_row(j), j) = 1.0;
      a.lower(deriv_row(j), j) = -ik;
      a.upper(value_row(j), 2 + j) = 1.0;
      a.upper(deriv_row(j), 2 + j) = ik;
    } else {
      a.upper(value_row(j), j) = 1.0;
      a.upper(deriv_row(j), j) = ik;
      a.lower(value_row(j), 2 + j) = 1.0;
      a.lower(deriv_row(j), 2 + j) = -ik;
    }
  }
  if (side == Side::left) {
    a.lower_incident(value_row(spin)) = 1.0;
    a.lower_incident(deriv_row(spin)) = ik;
  } else {
    a.upper_incident(value_row(spin)) = 1.0;
    a.upper_incident(deriv_row(spin)) = -ik;
  }
  return a;
}

double sigma_ratio(const Eigen::JacobiSVD<Mat4>& svd) {
  const auto& s = svd.singularValues();
  return s(3) / std::max(1.0, s(0));
}

// Unknowns (c-_up, c-_dn, c+_up, c+_dn); rows of Gamma(0+) - M Gamma(0-).
Mat4 decaying_matching(const Mat4& m, double kappa) {
  Mat4 lower = Mat4::Zero();
  Mat4 upper = Mat4::Zero();
  for (int j = 0; j < 2; ++j) {
    lower(value_row(j), j) = 1.0;
    lower(deriv_row(j), j) = kappa;
    upper(value_row(j), 2 + j) = 1.0;
    upper(deriv_row(j), 2 + j) = -kappa;
  }
  return upper - m * lower;
}

double smallest_sigma(const Mat4& m, double kappa) {
  return sigma_ratio(Eigen::JacobiSVD<Mat4>(decaying_matching(m, kappa)));
}

double golden_section(const Mat4& m, double lo, double hi) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = smallest_sigma(m, c);
  double fd = smallest_sigma(m, d);
  for (int it = 0; it < 200 && (hi - lo) > 4.0 * std::numeric_limits<double>::epsilon() * hi; ++it) {
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = smallest_sigma(m, c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = smallest_sigma(m, d);
    }
  }
  return fc < fd ? c : d;
}

BoundState1D make_state(const Mat4& m, double kappa, const Vec4& null_vec) {
  // int |psi|^2 dx = (|c-|^2 + |c+|^2) / (2 kappa)
  Vec4 c = null_vec * std::sqrt(2.0 * kappa) / null_vec.norm();
  // first component within rounding of the largest one is made real positive,
  // so that ties between equal-magnitude components resolve reproducibly
  const double biggest = c.cwiseAbs().maxCoeff();
  Eigen::Index lead = 0;
  while (std::abs(c(lead)) < biggest * (1.0 - 1e-8)) ++lead;
  c *= std::abs(c(lead)) / c(lead);

  BoundState1D s;
  s.kappa = kappa;
  s.energy = -kappa * kappa;
  s.left_spinor = c.head<2>();
  s.right_spinor = c.tail<2>();
  const Vec4 gm{s.left_spinor(0), kappa * s.left_spinor(0), s.left_spinor(1), kappa * s.left_spinor(1)};
  const Vec4 gp{s.right_spinor(0), -kappa * s.right_spinor(0), s.right_spinor(1), -kappa * s.right_spinor(1)};
  s.boundary_residual = (gp - m * gm).norm();
  return s;
}

}  // namespace

double ScatterAmplitudes::flux_defect(int spin) const {
  return 1.0 - r.col(spin).squaredNorm() - t.col(spin).squaredNorm();
}

ScatterAmplitudes scatter(const BoundaryMatrix& m, double k, Side side) {
  if (!(k > 0.0)) throw std::invalid_argument("scatter: k must be positive");
  ScatterAmplitudes out;
  out.k = k;
  out.side = side;
  for (int spin = 0; spin < 2; ++spin) {
    const MatchingAnsatz a = build_ansatz(k, side, spin);
    const Mat4 q = a.upper - m.m * a.lower;
    if (spin == 0 && detail::condition_number(q) > detail::kMaxCondition)
      throw NumericalError("resonant/ill-conditioned matching");
    const Vec4 u = q.partialPivLu().solve(m.m * a.lower_incident - a.upper_incident);
    out.r.col(spin) = u.head<2>();
    out.t.col(spin) = u.tail<2>();
  }
  return out;
}

Mat4 s_matrix(const BoundaryMatrix& m, double k) {
  const ScatterAmplitudes left = scatter(m, k, Side::left);
  const ScatterAmplitudes right = scatter(m, k, Side::right);
  Mat4 s;
  s << left.r, right.t, left.t, right.r;
  return s;
}

double flux_residual(const BoundaryMatrix& m, double k) {
  double worst = 0.0;
  for (Side side : {Side::left, Side::right}) {
    const ScatterAmplitudes a = scatter(m, k, side);
    for (int spin = 0; spin < 2; ++spin) worst = std::max(worst, std::abs(a.flux_defect(spin)));
  }
  return worst;
}

std::vector<BoundState1D> bound_states(const BoundaryMatrix& m, double kappa_max,
                                       const BoundStateOptions& opts) {
  if (!(kappa_max > opts.kappa_min)) throw std::invalid_argument("bound_states: kappa_max too small");

  const int n = std::max(opts.grid_points, 3);
  const double log_lo = std::log(opts.kappa_min);
  const double log_hi = std::log(kappa_max);
  std::vector<double> grid(n);
  std::vector<double> sigma(n);
  for (int i = 0; i < n; ++i) {
    grid[i] = std::exp(log_lo + (log_hi - log_lo) * i / (n - 1));
    sigma[i] = smallest_sigma(m.m, grid[i]);
  }

  std::vector<BoundState1D> states;
  double last_kappa = -1.0;
  for (int i = 0; i < n; ++i) {
    const bool left_ok = i == 0 || sigma[i] <= sigma[i - 1];
    const bool right_ok = i == n - 1 || sigma[i] < sigma[i + 1];
    if (!left_ok || !right_ok) continue;
    const double lo = grid[std::max(i - 1, 0)];
    const double hi = grid[std::min(i + 1, n - 1)];
    const double kappa = golden_section(m.m, lo, hi);

    const Mat4 a = decaying_matching(m.m, kappa);
    const Eigen::JacobiSVD<Mat4> svd(a, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    const double scale = std::max(1.0, s(0));
    if (s(3) / scale > opts.accept_tol) continue;
    if (last_kappa > 0.0 && std::abs(kappa - last_kappa) <= 1e-9 * kappa) continue;
    last_kappa = kappa;

    states.push_back(make_state(m.m, kappa, svd.matrixV().col(3)));
    if (s(2) / scale < opts.degeneracy_tol) states.push_back(make_state(m.m, kappa, svd.matrixV().col(2)));
  }
  return states;
}

}  // namespace spinflip
