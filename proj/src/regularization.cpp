#include "spinflip/regularization.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace spinflip {

namespace {

namespace odeint = boost::numeric::odeint;

// Four fundamental solutions, each (psi1, p1, psi2, p2) split into re/im.
using FlowState = std::array<double, 32>;

constexpr int slot(int column, int row) { return 2 * (4 * column + row); }

Complex load(const FlowState& s, int column, int row) {
  return {s[slot(column, row)], s[slot(column, row) + 1]};
}

void store(FlowState& s, int column, int row, Complex v) {
  s[slot(column, row)] = v.real();
  s[slot(column, row) + 1] = v.imag();
}

double bump_shape(double u) {
  const double q = 1.0 - u * u;
  return q > 0.0 ? std::exp(-1.0 / q) : 0.0;
}

/// Free propagation of (psi, psi') per channel over a distance d.
Mat4 free_propagator(double d, double k) {
  const double c = std::cos(k * d);
  const double s = std::sin(k * d);
  Mat4 p = Mat4::Zero();
  for (int j = 0; j < 2; ++j) {
    p(2 * j, 2 * j) = c;
    p(2 * j, 2 * j + 1) = s / k;
    p(2 * j + 1, 2 * j) = -k * s;
    p(2 * j + 1, 2 * j + 1) = c;
  }
  return p;
}

struct Segment {
  double lo;
  double hi;
  bool constant_profile;
  double constant_value;
};

std::vector<Segment> segments(const Profile& prof, double margin) {
  const double eps = prof.epsilon;
  const double outer = eps + margin;
  std::vector<Segment> out;
  if (prof.shape == ProfileShape::rectangle) {
    // Piecewise constant: evaluating at a segment end would pick up the
    // neighbouring value, so each piece carries its own constant.
    out.push_back({-outer, -0.5 * eps, true, 0.0});
    out.push_back({-0.5 * eps, 0.5 * eps, true, 1.0 / eps});
    out.push_back({0.5 * eps, outer, true, 0.0});
  } else {
    out.push_back({-outer, -eps, true, 0.0});
    out.push_back({-eps, eps, false, 0.0});
    out.push_back({eps, outer, true, 0.0});
  }
  return out;
}

class RegularizedFlow {
 public:
  RegularizedFlow(const RegularizedCoupling& c, double k, const Segment& seg)
      : c_(c), k2_(k * k), seg_(seg) {}

  void operator()(const FlowState& s, FlowState& ds, double x) const {
    const double v = seg_.constant_profile ? seg_.constant_value : c_.profile(x);
    const double kin = c_.x4 * v;
    // (I + kin sy)^{-1} = (I - kin sy) / (1 - kin^2)
    const Mat2 inv_kinetic = (Mat2::Identity() - kin * pauli::y()) / (1.0 - kin * kin);
    const Mat2 potential = c_.a_pot * v - k2_ * Mat2::Identity();
    for (int col = 0; col < 4; ++col) {
      const Vec2 psi{load(s, col, 0), load(s, col, 2)};
      const Vec2 p{load(s, col, 1), load(s, col, 3)};
      const Vec2 dpsi = inv_kinetic * p;
      const Vec2 dp = potential * psi;
      store(ds, col, 0, dpsi(0));
      store(ds, col, 1, dp(0));
      store(ds, col, 2, dpsi(1));
      store(ds, col, 3, dp(1));
    }
  }

 private:
  const RegularizedCoupling& c_;
  double k2_;
  Segment seg_;
};

}  // namespace

double bump_normalization() {
  static const double norm = [] {
    boost::math::quadrature::tanh_sinh<double> integrator;
    return 1.0 / integrator.integrate(bump_shape, -1.0, 1.0);
  }();
  return norm;
}

double Profile::operator()(double x) const {
  if (shape == ProfileShape::rectangle) return std::abs(x) <= 0.5 * epsilon ? 1.0 / epsilon : 0.0;
  return bump_normalization() / epsilon * bump_shape(x / epsilon);
}

double Profile::max_value() const {
  if (shape == ProfileShape::rectangle) return 1.0 / epsilon;
  return bump_normalization() / epsilon * std::exp(-1.0);
}

double profile_eval(const Profile& p, double x) { return p(x); }

TransferMatrix transfer_matrix_eps(const RegularizedCoupling& c, double k, const IntegratorOptions& opts) {
  if (!(k > 0.0)) throw std::invalid_argument("transfer_matrix_eps: k must be positive");
  if (!(c.profile.epsilon > 0.0)) throw std::invalid_argument("transfer_matrix_eps: epsilon must be positive");
  if (!is_hermitian(c.a_pot, 1e-12)) throw std::invalid_argument("transfer_matrix_eps: a_pot is not hermitian");
  if (std::abs(c.x4) * c.profile.max_value() >= 1.0) throw NumericalError("kinetic coefficient singular");

  const double eps = c.profile.epsilon;
  const double margin = opts.margin_fraction * eps;
  const auto pieces = segments(c.profile, margin);

  FlowState state{};
  for (int col = 0; col < 4; ++col) store(state, col, col, 1.0);

  using Stepper = odeint::runge_kutta_fehlberg78<FlowState>;
  try {
    for (const Segment& seg : pieces) {
      auto stepper = odeint::make_controlled<Stepper>(opts.abs_tol, opts.rel_tol);
      const double dt0 = std::min(seg.hi - seg.lo, eps) * 1e-2;
      odeint::integrate_adaptive(stepper, RegularizedFlow(c, k, seg), state, seg.lo, seg.hi, dt0);
    }
  } catch (const odeint::odeint_error& e) {
    throw NumericalError(std::string("integrator step-size underflow: ") + e.what());
  }

  Mat4 flow;
  for (int col = 0; col < 4; ++col)
    for (int row = 0; row < 4; ++row) flow(row, col) = load(state, col, row);

  const double x_lo = pieces.front().lo;
  const double x_hi = pieces.back().hi;
  return {k, free_propagator(-x_hi, k) * flow * free_propagator(x_lo, k)};
}

BoundaryMatrix point_interaction_limit(const Mat2& a_pot, double x4_integrated) {
  BoundaryMatrix out;
  const Mat2 value_jump = -x4_integrated * pauli::y();
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      out.m(2 * i + 1, 2 * j) += a_pot(i, j);
      out.m(2 * i, 2 * j + 1) += value_jump(i, j);
    }
  }
  return out;
}

FamilyMatch match_family(const TransferMatrix& t, double tol) {
  const Mat4 id = Mat4::Identity();
  const Mat4 r0 = t.t - id;
  auto inner = [](const Mat4& a, const Mat4& b) { return (a.adjoint() * b).trace().real(); };

  FamilyMatch best;
  best.residual = std::numeric_limits<double>::infinity();
  for (int f = 1; f <= 4; ++f) {
    // m_family(f, a + ib) - I = a b1 + b b2
    const Mat4 b1 = m_family(f, 1.0).m - id;
    const Mat4 b2 = m_family(f, kI).m - id;
    Eigen::Matrix2d gram;
    gram << inner(b1, b1), inner(b1, b2), inner(b2, b1), inner(b2, b2);
    const Eigen::Vector2d rhs{inner(b1, r0), inner(b2, r0)};
    const Eigen::Vector2d ab = gram.ldlt().solve(rhs);
    const Complex z{ab(0), ab(1)};
    const double res = (t.t - m_family(f, z).m).norm();
    if (res < best.residual) {
      best.family = f;
      best.z = z;
      best.residual = res;
    }
  }
  best.matched = best.residual <= tol;
  return best;
}

ConvergenceReport converge_study(const RegularizedCoupling& c_base, double k, const std::vector<double>& eps_list,
                                 const ConvergenceOptions& opts) {
  if (eps_list.size() < 3) throw std::invalid_argument("converge_study: need at least three epsilon values");
  for (std::size_t i = 0; i < eps_list.size(); ++i) {
    if (!(eps_list[i] > 0.0)) throw std::invalid_argument("converge_study: epsilon must be positive");
    if (i > 0 && !(eps_list[i] < eps_list[i - 1]))
      throw std::invalid_argument("converge_study: epsilon list must be strictly decreasing");
  }

  ConvergenceReport report;
  report.k = k;
  report.exploratory = c_base.x4 != 0.0;

  TransferMatrix finest;
  for (double eps : eps_list) {
    RegularizedCoupling c = c_base;
    c.profile.epsilon = eps;
    if (report.exploratory) {
      const double cap = opts.kinetic_amplitude_cap / c.profile.max_value();
      c.x4 = std::copysign(std::min(std::abs(c_base.x4), cap), c_base.x4);
    }
    finest = transfer_matrix_eps(c, k, opts.integrator);
    const BoundaryMatrix target = point_interaction_limit(c.a_pot, c.x4);
    report.rows.push_back({eps, (finest.t - target.m).norm(), c.x4});
  }

  const bool above_floor = std::all_of(report.rows.begin(), report.rows.end(),
                                       [&](const ConvergenceRow& r) { return r.residual > opts.residual_floor; });
  if (above_floor) {
    // least-squares slope of log(residual) against log(eps)
    const double n = static_cast<double>(report.rows.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (const auto& r : report.rows) {
      const double lx = std::log(r.epsilon);
      const double ly = std::log(r.residual);
      sx += lx;
      sy += ly;
      sxx += lx * lx;
      sxy += lx * ly;
    }
    report.fitted_order = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  }
  report.limit_match = match_family(finest, 0.05);
  return report;
}

}  // namespace spinflip
