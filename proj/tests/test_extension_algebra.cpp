#include "doctest.h"
#include "oracles.hpp"

#include "spinflip/extension_algebra.hpp"

#include <random>

using namespace spinflip;

namespace {

// 1-based entry lookup, as the families are written down
Complex at(const Mat4& m, int r, int c) { return m(r - 1, c - 1); }

// off-identity entries of m, all others must vanish
bool only_entries(const Mat4& m, const Mat4& base, std::initializer_list<std::tuple<int, int, Complex>> entries,
                  double tol = 0.0) {
  Mat4 expected = base;
  for (const auto& [r, c, v] : entries) expected(r - 1, c - 1) = v;
  return (m - expected).cwiseAbs().maxCoeff() <= tol;
}

double direct_j4(const Mat4& m) {
  Mat4 j = Mat4::Zero();
  j(0, 1) = -1.0;
  j(1, 0) = 1.0;
  j(2, 3) = -1.0;
  j(3, 2) = 1.0;
  return (m.adjoint() * j * m - j).norm();
}

}  // namespace

TEST_CASE("j4 residual") {
  CHECK(j4_residual(BoundaryMatrix{}) == 0.0);
  CHECK(j4_residual(m_family(1, {0.3, 0.4})) <= 1e-14);
  Mat4 d = Mat4::Identity();
  d(0, 0) = 2.0;
  CHECK(j4_residual({d}) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(j4_residual({d}) > 1.0);
}

TEST_CASE("generator residual") {
  CHECK(generator_residual({Mat4::Zero()}) == 0.0);
  CHECK(generator_residual({m_family(1, {1.0, 2.0}).m - Mat4::Identity()}) <= 1e-15);
  Mat4 x = Mat4::Zero();
  x(0, 0) = 1.0;
  CHECK(generator_residual({x}) > 0.0);
}

TEST_CASE("m_family entries") {
  const Mat4 id = Mat4::Identity();
  CHECK(m_family(1, 0.0).m == id);
  CHECK(only_entries(m_family(1, kI).m, id, {{2, 4, kI}, {3, 1, kI}}));
  CHECK(only_entries(m_family(4, 1.0).m, id, {{1, 4, 1.0}, {3, 2, 1.0}}));
  const Complex z{0.4, -1.3};
  CHECK(only_entries(m_family(1, z).m, id, {{2, 4, z}, {3, 1, -std::conj(z)}}));
  CHECK(only_entries(m_family(2, z).m, id, {{1, 3, z}, {4, 2, -std::conj(z)}}));
  CHECK(only_entries(m_family(3, z).m, id, {{2, 3, z}, {4, 1, std::conj(z)}}));
  CHECK(only_entries(m_family(4, z).m, id, {{1, 4, z}, {3, 2, std::conj(z)}}));
}

TEST_CASE("family index is validated") {
  for (int bad : {0, 5, -1, 7}) {
    CHECK_THROWS_AS(m_family(bad, 1.0), std::out_of_range);
    CHECK_THROWS_AS(h_family(bad, 1.0), std::out_of_range);
    CHECK_THROWS_AS(lambda_family(bad, 1.0), std::out_of_range);
  }
}

TEST_CASE("h_family entries and hermiticity") {
  const Mat4 zero = Mat4::Zero();
  CHECK(only_entries(h_family(1, 1.0).h, zero, {{1, 4, -1.0}, {4, 1, -1.0}}));
  CHECK(only_entries(h_family(3, kI).h, zero, {{1, 3, kI}, {3, 1, -kI}}));
  CHECK(h_family(2, 0.0).h == zero);
  std::mt19937_64 rng(7);
  for (int f = 1; f <= 4; ++f)
    for (int i = 0; i < 20; ++i) {
      const Mat4 h = h_family(f, oracle::disc_sample(rng, 3.0)).h;
      CHECK(h == h.adjoint());
    }
}

TEST_CASE("lambda_family entries") {
  const Mat4 zero = Mat4::Zero();
  CHECK(only_entries(lambda_family(1, 1.0).lambda, zero, {{2, 3, -1.0}, {4, 1, -1.0}}));
  CHECK(only_entries(lambda_family(4, 2.0 * kI).lambda, zero, {{1, 4, 2.0 * kI}, {3, 2, -2.0 * kI}}));
  CHECK(lambda_family(2, 0.0).lambda == zero);
  for (int f = 1; f <= 4; ++f) {
    const Mat4 l = lambda_family(f, {0.7, -0.2}).lambda;
    CHECK((l * l).norm() == 0.0);
  }
}

TEST_CASE("family invariants on sampled z") {
  std::mt19937_64 rng(11);
  for (int f = 1; f <= 4; ++f)
    for (int i = 0; i < 100; ++i) {
      const Complex z = oracle::disc_sample(rng, 10.0);
      const BoundaryMatrix m = m_family(f, z);
      const Mat4 n = m.m - Mat4::Identity();
      CHECK(direct_j4(m.m) <= 1e-13);
      CHECK(j4_residual(m) <= 1e-13);
      CHECK((n * n).norm() == 0.0);
      CHECK(generator_residual({n}) <= 1e-14);
      // nilpotent: exp(N) = I + N
      CHECK((Mat4::Identity() + n - m.m).norm() == 0.0);
    }
}

TEST_CASE("m_from_h") {
  CHECK(m_from_h(CouplingMatrix{}).m.isApprox(Mat4::Identity()));
  const Complex z{0.7, -0.2};
  CHECK((m_from_h(h_family(1, z)).m - m_family(1, z).m).cwiseAbs().maxCoeff() <= 1e-13);

  std::mt19937_64 rng(3);
  for (int f = 1; f <= 4; ++f)
    for (int i = 0; i < 50; ++i) {
      const Complex w = oracle::disc_sample(rng, 2.0);
      CHECK((m_from_h(h_family(f, w)).m - m_family(f, w).m).cwiseAbs().maxCoeff() <= 1e-13);
    }

  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    Mat4 a;
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) a(r, c) = Complex(u(rng), u(rng));
    const Mat4 h = 0.5 * (a + a.adjoint());
    CHECK(j4_residual(m_from_h({h})) <= 1e-12);
  }
}

TEST_CASE("m_from_h rejects a singular map") {
  Mat4 h = Mat4::Zero();
  h(0, 0) = 2.0;
  h(1, 1) = -2.0;
  CHECK_THROWS_AS(m_from_h({h}), NumericalError);
}

TEST_CASE("m_from_lambda family permutation") {
  CHECK(m_from_lambda(JumpMatrix{}).m.isApprox(Mat4::Identity()));
  const Complex z{1.0, -1.0};
  CHECK((m_from_lambda(lambda_family(2, z)).m - m_family(2, z).m).cwiseAbs().maxCoeff() <= 1e-13);
  CHECK((m_from_lambda(lambda_family(1, z)).m - m_family(3, z).m).cwiseAbs().maxCoeff() <= 1e-13);
  CHECK((m_from_lambda(lambda_family(3, z)).m - m_family(1, -z).m).cwiseAbs().maxCoeff() <= 1e-13);
  CHECK((m_from_lambda(lambda_family(4, z)).m - m_family(4, -z).m).cwiseAbs().maxCoeff() <= 1e-13);

  // the same statement through the exported table, and I + D Lambda D directly
  const Eigen::Vector4cd dvec(1.0, -1.0, 1.0, -1.0);
  const Mat4 d = dvec.asDiagonal();
  std::mt19937_64 rng(5);
  for (int f = 1; f <= 4; ++f) {
    const FamilyImage img = kLambdaToBoundary[f - 1];
    for (int i = 0; i < 25; ++i) {
      const Complex w = oracle::disc_sample(rng, 2.0);
      const Mat4 expected = m_family(img.family, static_cast<double>(img.z_sign) * w).m;
      CHECK((m_from_lambda(lambda_family(f, w)).m - expected).cwiseAbs().maxCoeff() <= 1e-13);
      const Mat4 direct = Mat4::Identity() + d * lambda_family(f, w).lambda * d;
      CHECK((direct - expected).cwiseAbs().maxCoeff() <= 1e-13);
    }
  }
}

TEST_CASE("apply_bc") {
  const BoundaryVector e1{1.0, 0.0, 0.0, 0.0};
  CHECK(apply_bc(BoundaryMatrix{}, e1).vec() == e1.vec());
  CHECK(apply_bc(m_family(1, kI), e1).vec() == Vec4(1.0, 0.0, kI, 0.0));
  CHECK(apply_bc(m_family(3, 2.0), {1.0, 1.0, 1.0, 1.0}).vec() == Vec4(1.0, 3.0, 1.0, 3.0));
}

TEST_CASE("apply_bc conserves the scalar current") {
  std::mt19937_64 rng(13);
  std::normal_distribution<double> g;
  const Mat4 j = j4();
  for (int f = 1; f <= 4; ++f)
    for (int i = 0; i < 20; ++i) {
      const BoundaryMatrix m = m_family(f, oracle::disc_sample(rng, 2.0));
      const Vec4 gm(Complex(g(rng), g(rng)), Complex(g(rng), g(rng)), Complex(g(rng), g(rng)),
                    Complex(g(rng), g(rng)));
      const Vec4 gp = apply_bc(m, BoundaryVector::from(gm)).vec();
      const double before = (gm.adjoint() * j * gm)(0).imag();
      const double after = (gp.adjoint() * j * gp)(0).imag();
      CHECK(after == doctest::Approx(before).epsilon(1e-12));
    }
}

TEST_CASE("mixing_matrix is J4-unitary for arbitrary parameters") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 50; ++i) {
    const MixingParams p{oracle::disc_sample(rng, 1.0), oracle::disc_sample(rng, 1.0),
                         oracle::disc_sample(rng, 1.0), oracle::disc_sample(rng, 1.0)};
    CHECK(j4_residual(mixing_matrix(p)) <= 1e-12);
  }
  const Complex z{0.3, 0.8};
  CHECK(mixing_matrix({0.0, 0.0, z, 0.0}).m.isApprox(m_family(3, z).m, 1e-14));
}
