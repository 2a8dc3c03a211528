#include "doctest.h"
#include "oracles.hpp"

#include "spinflip/radial3d.hpp"
#include "spinflip/spin_physics.hpp"

#include <numbers>
#include <random>

using namespace spinflip;

namespace {

std::vector<double> energies(const RadialExtension& ext) {
  std::vector<double> out;
  for (const auto& s : radial_bound_states(ext)) out.push_back(s.energy);
  return out;
}

RadialExtension from_matrix(const Mat2& w) {
  const auto d = pauli_decompose(w);
  return {d.omega, d.w};
}

}  // namespace

TEST_CASE("spin-split bound state") {
  const auto states = radial_bound_states({0.0, {0.0, 0.0, 1.0}});
  REQUIRE(states.size() == 1);
  CHECK(states[0].energy == doctest::Approx(-1.0));
  CHECK(states[0].kappa == doctest::Approx(1.0));
  CHECK(std::abs(states[0].channel_spinor(1)) == doctest::Approx(1.0));
  CHECK(std::abs(states[0].channel_spinor(0)) <= 1e-15);

  CHECK(radial_bound_states({1.0, {0.0, 0.0, 0.0}}).empty());
  // threshold: lambda = 0 binds nothing
  CHECK(radial_bound_states({-1.0, {0.0, 0.0, 1.0}}).size() == 1);
}

TEST_CASE("hyperfine splitting") {
  const auto states = radial_bound_states({-2.0, {0.0, 0.0, 1.0}});
  REQUIRE(states.size() == 2);
  CHECK(states[0].energy == doctest::Approx(-9.0).epsilon(1e-12));
  CHECK(states[1].energy == doctest::Approx(-1.0).epsilon(1e-12));

  auto [up, down] = hyperfine_split(-2.0, 1.0);
  CHECK(up == -1.0);
  CHECK(down == -9.0);
  std::tie(up, down) = hyperfine_split(-1.0, 0.0);
  CHECK(up == -1.0);
  CHECK(down == -1.0);
  std::tie(up, down) = hyperfine_split(-3.0, 2.0);
  CHECK(up == -1.0);
  CHECK(down == -25.0);

  CHECK_THROWS_AS(hyperfine_split(1.0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(hyperfine_split(-1.0, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(hyperfine_split(-1.0, -1.0), std::invalid_argument);

  for (double om : {-5.0, -2.5, -1.2})
    for (double w : {-1.0, -0.3, 0.4, 1.1}) {
      const auto [e_up, e_dn] = hyperfine_split(om, w);
      auto e = energies({om, {0.0, 0.0, w}});
      REQUIRE(e.size() == 2);
      std::vector<double> split{e_up, e_dn};
      std::sort(split.begin(), split.end());
      CHECK(std::abs(e[0] - split[0]) <= 1e-12);
      CHECK(std::abs(e[1] - split[1]) <= 1e-12);
    }
}

TEST_CASE("energies match the kappa-scan oracle") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int i = 0; i < 50; ++i) {
    const RadialExtension ext{u(rng), {u(rng), u(rng), u(rng)}};
    const auto got = energies(ext);
    const auto expected = oracle::radial_energies(ext.matrix());
    REQUIRE(got.size() == expected.size());
    for (std::size_t j = 0; j < got.size(); ++j) CHECK(std::abs(got[j] - expected[j]) <= 1e-10);
  }
}

TEST_CASE("bound-state spinors satisfy the boundary condition") {
  const RadialExtension ext{-1.5, {0.3, -0.8, 0.5}};
  const Mat2 w = ext.matrix();
  for (const auto& s : radial_bound_states(ext)) {
    CHECK(s.energy == doctest::Approx(-s.kappa * s.kappa));
    CHECK(s.channel_spinor.norm() == doctest::Approx(1.0));
    CHECK((w * s.channel_spinor + s.kappa * s.channel_spinor).norm() <= 1e-12);
  }
}

TEST_CASE("channels") {
  const auto ch = radial_channels({-2.0, {0.0, 3.0, 4.0}});
  CHECK(ch[0].eigenvalue == doctest::Approx(3.0));
  CHECK(ch[1].eigenvalue == doctest::Approx(-7.0));
}

TEST_CASE("basis independence under the Sx rotation") {
  std::mt19937_64 rng(19);
  std::normal_distribution<double> g;
  for (int i = 0; i < 30; ++i) {
    const Complex z(g(rng), g(rng));
    Mat2 w;
    w << -3.0, z, std::conj(z), -3.0;
    const auto before = energies(from_matrix(w));
    const auto after = energies(from_matrix(sx_conjugate(w).matrix));
    REQUIRE(before.size() == after.size());
    for (std::size_t j = 0; j < before.size(); ++j) CHECK(std::abs(before[j] - after[j]) <= 1e-12);
  }
}

TEST_CASE("phase shifts") {
  const double half_pi = std::numbers::pi / 2;
  for (double k : {0.1, 1.0, 7.0}) {
    const auto d = radial_phase_shifts({0.0, {0.0, 0.0, 0.0}}, k);
    CHECK(d.delta_plus == doctest::Approx(half_pi));
    CHECK(d.delta_minus == doctest::Approx(half_pi));
  }
  CHECK(std::abs(radial_phase_shifts({1e9, {0.0, 0.0, 0.0}}, 1.0).delta_plus) <= 1e-8);
  CHECK(std::abs(radial_phase_shifts({-1e9, {0.0, 0.0, 0.0}}, 1.0).delta_plus) <= 1e-8);
  CHECK(radial_phase_shifts({1.0, {0.0, 0.0, 0.0}}, 1.0).delta_plus == doctest::Approx(std::numbers::pi / 4));
  CHECK_THROWS_AS(radial_phase_shifts({1.0, {0.0, 0.0, 0.0}}, 0.0), std::invalid_argument);

  for (double lambda : {-4.0, -0.5, 0.0, 0.3, 2.0})
    for (double k : {0.2, 1.0, 3.0}) {
      const double delta = s_wave_phase_shift(lambda, k);
      CHECK(delta > -half_pi);
      CHECK(delta <= half_pi);
      // phi = sin(k r + delta) obeys phi'(0) = lambda phi(0)
      CHECK(std::abs(k * std::cos(delta) - lambda * std::sin(delta)) <= 1e-12);
      CHECK(std::abs(std::exp(Complex(0.0, 2.0 * delta))) == 1.0);
    }

  const auto d = radial_phase_shifts({-2.0, {0.0, 0.0, 1.0}}, 1.5);
  CHECK(d.delta_plus == doctest::Approx(s_wave_phase_shift(-1.0, 1.5)));
  CHECK(d.delta_minus == doctest::Approx(s_wave_phase_shift(-3.0, 1.5)));
}
