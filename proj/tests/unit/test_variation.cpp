// Copyright 2026 The bridgesim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <numbers>

#include <doctest.h>

#include "core/envelope.hpp"
#include "core/variation.hpp"

using namespace bridgesim;

namespace {

GridFunction double_well(std::size_t cells) {
  return GridFunction::sample(-2.0, 2.0, cells,
                              [](double x) { return (x * x - 1.0) * (x * x - 1.0); });
}

GridFunction wide_bump(std::size_t cells, double radius) {
  return GridFunction::sample(-2.0, 2.0, cells, [radius](double x) { return bump(x / radius); });
}

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("strictly convex profile leaves the test function unchanged") {
  const auto f = GridFunction::sample(-1.0, 1.0, 200, [](double x) { return std::cosh(x); });
  const auto phi = GridFunction::sample(-1.0, 1.0, 200, [](double x) { return bump(x); });
  const auto J = j_phi(f, phi, convex_envelope(f));
  CHECK(max_abs_diff(J.values.values(), phi.values()) == 0.0);
}

TEST_CASE("concave profile above its chord annihilates compact test functions") {
  const auto f = GridFunction::sample(0.0, 1.0, 200, [](double x) { return -x * (x - 1.0); });
  const auto phi =
      GridFunction::sample(0.0, 1.0, 200, [](double x) { return bump((x - 0.5) / 0.3); });
  const auto J = j_phi(f, phi, convex_envelope(f));
  CHECK(max_abs(J.values.values()) == 0.0);
}

TEST_CASE("double well: affine on the slack stretch, matches finite differences") {
  const std::size_t n = 2000;
  const auto f = double_well(n);
  const auto phi = wide_bump(n, 1.5);
  const EnvelopeResult env = convex_envelope(f);
  const auto J = j_phi(f, phi, env);

  // Nodes n/4 and 3n/4 are x = -1 and x = 1.
  const std::size_t a = n / 4, b = 3 * n / 4;
  for (std::size_t i = 0; i <= n; ++i) {
    if (i <= a || i >= b) {
      CHECK(J.values[i] == phi[i]);
    } else {
      const double t = static_cast<double>(i - a) / static_cast<double>(b - a);
      CHECK(J.values[i] == doctest::Approx((1 - t) * phi[a] + t * phi[b]).epsilon(1e-12));
    }
  }

  const double target = trapezoid(J.values);
  const auto q = directional_quotient(f, phi, {1e-6, -1e-6});
  CHECK(q[0] == doctest::Approx(target).epsilon(1e-4));
  CHECK(q[1] == doctest::Approx(target).epsilon(1e-4));
}

TEST_CASE("noflat profiles have equal one-sided fields") {
  const auto f = double_well(800);
  const auto phi = wide_bump(800, 1.7);
  const EnvelopeResult env = convex_envelope(f);
  const auto J = j_phi(f, phi, env);
  const auto Jp = j_phi_pm(f, phi, env, Sign::Plus);
  const auto Jm = j_phi_pm(f, phi, env, Sign::Minus);
  CHECK(max_abs_diff(Jp.values.values(), J.values.values()) < 1e-14);
  CHECK(max_abs_diff(Jm.values.values(), J.values.values()) < 1e-14);
}

TEST_CASE("flat envelope: right field vanishes, left field is the concave majorant") {
  const std::size_t n = 4000;
  const auto f = GridFunction::sample(-2.0, 2.0, n, [](double) { return 0.0; });
  const auto phi = GridFunction::sample(-2.0, 2.0, n, [](double x) { return bump(x); });
  const EnvelopeResult env = convex_envelope(f);
  CHECK_FALSE(check_noflat(f, env));
  CHECK_THROWS_AS(j_phi(f, phi, env), NoflatViolation);

  const auto Jp = j_phi_pm(f, phi, env, Sign::Plus);
  const auto Jm = j_phi_pm(f, phi, env, Sign::Minus);
  CHECK(max_abs(Jp.values.values()) < 1e-15);
  CHECK(trapezoid(Jm.values) > 0.5);
  for (std::size_t i = 0; i <= n; ++i) CHECK(Jm.values[i] >= phi[i] - 1e-15);

  // On |x| <= zeta the concave majorant touches phi.
  const double zeta = flat_envelope_tangency();
  for (std::size_t i = 0; i <= n; ++i) {
    if (std::abs(f.x(i)) <= zeta - 2e-3) CHECK(Jm.values[i] == doctest::Approx(phi[i]));
  }
}

TEST_CASE("flat-envelope example numbers") {
  const FlatEnvelopeReport r = flat_envelope_example();
  CHECK(std::abs(r.zeta_root - 0.25) <= 0.01);
  CHECK(std::abs(r.zeta_envelope - 0.25) <= 0.01);
  CHECK(r.tangency_residual <= 1e-8);
  CHECK(std::abs(r.right_limit) < 1e-3 * std::abs(r.left_limit));
  CHECK(r.left_limit == doctest::Approx(r.concave_majorant_integral).epsilon(1e-3));
  CHECK(r.left_limit > 0.0);
}

TEST_CASE("convex profile: both quotients tend to the integral of phi") {
  const auto f = GridFunction::sample(-2.0, 2.0, 1000, [](double x) { return x * x; });
  const auto phi = wide_bump(1000, 1.0);
  const std::vector<double> s = {1e-3, 1e-4, 1e-5};
  const std::vector<double> sn = {-1e-3, -1e-4, -1e-5};
  const double target = trapezoid(phi);
  CHECK(extrapolate_to_zero(s, directional_quotient(f, phi, s)) ==
        doctest::Approx(target).epsilon(1e-6));
  CHECK(extrapolate_to_zero(sn, directional_quotient(f, phi, sn)) ==
        doctest::Approx(target).epsilon(1e-6));
}

TEST_CASE("noflat profile: extrapolated quotients agree with the field integral") {
  const auto f = double_well(2000);
  const auto phi = wide_bump(2000, 1.4);
  const double target = trapezoid(j_phi(f, phi, convex_envelope(f)).values);
  const std::vector<double> s = {1e-4, 5e-5, 2.5e-5};
  const std::vector<double> sn = {-1e-4, -5e-5, -2.5e-5};
  CHECK(extrapolate_to_zero(s, directional_quotient(f, phi, s)) ==
        doctest::Approx(target).epsilon(1e-5));
  CHECK(extrapolate_to_zero(sn, directional_quotient(f, phi, sn)) ==
        doctest::Approx(target).epsilon(1e-5));
}

TEST_CASE("composite field reduces to the plain field for the identity") {
  const auto f = double_well(600);
  const auto phi = wide_bump(600, 1.6);
  const EnvelopeResult env = convex_envelope(f);
  const auto G = g_u_phi(f, phi, [](double) { return 1.0; }, env);
  const auto J = j_phi(f, phi, env);
  CHECK(max_abs_diff(G.values.values(), J.values.values()) == 0.0);
}

TEST_CASE("sine composite: cosine weights, one-sided forms agree under noflat") {
  const std::size_t n = 800;
  const auto theta = GridFunction::sample(
      -2.0, 2.0, n, [](double x) { return 0.1 * (x * x - 1.0) * (x * x - 1.0); });
  const auto psi = wide_bump(n, 1.8);
  std::vector<double> s(n + 1);
  for (std::size_t i = 0; i <= n; ++i) s[i] = std::sin(theta[i]);
  const GridFunction f = theta.with_values(s);
  const EnvelopeResult env = convex_envelope(f);
  REQUIRE(check_noflat(f, env));
  REQUIRE_FALSE(env.affine_intervals.empty());

  const auto G = g_u_phi(theta, psi, [](double t) { return std::cos(t); }, env);
  for (std::size_t i = 0; i <= n; ++i) {
    if (env.contact_mask[i]) CHECK(G.values[i] == psi[i] * std::cos(theta[i]));
  }
  const auto Gp = g_theta_psi_pm(theta, psi, env, Sign::Plus);
  const auto Gm = g_theta_psi_pm(theta, psi, env, Sign::Minus);
  CHECK(max_abs_diff(Gp.values.values(), G.values.values()) < 1e-14);
  CHECK(max_abs_diff(Gm.values.values(), G.values.values()) < 1e-14);
}

TEST_CASE("zero rotation: sine composite equals the plain one-sided field") {
  const std::size_t n = 400;
  const auto theta = GridFunction::sample(0.0, 1.0, n, [](double) { return 0.0; });
  const auto psi =
      GridFunction::sample(0.0, 1.0, n, [](double x) { return bump((x - 0.4) / 0.35); });
  const EnvelopeResult env = convex_envelope(theta);
  for (Sign sg : {Sign::Plus, Sign::Minus}) {
    const auto G = g_theta_psi_pm(theta, psi, env, sg);
    const auto J = j_phi_pm(theta, psi, env, sg);
    CHECK(max_abs_diff(G.values.values(), J.values.values()) == 0.0);
  }
}

TEST_CASE("horizontal envelope keeps an oscillating field") {
  // sin(theta) >= 0 touches zero at x = 0, 1/2, 1: the envelope is the zero
  // line (slope 0) with an interior contact point.
  const std::size_t n = 400;
  const auto theta = GridFunction::sample(0.0, 1.0, n, [](double x) {
    const double s = std::sin(2.0 * std::numbers::pi * x);
    return 0.2 * s * s;
  });
  std::vector<double> s(n + 1);
  for (std::size_t i = 0; i <= n; ++i) s[i] = std::sin(theta[i]);
  const GridFunction f = theta.with_values(s);
  const EnvelopeResult env = convex_envelope(f);
  for (double v : env.slopes) CHECK(std::abs(v) < 1e-12);
  const auto psi = GridFunction::sample(0.0, 1.0, n, [](double x) {
    return std::sin(3.0 * std::numbers::pi * x) * std::exp(x);
  });
  const auto Gp = g_theta_psi_pm(theta, psi, env, Sign::Plus);
  CHECK(max_abs(Gp.values.values()) > 0.1);
}

TEST_CASE("variation operators reject test functions that do not vanish at the ends") {
  const auto f = double_well(100);
  const auto phi = GridFunction::sample(-2.0, 2.0, 100, [](double) { return 1.0; });
  const EnvelopeResult env = convex_envelope(f);
  CHECK_THROWS_AS(j_phi(f, phi, env), InvalidInput);
  CHECK_THROWS_AS(j_phi_pm(f, phi, env, Sign::Plus), InvalidInput);
}
