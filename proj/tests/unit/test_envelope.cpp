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
#include <random>

#include <doctest.h>

#include "core/envelope.hpp"
#include "core/validation.hpp"

using namespace bridgesim;

namespace {

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("grid function rejects bad grids") {
  CHECK_THROWS_AS(GridFunction(0.0, 1.0, {1.0, 2.0}), InvalidInput);
  CHECK_THROWS_AS(GridFunction(1.0, 0.0, {1.0, 2.0, 3.0}), InvalidInput);
  CHECK_THROWS_AS(GridFunction(0.0, 1.0, {1.0, NAN, 3.0}), InvalidInput);
  const auto f = GridFunction::sample(0.0, 2.0, 4, [](double x) { return x; });
  CHECK(f.cells() == 4);
  CHECK(f.dx() == doctest::Approx(0.5));
  CHECK(trapezoid(f) == doctest::Approx(2.0));
}

TEST_CASE("convex input is its own envelope") {
  const auto f = GridFunction::sample(-1.0, 1.0, 64, [](double x) { return x * x; });
  const EnvelopeResult r = convex_envelope(f);
  CHECK(max_abs_diff(r.env.values(), f.values()) < 1e-15);
  CHECK(r.vertices.size() == f.size());
  CHECK(r.affine_intervals.empty());
  for (bool c : r.contact_mask) CHECK(c);
  for (std::size_t c = 1; c < r.slopes.size(); ++c) CHECK(r.slopes[c] >= r.slopes[c - 1]);
}

TEST_CASE("concave input with equal ends collapses to the chord") {
  const auto f = GridFunction::sample(0.0, 1.0, 100, [](double x) { return -x * (x - 1.0); });
  const EnvelopeResult r = convex_envelope(f);
  for (double v : r.env.values()) CHECK(std::abs(v) < 1e-15);
  REQUIRE(r.affine_intervals.size() == 1);
  CHECK(r.affine_intervals[0] == IndexRange{0, 100});
  CHECK(r.contact_mask.front());
  CHECK(r.contact_mask.back());
  CHECK(r.slack_length() == doctest::Approx(1.0));
}

TEST_CASE("double well matches the brute-force minorant oracle") {
  const auto f = GridFunction::sample(-2.0, 2.0, 256, [](double x) {
    return (x * x - 1.0) * (x * x - 1.0);
  });
  const EnvelopeResult r = convex_envelope(f);
  const std::vector<double> oracle = brute_force_envelope(f.values());
  CHECK(max_abs_diff(r.env.values(), oracle) < 1e-12);
  // Nodes 64 and 192 are x = -1 and x = 1.
  for (std::size_t i = 0; i <= 256; ++i) {
    const double x = f.x(i);
    if (std::abs(x) <= 1.0) {
      CHECK(std::abs(r.env[i]) < 1e-12);
    } else {
      CHECK(r.env[i] == doctest::Approx(f[i]).epsilon(1e-12));
    }
  }
  REQUIRE(r.affine_intervals.size() == 1);
  CHECK(r.affine_intervals[0] == IndexRange{64, 192});
  CHECK(check_noflat(f, r));
}

TEST_CASE("random inputs agree with the oracle") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> v(1 + 16 + trial * 5);
    for (double& x : v) x = u(rng);
    const GridFunction f(0.0, 1.0, v);
    const EnvelopeResult r = convex_envelope(f);
    CHECK(max_abs_diff(r.env.values(), brute_force_envelope(v)) < 1e-12);
    for (std::size_t i = 0; i < v.size(); ++i) CHECK(r.env[i] <= v[i] + 1e-12);
    CHECK(r.contact_mask.front());
    CHECK(r.contact_mask.back());
  }
}

TEST_CASE("operator T on constants and a full sine period") {
  const auto c = GridFunction::sample(0.0, 3.0, 90, [](double) { return 1.75; });
  const GridFunction tc = operator_T(c);
  for (double v : tc.values()) CHECK(v == doctest::Approx(1.75).epsilon(1e-13));

  const auto s = GridFunction::sample(0.0, 2.0 * std::numbers::pi, 400,
                                      [](double x) { return std::sin(x); });
  const GridFunction ts = operator_T(s);
  for (double v : ts.values()) CHECK(std::abs(v) < 1e-12);
}

TEST_CASE("operator T preserves the integral and is monotone") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<double> v(129), w(129);
    for (std::size_t i = 0; i < v.size(); ++i) {
      v[i] = n(rng);
      w[i] = v[i] + std::abs(n(rng));
    }
    const GridFunction f(0.0, 2.0, v), g(0.0, 2.0, w);
    const auto tf = operator_T_cells(f);
    const auto tg = operator_T_cells(g);
    CHECK(cell_integral(tf, f.dx()) == doctest::Approx(trapezoid(f)).epsilon(1e-12));
    for (std::size_t c = 1; c < tf.size(); ++c) CHECK(tf[c] >= tf[c - 1] - 1e-12);
    // f <= g pointwise gives Tf <= Tg in the primitive sense: F** <= G**.
    double F = 0.0, G = 0.0;
    for (std::size_t c = 0; c < tf.size(); ++c) {
      F += tf[c] * f.dx();
      G += tg[c] * g.dx();
      CHECK(F <= G + 1e-10);
    }
  }
}

TEST_CASE("noflat classification") {
  const auto convex = GridFunction::sample(-1.0, 1.0, 50, [](double x) { return std::exp(x); });
  CHECK(check_noflat(convex, convex_envelope(convex)));

  // |x|: affine pieces that coincide with their envelope.
  const auto kinked = GridFunction::sample(-1.0, 1.0, 50, [](double x) { return std::abs(x); });
  CHECK_FALSE(check_noflat(kinked, convex_envelope(kinked)));

  // Zero on [-1, 1] between cubic walls: the envelope is flat against f.
  const auto flat = GridFunction::sample(-2.0, 2.0, 200, [](double x) {
    return std::abs(x) <= 1.0 ? 0.0 : std::pow(std::abs(x) - 1.0, 3);
  });
  CHECK_FALSE(check_noflat(flat, convex_envelope(flat)));
}

TEST_CASE("cells_to_nodes averages neighbours and copies ends") {
  const std::vector<double> cells = {1.0, 3.0, 5.0};
  const auto nodes = cells_to_nodes(cells);
  REQUIRE(nodes.size() == 4);
  CHECK(nodes[0] == 1.0);
  CHECK(nodes[1] == 2.0);
  CHECK(nodes[2] == 4.0);
  CHECK(nodes[3] == 5.0);
}
