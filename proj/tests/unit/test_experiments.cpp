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

#include <doctest.h>

#include "core/experiments.hpp"

using namespace bridgesim;

namespace {

Numerics coarse() {
  Numerics n;
  n.cells = 512;
  n.dt = 5e-3;
  return n;
}

}  // namespace

TEST_CASE("initial condition protocol") {
  const BridgeParams p;
  ExperimentSpec spec;
  spec.mode = 9;
  spec.amplitude = 2.31;
  const ModalState s = build_ic(spec, 10, 4, p.L);
  const double to_bar = amplitude_scale(p.L);
  for (std::size_t k = 0; k < 10; ++k) {
    CHECK(s.w[k] * to_bar == doctest::Approx(k == 8 ? 2.31 : 2.31e-3).epsilon(1e-14));
    CHECK(s.w_vel[k] * to_bar == doctest::Approx(2.31e-3).epsilon(1e-14));
  }
  for (std::size_t k = 0; k < 4; ++k) {
    CHECK(s.theta[k] * to_bar == doctest::Approx(2.31e-3).epsilon(1e-14));
    CHECK(s.theta_vel[k] * to_bar == doctest::Approx(2.31e-3).epsilon(1e-14));
  }

  spec.perturbation_ratio = 0.0;
  const ModalState pure = build_ic(spec, 10, 4, p.L);
  for (std::size_t k = 0; k < 10; ++k) {
    if (k != 8) CHECK(pure.w[k] == 0.0);
    CHECK(pure.w_vel[k] == 0.0);
  }
  for (double v : pure.theta) CHECK(v == 0.0);
  CHECK(pure.w[8] == doctest::Approx(2.31 * std::sqrt(p.L / 2.0)).epsilon(1e-14));

  spec.mode = 11;
  CHECK_THROWS_AS(build_ic(spec, 10, 4, p.L), InvalidInput);
  spec.mode = 1;
  spec.perturbation_ratio = 0.05;
  CHECK_THROWS_AS(build_ic(spec, 10, 4, p.L), InvalidInput);
}

TEST_CASE("instability detector") {
  ExperimentSpec spec;
  spec.amplitude = 2.0;
  RunSummary s;
  s.max_abs_theta_bar = {0.0, 0.0, 0.0, 0.0};
  CHECK_FALSE(detect_instability(s, spec));
  s.max_abs_theta_bar = {0.002, 0.0199, 0.0, 0.0};
  CHECK_FALSE(detect_instability(s, spec));
  s.max_abs_theta_bar = {0.002, 0.02, 0.0, 0.0};
  CHECK(detect_instability(s, spec));
}

TEST_CASE("stable high-mode run with partial slackening") {
  const BridgeParams p;
  ExperimentSpec spec;
  spec.mode = 10;
  spec.amplitude = 0.75;
  const RunRecord r = run_experiment(spec, p, coarse(), false);
  CHECK_FALSE(detect_instability(r, spec));
  const double m = r.summary.mean_slackening();
  CHECK(m >= 0.10);
  CHECK(m <= 0.17);
  CHECK(r.summary.energy_drift() < 4e-3);
}

TEST_CASE("small mode-9 run never slackens") {
  const BridgeParams p;
  ExperimentSpec spec;
  spec.mode = 9;
  spec.amplitude = 0.60;
  const RunRecord r = run_experiment(spec, p, coarse(), false);
  CHECK(r.summary.mean_slackening() == 0.0);
  CHECK_FALSE(detect_instability(r, spec));
}

TEST_CASE("mode-9 threshold grows the second torsional mode") {
  const BridgeParams p;
  SearchOptions so;
  so.start = 2.0;
  const ThresholdResult r = find_threshold(9, ExperimentSpec{}, p, coarse(), so);
  REQUIRE(r.found);
  CHECK(r.threshold == doctest::Approx(2.31).epsilon(0.15));
  CHECK(r.dominant_torsional_mode == 2);
  CHECK(r.mean_slackening > 0.0);

  ExperimentSpec above;
  above.mode = 9;
  above.amplitude = r.hi;
  CHECK(detect_instability(run_experiment(above, p, coarse(), false), above));
}

TEST_CASE("threshold search contract on a short horizon") {
  const BridgeParams p;
  ExperimentSpec base;
  base.T = 30.0;
  SearchOptions so;
  so.start = 2.0;
  so.step = 0.5;
  const ThresholdResult r = find_threshold(10, base, p, coarse(), so);
  REQUIRE(r.found);
  CHECK(r.error.empty());
  CHECK(r.bracket_width() <= so.resolution + 1e-12);
  CHECK(r.threshold == r.hi);
  CHECK(r.lo < r.hi);
  CHECK(r.bracket_verified);
  CHECK(r.energy0 > 0.0);
  CHECK(r.energy_drift < 4e-3);
  CHECK(r.max_abs_theta_bar.size() == 4);
  CHECK(r.probes > 2);

  // Single-mode sweeps return the same record.
  const auto swept = sweep({10}, base, p, coarse(), so, 2);
  REQUIRE(swept.size() == 1);
  CHECK(swept[0].threshold == r.threshold);
  CHECK(swept[0].energy0 == r.energy0);
  CHECK(sweep({}, base, p, coarse(), so, 2).empty());
}

TEST_CASE("search reports an unstable starting amplitude") {
  const BridgeParams p;
  ExperimentSpec base;
  base.T = 30.0;
  SearchOptions so;
  so.start = 6.0;
  const ThresholdResult r = find_threshold(10, base, p, coarse(), so);
  CHECK(r.unstable_at_start);
}

TEST_CASE("search and numerics validation") {
  SearchOptions so;
  so.resolution = 0.0;
  CHECK_THROWS_AS(so.validate(), InvalidInput);
  Numerics n;
  n.dt = -1.0;
  CHECK_THROWS_AS(n.validate(), InvalidInput);
  const auto results = sweep({12}, ExperimentSpec{}, BridgeParams{}, coarse(), SearchOptions{}, 1);
  REQUIRE(results.size() == 1);
  CHECK_FALSE(results[0].error.empty());
}
