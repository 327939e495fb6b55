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

#include <set>

#include <doctest.h>

#include "core/validation.hpp"

using namespace bridgesim;

TEST_CASE("property suites pass on a fixed seed") {
  ValidationOptions o;
  o.cases = 100;
  std::vector<std::string> seen;
  const auto results = run_property_suites(o, [&](const CheckResult& r) { seen.push_back(r.name); });
  const auto names = property_suite_names();
  REQUIRE(results.size() == names.size());
  CHECK(seen == names);
  CHECK(std::set<std::string>(names.begin(), names.end()).size() == names.size());
  for (const CheckResult& r : results) {
    INFO(r.name << ": " << r.detail);
    CHECK(r.passed);
    CHECK(r.cases >= 1);
  }
}

TEST_CASE("suites are deterministic for a seed") {
  ValidationOptions o;
  o.cases = 100;
  o.seed = 7;
  const auto a = run_property_suites(o);
  const auto b = run_property_suites(o);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].worst == b[i].worst);
    CHECK(a[i].cases == b[i].cases);
  }
}

TEST_CASE("brute force envelope on a tiny sample") {
  const std::vector<double> v = {0.0, 2.0, 1.0, 3.0, 0.0};
  const auto e = brute_force_envelope(v);
  REQUIRE(e.size() == 5);
  CHECK(e[0] == 0.0);
  CHECK(e[4] == 0.0);
  for (std::size_t i = 0; i < 5; ++i) CHECK(e[i] <= v[i] + 1e-15);
}
