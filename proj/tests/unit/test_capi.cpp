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
#include <cstring>
#include <filesystem>
#include <string>
#include <vector>

#include <doctest.h>
#include <json.hpp>

#include "bridgesim/bridgesim.h"

namespace {

constexpr const char* kShortRun =
    R"({"numerics": {"N": 128, "dt": 0.01, "T": 1.0, "store_stride": 0.1},
        "experiment": {"mode": 10, "amplitude": 1.0}})";

struct Config {
  bs_config* p = nullptr;
  ~Config() { bs_config_free(p); }
};

std::string take(char* s) {
  std::string out = s ? s : "";
  bs_free_string(s);
  return out;
}

}  // namespace

TEST_CASE("status names and version") {
  CHECK(std::string(bs_status_name(BS_OK)) == "ok");
  CHECK(std::string(bs_status_name(BS_ERR_CONFIG)) == "configuration error");
  CHECK(std::strlen(bs_version()) > 0);
  CHECK(bs_default_workers() >= 1);
}

TEST_CASE("configuration errors are codes with messages") {
  bs_config* c = nullptr;
  CHECK(bs_config_from_json("{\"bridge\": {\"nope\": 1}}", &c) == BS_ERR_CONFIG);
  CHECK(c == nullptr);
  CHECK(std::string(bs_last_error()).find("nope") != std::string::npos);
  CHECK(bs_config_from_json("{", &c) == BS_ERR_CONFIG);
  CHECK(bs_config_from_json(nullptr, &c) == BS_ERR_INVALID_ARGUMENT);
  CHECK(bs_config_default(nullptr) == BS_ERR_INVALID_ARGUMENT);
  CHECK(bs_config_load("/nonexistent/cfg.json", nullptr, 0, &c) == BS_ERR_CONFIG);
}

TEST_CASE("overrides are atomic") {
  Config c;
  REQUIRE(bs_config_default(&c.p) == BS_OK);
  CHECK(bs_config_set(c.p, "numerics.dt=0.002") == BS_OK);
  CHECK(bs_config_set(c.p, "numerics.dt=-1") == BS_ERR_CONFIG);
  CHECK(bs_config_set(c.p, "bridge.unknown=1") == BS_ERR_CONFIG);
  const nlohmann::json j = nlohmann::json::parse(take([&] {
    char* s = nullptr;
    bs_config_to_json(c.p, &s);
    return s;
  }()));
  CHECK(j.at("numerics").at("dt").get<double>() == 0.002);
  CHECK_FALSE(j.at("bridge").contains("unknown"));
}

TEST_CASE("model accelerations") {
  Config c;
  REQUIRE(bs_config_from_json(R"({"numerics": {"N": 256}, "bridge": {"H": 0, "A": 0}})", &c.p) ==
          BS_OK);
  bs_model* m = nullptr;
  REQUIRE(bs_model_create(c.p, BS_CONVEXIFIED, &m) == BS_OK);
  size_t nw = 0, nt = 0;
  REQUIRE(bs_model_sizes(m, &nw, &nt) == BS_OK);
  CHECK(nw == 10);
  CHECK(nt == 4);
  std::vector<double> w(nw, 0.0), th(nt, 0.0), wa(nw), ta(nt), wv(nw, 0.0), tv(nt, 0.0);
  REQUIRE(bs_model_accelerations(m, w.data(), th.data(), wa.data(), ta.data()) == BS_OK);
  // Gravity alone with the cables off.
  const double L = 853.44, M = 7198.0, g = 9.81;
  CHECK(M * wa[0] == doctest::Approx(M * g * std::sqrt(2.0 * L) * 2.0 / M_PI));
  CHECK(wa[1] == 0.0);
  for (double v : ta) CHECK(v == 0.0);
  wv[0] = 2.0;
  double e = -1.0;
  REQUIRE(bs_model_energy(m, w.data(), th.data(), wv.data(), tv.data(), &e) == BS_OK);
  CHECK(e == doctest::Approx(0.5 * M * 4.0));
  CHECK(bs_model_accelerations(m, nullptr, th.data(), wa.data(), ta.data()) ==
        BS_ERR_INVALID_ARGUMENT);
  w[0] = NAN;
  CHECK(bs_model_accelerations(m, w.data(), th.data(), wa.data(), ta.data()) != BS_OK);
  bs_model_free(m);
  bs_model_free(nullptr);
}

TEST_CASE("short simulation through the C interface") {
  Config c;
  REQUIRE(bs_config_from_json(kShortRun, &c.p) == BS_OK);
  bs_run* run = nullptr;
  REQUIRE(bs_simulate(c.p, &run) == BS_OK);
  bs_run_summary s{};
  REQUIRE(bs_run_get_summary(run, &s) == BS_OK);
  CHECK(s.n_w == 10);
  CHECK(s.n_theta == 4);
  CHECK(s.steps == 100);
  CHECK(s.samples == 11);
  CHECK(s.t_end == doctest::Approx(1.0));
  CHECK(s.energy_drift < 4e-3);
  CHECK(s.unstable == 0);
  CHECK(bs_run_sample_count(run) == 11);

  std::vector<double> wb(10), tb(4), mx(10);
  double t = -1.0, e = 0.0;
  REQUIRE(bs_run_sample(run, 0, &t, wb.data(), tb.data(), &e, nullptr, nullptr) == BS_OK);
  CHECK(t == 0.0);
  CHECK(wb[9] == doctest::Approx(1.0));
  CHECK(e == s.energy0);
  CHECK(bs_run_sample(run, 11, &t, nullptr, nullptr, nullptr, nullptr, nullptr) ==
        BS_ERR_INVALID_ARGUMENT);
  CHECK(bs_run_max_abs_w_bar(run, mx.data(), 10) == BS_OK);
  CHECK(mx[9] >= 1.0);
  std::vector<double> few(3, -1.0);
  CHECK(bs_run_max_abs_w_bar(run, few.data(), 3) == BS_OK);
  CHECK(few[2] == mx[2]);
  CHECK(bs_run_max_abs_w_bar(run, nullptr, 3) == BS_ERR_INVALID_ARGUMENT);

  const nlohmann::json j = nlohmann::json::parse(take([&] {
    char* out = nullptr;
    bs_run_summary_json(run, &out);
    return out;
  }()));
  CHECK(j.at("unstable").get<bool>() == false);
  CHECK(j.at("steps").get<std::size_t>() == 100);

  const auto dir = std::filesystem::temp_directory_path() / "bridgesim_capi_test";
  std::filesystem::create_directories(dir);
  CHECK(bs_run_write_csv(run, (dir / "run.csv").string().c_str()) == BS_OK);
  CHECK(std::filesystem::exists(dir / "run.csv"));
  CHECK(bs_run_write_csv(run, "/nonexistent/dir/run.csv") == BS_ERR_IO);
  CHECK(bs_run_write_summary_json(run, nullptr) == BS_ERR_INVALID_ARGUMENT);
  bs_run_free(run);
}

TEST_CASE("sweep through the C interface") {
  Config c;
  REQUIRE(bs_config_from_json(
              R"({"numerics": {"N": 128, "dt": 0.01, "T": 10.0},
                  "sweep": {"start": 2.0, "step": 1.0, "resolution": 0.25}})",
              &c.p) == BS_OK);
  const size_t bad[] = {10, 12};
  const bs_variant variants[] = {BS_CONVEXIFIED, BS_RIGID};
  bs_table* table = nullptr;
  CHECK(bs_sweep_run(c.p, bad, 2, variants, 1, 1, nullptr, nullptr, &table) ==
        BS_ERR_INVALID_ARGUMENT);
  CHECK(table == nullptr);

  const size_t modes[] = {10};
  int calls = 0;
  REQUIRE(bs_sweep_run(c.p, modes, 1, variants, 2, 1,
                       [](const bs_threshold*, void* user) { ++*static_cast<int*>(user); },
                       &calls, &table) == BS_OK);
  CHECK(calls == 2);
  REQUIRE(bs_table_count(table) == 2);
  bs_threshold a{}, b{};
  REQUIRE(bs_table_get(table, 0, &a) == BS_OK);
  REQUIRE(bs_table_get(table, 1, &b) == BS_OK);
  CHECK(a.mode == 10);
  CHECK(a.variant == BS_CONVEXIFIED);
  CHECK(b.variant == BS_RIGID);
  CHECK(std::string(a.error).empty());
  CHECK(a.found == 1);
  CHECK(a.hi - a.lo <= 0.25 + 1e-12);
  CHECK(bs_table_get(table, 2, &a) == BS_ERR_INVALID_ARGUMENT);
  const auto j = nlohmann::json::parse(take([&] {
    char* s = nullptr;
    bs_table_to_json(table, &s);
    return s;
  }()));
  CHECK(j.size() == 2);
  CHECK(bs_table_write_csv(table, "/nonexistent/dir/t.csv") == BS_ERR_IO);
  bs_table_free(table);
}

TEST_CASE("validation and flat-envelope example") {
  Config c;
  REQUIRE(bs_config_from_json(R"({"validation": {"cases": 100}})", &c.p) == BS_OK);
  int passed = 0, seen = 0;
  char* json = nullptr;
  REQUIRE(bs_validate(c.p, [](const bs_check*, void* u) { ++*static_cast<int*>(u); }, &seen,
                      &passed, &json) == BS_OK);
  CHECK(passed == 1);
  CHECK(seen > 0);
  CHECK(nlohmann::json::parse(take(json)).size() == static_cast<std::size_t>(seen));

  bs_flat_envelope_report r{};
  REQUIRE(bs_flat_envelope_example(2000, &r) == BS_OK);
  CHECK(std::abs(r.zeta_root - 0.25) <= 0.01);
  CHECK(std::abs(r.right_limit) < 1e-3 * std::abs(r.left_limit));
  CHECK(bs_flat_envelope_example(2, &r) == BS_ERR_INVALID_ARGUMENT);
}
