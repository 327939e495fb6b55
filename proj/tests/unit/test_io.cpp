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

#include <filesystem>
#include <fstream>
#include <sstream>

#include <doctest.h>

#include "io/config.hpp"
#include "io/output.hpp"

using namespace bridgesim;
using nlohmann::json;

namespace {

RunRecord short_run() {
  RunConfig c = parse_config_text(R"({"numerics": {"N": 128, "dt": 0.01, "T": 0.5,
                                                    "store_stride": 0.1},
                                       "experiment": {"mode": 10, "amplitude": 1.0}})");
  return run_experiment(c.experiment_spec(), c.bridge, c.numerics, false, true);
}

std::string csv_of(const RunRecord& r) {
  std::ostringstream out;
  write_run_csv(out, r);
  return out.str();
}

}  // namespace

TEST_CASE("empty configuration gives the defaults") {
  const RunConfig c = parse_config_text("{}");
  CHECK(c.bridge.L == 853.44);
  CHECK(c.bridge.H == 4.5413e7);
  CHECK(c.numerics.cells == 2048);
  CHECK(c.numerics.dt == 1e-3);
  CHECK(c.numerics.n_w == 10);
  CHECK(c.numerics.n_theta == 4);
  CHECK(c.T == 120.0);
  CHECK(c.experiment_spec().T == 120.0);
  CHECK(c.sweep.modes.size() == 10);
  CHECK(c.sweep.search.resolution == 0.01);
  CHECK(c.output.csv);
  CHECK(c.output.json);
}

TEST_CASE("strict parsing") {
  CHECK_THROWS_AS(parse_config_text(R"({"bridge": {"Lspan": 1}})"), ConfigError);
  CHECK_THROWS_AS(parse_config_text(R"({"extra": {}})"), ConfigError);
  CHECK_THROWS_AS(parse_config_text(R"({"bridge": {"L": "long"}})"), ConfigError);
  CHECK_THROWS_AS(parse_config_text(R"({"numerics": {"N": 2.5}})"), ConfigError);
  CHECK_THROWS_AS(parse_config_text(R"({"numerics": {"N": -4}})"), ConfigError);
  CHECK_THROWS_AS(parse_config_text(R"({"numerics": {"integrator": "euler"}})"), ConfigError);
  CHECK_THROWS_AS(parse_config_text(R"({"experiment": {"variant": "soft"}})"), ConfigError);
  CHECK_THROWS_AS(parse_config_text(R"({"experiment": {"mode": 11}})"), ConfigError);
  CHECK_THROWS_AS(parse_config_text(R"({"bridge": {"M": 0}})"), ConfigError);
  CHECK_THROWS_AS(parse_config_text(R"({"numerics": {"dt": 0}})"), ConfigError);
  CHECK_THROWS_AS(parse_config_text(R"({"sweep": {"modes": [0]}})"), ConfigError);
  CHECK_THROWS_AS(parse_config_text(R"({"sweep": {"variants": []}})"), ConfigError);
  CHECK_THROWS_AS(parse_config_text(R"({"output": {"formats": ["xml"]}})"), ConfigError);
  CHECK_THROWS_AS(parse_config_text(R"({"bridge": 3})"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("{not json"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("[]"), ConfigError);
}

TEST_CASE("dotted overrides") {
  json doc = json::object();
  apply_override(doc, "numerics.dt=5e-4");
  apply_override(doc, "experiment.variant=rigid");
  apply_override(doc, "sweep.modes=[9,10]");
  apply_override(doc, "output.dir=\"runs/a\"");
  const RunConfig c = parse_config(doc);
  CHECK(c.numerics.dt == 5e-4);
  CHECK(c.experiment.variant == ModelVariant::Rigid);
  CHECK(c.sweep.modes == std::vector<std::size_t>{9, 10});
  CHECK(c.output.dir == "runs/a");
  CHECK_THROWS_AS(apply_override(doc, "novalue"), ConfigError);
  CHECK_THROWS_AS(apply_override(doc, "=3"), ConfigError);
  CHECK_THROWS_AS(apply_override(doc, "a..b=3"), ConfigError);
  CHECK_THROWS_AS(apply_override(doc, "numerics.dt.x=3"), ConfigError);
}

TEST_CASE("configuration round-trips through JSON") {
  const RunConfig a = parse_config_text(
      R"({"bridge": {"H": 4e7, "g": 0}, "numerics": {"N": 300, "integrator": "verlet"},
          "experiment": {"mode": 7, "amplitude": 1.5, "variant": "rigid"},
          "sweep": {"variants": ["convexified", "rigid"], "verify_bracket": false},
          "validation": {"seed": 99, "cases": 101}, "output": {"formats": ["csv"]}})");
  const RunConfig b = parse_config(to_json(a));
  CHECK(to_json(a) == to_json(b));
  CHECK(b.bridge.H == 4e7);
  CHECK(b.numerics.integrator == Integrator::Verlet);
  CHECK(b.experiment.mode == 7);
  CHECK(b.sweep.variants.size() == 2);
  CHECK_FALSE(b.sweep.search.verify_bracket);
  CHECK(b.validation.seed == 99);
  CHECK(b.output.csv);
  CHECK_FALSE(b.output.json);
}

TEST_CASE("config files and overrides") {
  const auto dir = std::filesystem::temp_directory_path() / "bridgesim_io_test";
  std::filesystem::create_directories(dir);
  const auto path = (dir / "cfg.json").string();
  std::ofstream(path) << R"({"experiment": {"mode": 4}})";
  const RunConfig c = load_config(path, {"experiment.amplitude=2.5"});
  CHECK(c.experiment.mode == 4);
  CHECK(c.experiment.amplitude == 2.5);
  CHECK_THROWS_AS(load_config((dir / "missing.json").string()), ConfigError);
  std::ofstream(path) << "{";
  CHECK_THROWS_AS(load_config(path), ConfigError);
}

TEST_CASE("run CSV layout and precision") {
  const RunRecord r = short_run();
  const std::string csv = csv_of(r);
  std::istringstream in(csv);
  std::string header;
  std::getline(in, header);
  CHECK(header ==
        "t,w_bar_1,w_bar_2,w_bar_3,w_bar_4,w_bar_5,w_bar_6,w_bar_7,w_bar_8,w_bar_9,"
        "w_bar_10,theta_bar_1,theta_bar_2,theta_bar_3,theta_bar_4,energy,slack_alpha,"
        "slack_beta");
  std::string row;
  std::size_t rows = 0;
  while (std::getline(in, row)) {
    ++rows;
    CHECK(std::count(row.begin(), row.end(), ',') == 17);
  }
  CHECK(rows == r.times.size());
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("identical configurations give bit-identical outputs") {
  const RunRecord a = short_run();
  const RunRecord b = short_run();
  CHECK(csv_of(a) == csv_of(b));
  CHECK(summary_to_json(a.summary).dump() == summary_to_json(b.summary).dump());
}

TEST_CASE("summary JSON round-trips exactly") {
  const RunRecord r = short_run();
  const json j = json::parse(summary_to_json(r.summary).dump());
  const RunSummary s = summary_from_json(j);
  CHECK(s.max_abs_w_bar == r.summary.max_abs_w_bar);
  CHECK(s.max_abs_theta_bar == r.summary.max_abs_theta_bar);
  CHECK(s.energy0 == r.summary.energy0);
  CHECK(s.energy_min == r.summary.energy_min);
  CHECK(s.energy_max == r.summary.energy_max);
  CHECK(s.mean_slack_alpha == r.summary.mean_slack_alpha);
  CHECK(s.mean_slack_beta == r.summary.mean_slack_beta);
  CHECK(s.t_end == r.summary.t_end);
  CHECK(s.steps == r.summary.steps);
  CHECK(s.samples == r.summary.samples);
  CHECK(s.stopped_early == r.summary.stopped_early);
  CHECK(j.at("energy_drift").get<double>() == r.summary.energy_drift());
}

TEST_CASE("threshold tables") {
  ThresholdResult a;
  a.mode = 9;
  a.found = true;
  a.threshold = a.hi = 2.57;
  a.lo = 2.56;
  a.energy0 = 1.883e8;
  a.mean_slackening = 0.4367;
  a.energy_drift = 5.6e-6;
  a.dominant_torsional_mode = 2;
  a.max_abs_theta_bar = {0.01, 0.03, 0.0, 0.0};
  a.bracket_verified = true;
  a.probes = 20;
  ThresholdResult b = a;
  b.variant = ModelVariant::Rigid;
  b.threshold = b.hi = 3.74;
  b.lo = 3.73;
  b.error = "note, with \"quotes\"";

  const ThresholdResult back = threshold_from_json(json::parse(threshold_to_json(b).dump()));
  CHECK(back.variant == ModelVariant::Rigid);
  CHECK(back.threshold == b.threshold);
  CHECK(back.error == b.error);
  CHECK(back.max_abs_theta_bar == b.max_abs_theta_bar);

  std::ostringstream t;
  write_thresholds_csv(t, {a, b});
  std::istringstream tin(t.str());
  std::string line;
  std::getline(tin, line);
  CHECK(line.rfind("mode,variant,found,threshold,lo,hi,bracket_width,", 0) == 0);
  std::getline(tin, line);
  CHECK(line.rfind("9,convexified,1,2.5699999999999998,", 0) == 0);
  std::getline(tin, line);
  CHECK(line.find("\"note, with \"\"quotes\"\"\"") != std::string::npos);

  std::ostringstream c;
  write_comparison_csv(c, {a, b});
  std::istringstream cin(c.str());
  std::getline(cin, line);
  CHECK(line ==
        "mode,W0_convexified,energy0_convexified,slackening_pct_convexified,W0_rigid,"
        "energy0_rigid,slackening_pct_rigid");
  std::getline(cin, line);
  CHECK(line.rfind("9,2.5699999999999998,188300000,43.669999999999995,3.7400000000000002,", 0) ==
        0);
}

TEST_CASE("file output") {
  const auto dir = std::filesystem::temp_directory_path() / "bridgesim_io_test" / "nested" / "x";
  std::filesystem::remove_all(dir);
  ensure_directory(dir.string());
  const auto path = (dir / "f.txt").string();
  write_text_file(path, "hello\n");
  std::ifstream in(path);
  std::string s;
  std::getline(in, s);
  CHECK(s == "hello");
  CHECK_FALSE(std::filesystem::exists(path + ".tmp"));
  CHECK_THROWS_AS(write_text_file((dir / "no" / "such" / "f.txt").string(), "x"), IoError);
}
