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

#include "io/output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>

namespace bridgesim {

using nlohmann::json;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_run_csv(std::ostream& out, const RunRecord& rec) {
  const std::size_t n_w = rec.summary.max_abs_w_bar.size();
  const std::size_t n_t = rec.summary.max_abs_theta_bar.size();
  out << "t";
  for (std::size_t k = 1; k <= n_w; ++k) out << ",w_bar_" << k;
  for (std::size_t k = 1; k <= n_t; ++k) out << ",theta_bar_" << k;
  out << ",energy,slack_alpha,slack_beta\n";
  for (std::size_t n = 0; n < rec.times.size(); ++n) {
    out << format_double(rec.times[n]);
    for (double v : rec.w_bar[n]) out << ',' << format_double(v);
    for (double v : rec.theta_bar[n]) out << ',' << format_double(v);
    out << ',' << format_double(rec.energy[n]) << ',' << format_double(rec.slack_alpha[n])
        << ',' << format_double(rec.slack_beta[n]) << '\n';
  }
}

json summary_to_json(const RunSummary& s) {
  return {{"max_abs_w_bar", s.max_abs_w_bar},
          {"max_abs_theta_bar", s.max_abs_theta_bar},
          {"energy0", s.energy0},
          {"energy_min", s.energy_min},
          {"energy_max", s.energy_max},
          {"energy_drift", s.energy_drift()},
          {"mean_slack_alpha", s.mean_slack_alpha},
          {"mean_slack_beta", s.mean_slack_beta},
          {"mean_slackening", s.mean_slackening()},
          {"dominant_torsional_mode", s.dominant_torsional_mode()},
          {"t_end", s.t_end},
          {"steps", s.steps},
          {"samples", s.samples},
          {"stopped_early", s.stopped_early}};
}

RunSummary summary_from_json(const json& j) {
  RunSummary s;
  s.max_abs_w_bar = j.at("max_abs_w_bar").get<std::vector<double>>();
  s.max_abs_theta_bar = j.at("max_abs_theta_bar").get<std::vector<double>>();
  s.energy0 = j.at("energy0").get<double>();
  s.energy_min = j.at("energy_min").get<double>();
  s.energy_max = j.at("energy_max").get<double>();
  s.mean_slack_alpha = j.at("mean_slack_alpha").get<double>();
  s.mean_slack_beta = j.at("mean_slack_beta").get<double>();
  s.t_end = j.at("t_end").get<double>();
  s.steps = j.at("steps").get<std::size_t>();
  s.samples = j.at("samples").get<std::size_t>();
  s.stopped_early = j.at("stopped_early").get<bool>();
  return s;
}

json threshold_to_json(const ThresholdResult& r) {
  return {{"mode", r.mode},
          {"variant", variant_name(r.variant)},
          {"found", r.found},
          {"threshold", r.threshold},
          {"lo", r.lo},
          {"hi", r.hi},
          {"bracket_width", r.bracket_width()},
          {"energy0", r.energy0},
          {"mean_slackening", r.mean_slackening},
          {"energy_drift", r.energy_drift},
          {"dominant_torsional_mode", r.dominant_torsional_mode},
          {"max_abs_theta_bar", r.max_abs_theta_bar},
          {"unstable_at_start", r.unstable_at_start},
          {"non_monotone", r.non_monotone},
          {"bracket_verified", r.bracket_verified},
          {"probes", r.probes},
          {"error", r.error}};
}

ThresholdResult threshold_from_json(const json& j) {
  ThresholdResult r;
  r.mode = j.at("mode").get<std::size_t>();
  r.variant = j.at("variant").get<std::string>() == "rigid" ? ModelVariant::Rigid
                                                            : ModelVariant::Convexified;
  r.found = j.at("found").get<bool>();
  r.threshold = j.at("threshold").get<double>();
  r.lo = j.at("lo").get<double>();
  r.hi = j.at("hi").get<double>();
  r.energy0 = j.at("energy0").get<double>();
  r.mean_slackening = j.at("mean_slackening").get<double>();
  r.energy_drift = j.at("energy_drift").get<double>();
  r.dominant_torsional_mode = j.at("dominant_torsional_mode").get<std::size_t>();
  r.max_abs_theta_bar = j.at("max_abs_theta_bar").get<std::vector<double>>();
  r.unstable_at_start = j.at("unstable_at_start").get<bool>();
  r.non_monotone = j.at("non_monotone").get<bool>();
  r.bracket_verified = j.at("bracket_verified").get<bool>();
  r.probes = j.at("probes").get<std::size_t>();
  r.error = j.at("error").get<std::string>();
  return r;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + '"';
}

}  // namespace

void write_thresholds_csv(std::ostream& out, const std::vector<ThresholdResult>& rs) {
  out << "mode,variant,found,threshold,lo,hi,bracket_width,energy0,"
         "slackening_pct,energy_drift,dominant_torsional_mode,bracket_verified,"
         "non_monotone,unstable_at_start,probes,error\n";
  for (const auto& r : rs) {
    out << r.mode << ',' << variant_name(r.variant) << ',' << (r.found ? 1 : 0) << ','
        << format_double(r.threshold) << ',' << format_double(r.lo) << ','
        << format_double(r.hi) << ',' << format_double(r.bracket_width()) << ','
        << format_double(r.energy0) << ',' << format_double(100.0 * r.mean_slackening)
        << ',' << format_double(r.energy_drift) << ',' << r.dominant_torsional_mode << ','
        << (r.bracket_verified ? 1 : 0) << ',' << (r.non_monotone ? 1 : 0) << ','
        << (r.unstable_at_start ? 1 : 0) << ',' << r.probes << ',' << csv_field(r.error)
        << '\n';
  }
}

void write_comparison_csv(std::ostream& out, const std::vector<ThresholdResult>& rs) {
  std::set<std::size_t> modes;
  std::vector<ModelVariant> variants;
  std::map<std::pair<std::size_t, int>, const ThresholdResult*> by_key;
  for (const auto& r : rs) {
    modes.insert(r.mode);
    if (std::find(variants.begin(), variants.end(), r.variant) == variants.end()) {
      variants.push_back(r.variant);
    }
    by_key[{r.mode, static_cast<int>(r.variant)}] = &r;
  }
  std::sort(variants.begin(), variants.end());
  out << "mode";
  for (auto v : variants) {
    const std::string n = variant_name(v);
    out << ",W0_" << n << ",energy0_" << n << ",slackening_pct_" << n;
  }
  out << '\n';
  for (std::size_t m : modes) {
    out << m;
    for (auto v : variants) {
      const auto it = by_key.find({m, static_cast<int>(v)});
      if (it == by_key.end() || !it->second->found) {
        out << ",,,";
        continue;
      }
      const ThresholdResult& r = *it->second;
      out << ',' << format_double(r.threshold) << ',' << format_double(r.energy0) << ','
          << format_double(100.0 * r.mean_slackening);
    }
    out << '\n';
  }
}

json checks_to_json(const std::vector<CheckResult>& checks) {
  json arr = json::array();
  for (const auto& c : checks) {
    arr.push_back({{"name", c.name},
                   {"passed", c.passed},
                   {"cases", c.cases},
                   {"worst", c.worst},
                   {"detail", c.detail}});
  }
  return arr;
}

void ensure_directory(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory '" + dir + "': " + ec.message());
}

void write_text_file(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + tmp + "' for writing");
    out << content;
    if (!out) throw IoError("write to '" + tmp + "' failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("cannot rename '" + tmp + "' to '" + path + "': " + ec.message());
}

}  // namespace bridgesim
