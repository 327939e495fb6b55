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

// CSV and JSON serialization of runs and threshold tables. Numbers are
// written with 17 significant digits so that files round-trip exactly.

#ifndef BRIDGESIM_IO_OUTPUT_HPP_
#define BRIDGESIM_IO_OUTPUT_HPP_

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "core/dynamics.hpp"
#include "core/experiments.hpp"
#include "core/validation.hpp"

namespace bridgesim {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Columns: t, w_bar_1..w_bar_n, theta_bar_1..theta_bar_m, energy,
/// slack_alpha, slack_beta.
void write_run_csv(std::ostream& out, const RunRecord& rec);

nlohmann::json summary_to_json(const RunSummary& s);
RunSummary summary_from_json(const nlohmann::json& j);

nlohmann::json threshold_to_json(const ThresholdResult& r);
ThresholdResult threshold_from_json(const nlohmann::json& j);

/// One row per (mode, variant).
void write_thresholds_csv(std::ostream& out, const std::vector<ThresholdResult>& rs);

/// One row per mode, one column group (W0, E0, slackening %) per variant
/// present in `rs`.
void write_comparison_csv(std::ostream& out, const std::vector<ThresholdResult>& rs);

nlohmann::json checks_to_json(const std::vector<CheckResult>& checks);

/// Creates `dir` (and parents) if needed.
void ensure_directory(const std::string& dir);
/// Writes via a temporary file and rename.
void write_text_file(const std::string& path, const std::string& content);

std::string format_double(double v);

}  // namespace bridgesim

#endif  // BRIDGESIM_IO_OUTPUT_HPP_
