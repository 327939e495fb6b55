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

// Run configuration: a JSON document with the blocks bridge, numerics,
// experiment, sweep, tolerances, validation and output. Every key is
// optional and defaults to the Tacoma Narrows setup; unknown keys and
// wrongly typed values are rejected.

#ifndef BRIDGESIM_IO_CONFIG_HPP_
#define BRIDGESIM_IO_CONFIG_HPP_

#include <string>
#include <vector>

#include <json.hpp>

#include "core/bridge_model.hpp"
#include "core/experiments.hpp"
#include "core/grid.hpp"
#include "core/validation.hpp"

namespace bridgesim {

class ConfigError : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

struct OutputConfig {
  std::string dir = "out";
  bool csv = true;
  bool json = true;
};

struct SweepConfig {
  std::vector<std::size_t> modes = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  std::vector<ModelVariant> variants = {ModelVariant::Convexified};
  SearchOptions search;
};

struct RunConfig {
  BridgeParams bridge;
  Numerics numerics;
  double T = 120.0;
  ExperimentSpec experiment;  // its T is kept equal to `T`
  SweepConfig sweep;
  ValidationOptions validation;
  OutputConfig output;

  /// Cross-block checks; throws ConfigError.
  void validate() const;
  ExperimentSpec experiment_spec() const;
};

RunConfig parse_config(const nlohmann::json& doc);
RunConfig parse_config_text(const std::string& text);
nlohmann::json to_json(const RunConfig& cfg);

/// Applies "dotted.key=value" to a JSON document. The value is parsed as
/// JSON when possible and taken as a string otherwise.
void apply_override(nlohmann::json& doc, const std::string& assignment);

/// Reads `path` (empty for defaults), applies the overrides in order, parses.
RunConfig load_config(const std::string& path,
                      const std::vector<std::string>& overrides = {});

ModelVariant parse_variant(const std::string& s);
Integrator parse_integrator(const std::string& s);

}  // namespace bridgesim

#endif  // BRIDGESIM_IO_CONFIG_HPP_
