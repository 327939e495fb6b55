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

#include "io/config.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace bridgesim {

using nlohmann::json;

ModelVariant parse_variant(const std::string& s) {
  if (s == "convexified") return ModelVariant::Convexified;
  if (s == "rigid") return ModelVariant::Rigid;
  throw ConfigError("unknown model variant '" + s + "' (convexified|rigid)");
}

Integrator parse_integrator(const std::string& s) {
  if (s == "rk4") return Integrator::RK4;
  if (s == "verlet") return Integrator::Verlet;
  throw ConfigError("unknown integrator '" + s + "' (rk4|verlet)");
}

namespace {

using Setter = std::function<void(const json&, const std::string&)>;

void walk(const json& obj, const std::string& where,
          const std::map<std::string, Setter>& fields) {
  if (!obj.is_object()) throw ConfigError(where + " must be an object");
  for (const auto& [key, value] : obj.items()) {
    const std::string path = where.empty() ? key : where + "." + key;
    const auto it = fields.find(key);
    if (it == fields.end()) throw ConfigError("unknown key '" + path + "'");
    it->second(value, path);
  }
}

Setter number(double& out) {
  return [&out](const json& v, const std::string& path) {
    if (!v.is_number()) throw ConfigError(path + " must be a number");
    out = v.get<double>();
    if (!std::isfinite(out)) throw ConfigError(path + " must be finite");
  };
}

Setter count(std::size_t& out) {
  return [&out](const json& v, const std::string& path) {
    if (!v.is_number_integer() || v.get<long long>() < 0) {
      throw ConfigError(path + " must be a non-negative integer");
    }
    out = v.get<std::size_t>();
  };
}

Setter flag(bool& out) {
  return [&out](const json& v, const std::string& path) {
    if (!v.is_boolean()) throw ConfigError(path + " must be true or false");
    out = v.get<bool>();
  };
}

Setter text(std::string& out) {
  return [&out](const json& v, const std::string& path) {
    if (!v.is_string()) throw ConfigError(path + " must be a string");
    out = v.get<std::string>();
  };
}

Setter variant(ModelVariant& out) {
  return [&out](const json& v, const std::string& path) {
    if (!v.is_string()) throw ConfigError(path + " must be a string");
    out = parse_variant(v.get<std::string>());
  };
}

}  // namespace

void RunConfig::validate() const {
  try {
    bridge.validate();
    numerics.validate();
    experiment_spec().validate(numerics.n_w);
    sweep.search.validate();
  } catch (const ConfigError&) {
    throw;
  } catch (const InvalidInput& e) {
    throw ConfigError(e.what());
  }
  if (!(T > 0.0)) throw ConfigError("numerics.T must be positive");
  for (std::size_t m : sweep.modes) {
    if (m < 1 || m > numerics.n_w) throw ConfigError("sweep.modes entries must lie in [1, n_w]");
  }
  if (sweep.variants.empty()) throw ConfigError("sweep.variants must not be empty");
  if (output.dir.empty()) throw ConfigError("output.dir must not be empty");
  if (validation.cases < 1) throw ConfigError("validation.cases must be positive");
}

ExperimentSpec RunConfig::experiment_spec() const {
  ExperimentSpec s = experiment;
  s.T = T;
  return s;
}

RunConfig parse_config(const json& doc) {
  RunConfig c;
  if (doc.is_null()) {
    c.validate();
    return c;
  }
  BridgeParams& b = c.bridge;
  Numerics& n = c.numerics;
  ExperimentSpec& e = c.experiment;
  SearchOptions& s = c.sweep.search;

  const std::map<std::string, Setter> bridge = {
      {"E", number(b.E)},     {"E_c", number(b.E_c)}, {"G", number(b.G)},
      {"L", number(b.L)},     {"ell", number(b.ell)}, {"f_sag", number(b.f_sag)},
      {"I", number(b.I)},     {"K", number(b.K)},     {"J", number(b.J)},
      {"A", number(b.A)},     {"M", number(b.M)},     {"H", number(b.H)},
      {"g", number(b.g)},     {"y0", number(b.y0)}};
  const std::map<std::string, Setter> numerics = {
      {"N", count(n.cells)},
      {"dt", number(n.dt)},
      {"T", number(c.T)},
      {"n_w", count(n.n_w)},
      {"n_theta", count(n.n_theta)},
      {"store_stride", number(n.store_stride)},
      {"integrator", [&n](const json& v, const std::string& path) {
         if (!v.is_string()) throw ConfigError(path + " must be a string");
         n.integrator = parse_integrator(v.get<std::string>());
       }}};
  const std::map<std::string, Setter> experiment = {
      {"mode", count(e.mode)},
      {"amplitude", number(e.amplitude)},
      {"perturbation_ratio", number(e.perturbation_ratio)},
      {"detection_ratio", number(e.detection_ratio)},
      {"variant", variant(e.variant)}};
  const std::map<std::string, Setter> sweep = {
      {"modes", [&c](const json& v, const std::string& path) {
         if (!v.is_array()) throw ConfigError(path + " must be an array");
         c.sweep.modes.clear();
         for (const auto& m : v) {
           if (!m.is_number_integer() || m.get<long long>() < 1) {
             throw ConfigError(path + " entries must be positive integers");
           }
           c.sweep.modes.push_back(m.get<std::size_t>());
         }
       }},
      {"variants", [&c](const json& v, const std::string& path) {
         if (!v.is_array()) throw ConfigError(path + " must be an array");
         c.sweep.variants.clear();
         for (const auto& m : v) {
           if (!m.is_string()) throw ConfigError(path + " entries must be strings");
           c.sweep.variants.push_back(parse_variant(m.get<std::string>()));
         }
       }},
      {"start", number(s.start)},
      {"step", number(s.step)},
      {"resolution", number(s.resolution)},
      {"max_amplitude", number(s.max_amplitude)},
      {"verify_bracket", flag(s.verify_bracket)}};
  const std::map<std::string, Setter> tolerances = {
      {"contact", number(n.tol.contact)}, {"slope", number(n.tol.slope)}};
  const std::map<std::string, Setter> validation = {
      {"seed", [&c](const json& v, const std::string& path) {
         if (!v.is_number_unsigned()) throw ConfigError(path + " must be a non-negative integer");
         c.validation.seed = v.get<std::uint64_t>();
       }},
      {"cases", count(c.validation.cases)}};
  const std::map<std::string, Setter> output = {
      {"dir", text(c.output.dir)},
      {"formats", [&c](const json& v, const std::string& path) {
         if (!v.is_array()) throw ConfigError(path + " must be an array");
         c.output.csv = c.output.json = false;
         for (const auto& f : v) {
           const std::string name = f.is_string() ? f.get<std::string>() : "";
           if (name == "csv") {
             c.output.csv = true;
           } else if (name == "json") {
             c.output.json = true;
           } else {
             throw ConfigError(path + " entries must be \"csv\" or \"json\"");
           }
         }
       }}};

  auto block = [](const std::map<std::string, Setter>& fields) {
    return [&fields](const json& v, const std::string& path) { walk(v, path, fields); };
  };
  walk(doc, "", {{"bridge", block(bridge)},
                 {"numerics", block(numerics)},
                 {"experiment", block(experiment)},
                 {"sweep", block(sweep)},
                 {"tolerances", block(tolerances)},
                 {"validation", block(validation)},
                 {"output", block(output)}});
  c.experiment.T = c.T;
  c.validate();
  return c;
}

RunConfig parse_config_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what());
  }
  return parse_config(doc);
}

json to_json(const RunConfig& c) {
  const BridgeParams& b = c.bridge;
  const Numerics& n = c.numerics;
  json variants = json::array();
  for (auto v : c.sweep.variants) variants.push_back(variant_name(v));
  json formats = json::array();
  if (c.output.csv) formats.push_back("csv");
  if (c.output.json) formats.push_back("json");
  return {
      {"bridge", {{"E", b.E}, {"E_c", b.E_c}, {"G", b.G}, {"L", b.L}, {"ell", b.ell},
                  {"f_sag", b.f_sag}, {"I", b.I}, {"K", b.K}, {"J", b.J}, {"A", b.A},
                  {"M", b.M}, {"H", b.H}, {"g", b.g}, {"y0", b.y0}}},
      {"numerics", {{"N", n.cells}, {"dt", n.dt}, {"T", c.T}, {"n_w", n.n_w},
                    {"n_theta", n.n_theta}, {"store_stride", n.store_stride},
                    {"integrator", integrator_name(n.integrator)}}},
      {"experiment", {{"mode", c.experiment.mode},
                      {"amplitude", c.experiment.amplitude},
                      {"perturbation_ratio", c.experiment.perturbation_ratio},
                      {"detection_ratio", c.experiment.detection_ratio},
                      {"variant", variant_name(c.experiment.variant)}}},
      {"sweep", {{"modes", c.sweep.modes}, {"variants", variants},
                 {"start", c.sweep.search.start}, {"step", c.sweep.search.step},
                 {"resolution", c.sweep.search.resolution},
                 {"max_amplitude", c.sweep.search.max_amplitude},
                 {"verify_bracket", c.sweep.search.verify_bracket}}},
      {"tolerances", {{"contact", n.tol.contact}, {"slope", n.tol.slope}}},
      {"validation", {{"seed", c.validation.seed}, {"cases", c.validation.cases}}},
      {"output", {{"dir", c.output.dir}, {"formats", formats}}}};
}

void apply_override(json& doc, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw ConfigError("override '" + assignment + "' is not of the form key=value");
  }
  const std::string key = assignment.substr(0, eq);
  const std::string raw = assignment.substr(eq + 1);
  json value;
  try {
    value = json::parse(raw);
  } catch (const json::parse_error&) {
    value = raw;
  }
  if (doc.is_null()) doc = json::object();
  json* node = &doc;
  std::stringstream parts(key);
  std::string part;
  std::vector<std::string> path;
  while (std::getline(parts, part, '.')) {
    if (part.empty()) throw ConfigError("override key '" + key + "' has an empty component");
    path.push_back(part);
  }
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    if (!node->is_object()) throw ConfigError("override key '" + key + "' crosses a non-object");
    node = &(*node)[path[i]];
    if (node->is_null()) *node = json::object();
  }
  if (!node->is_object()) throw ConfigError("override key '" + key + "' crosses a non-object");
  (*node)[path.back()] = value;
}

RunConfig load_config(const std::string& path,
                      const std::vector<std::string>& overrides) {
  json doc = json::object();
  if (!path.empty()) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    try {
      doc = json::parse(ss.str());
    } catch (const json::parse_error& e) {
      throw ConfigError("malformed JSON in '" + path + "': " + e.what());
    }
  }
  for (const auto& o : overrides) apply_override(doc, o);
  return parse_config(doc);
}

}  // namespace bridgesim
