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

// bridgesim command-line driver. Exit codes: 0 success, 1 failed checks,
// 2 configuration or usage error, 3 numerical abort, 4 I/O error,
// 5 internal error.

#include <cstdio>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bridgesim/bridgesim.h"

namespace {

constexpr int kExitChecksFailed = 1;
constexpr int kExitConfig = 2;

struct CommonArgs {
  std::string config;
  std::vector<std::string> overrides;
  std::string out_dir;
};

struct Failure {
  int code;
};

int exit_code(bs_status s) {
  switch (s) {
    case BS_OK:
      return 0;
    case BS_ERR_INVALID_ARGUMENT:
    case BS_ERR_CONFIG:
      return kExitConfig;
    case BS_ERR_NUMERICAL:
      return 3;
    case BS_ERR_IO:
      return 4;
    case BS_ERR_INTERNAL:
      return 5;
  }
  return 5;
}

void check(bs_status s, const char* what) {
  if (s == BS_OK) return;
  std::fprintf(stderr, "bridgesim: %s: %s: %s\n", what, bs_status_name(s), bs_last_error());
  throw Failure{exit_code(s)};
}

struct ConfigDeleter {
  void operator()(bs_config* c) const { bs_config_free(c); }
};
struct RunDeleter {
  void operator()(bs_run* r) const { bs_run_free(r); }
};
struct TableDeleter {
  void operator()(bs_table* t) const { bs_table_free(t); }
};
struct StringDeleter {
  void operator()(char* s) const { bs_free_string(s); }
};
using ConfigPtr = std::unique_ptr<bs_config, ConfigDeleter>;
using RunPtr = std::unique_ptr<bs_run, RunDeleter>;
using TablePtr = std::unique_ptr<bs_table, TableDeleter>;
using StringPtr = std::unique_ptr<char, StringDeleter>;

ConfigPtr load(const CommonArgs& args) {
  std::vector<std::string> overrides = args.overrides;
  if (!args.out_dir.empty()) {
    overrides.push_back("output.dir=" + nlohmann::json(args.out_dir).dump());
  }
  std::vector<const char*> raw;
  for (const auto& o : overrides) raw.push_back(o.c_str());
  bs_config* cfg = nullptr;
  check(bs_config_load(args.config.empty() ? nullptr : args.config.c_str(), raw.data(),
                       raw.size(), &cfg),
        "loading configuration");
  return ConfigPtr(cfg);
}

struct OutputSettings {
  std::filesystem::path dir;
  bool csv = true;
  bool json = true;
};

nlohmann::json config_json(const bs_config* cfg) {
  char* text = nullptr;
  check(bs_config_to_json(cfg, &text), "reading configuration");
  StringPtr owned(text);
  return nlohmann::json::parse(owned.get());
}

OutputSettings output_settings(const bs_config* cfg) {
  const nlohmann::json j = config_json(cfg);
  OutputSettings o;
  o.dir = j.at("output").at("dir").get<std::string>();
  o.csv = o.json = false;
  for (const auto& f : j.at("output").at("formats")) {
    o.csv = o.csv || f == "csv";
    o.json = o.json || f == "json";
  }
  return o;
}

void make_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    std::fprintf(stderr, "bridgesim: cannot create '%s': %s\n", dir.c_str(),
                 ec.message().c_str());
    throw Failure{4};
  }
}

void write_string(const std::filesystem::path& path, const std::string& text) {
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (!f || std::fwrite(text.data(), 1, text.size(), f) != text.size() ||
      std::fclose(f) != 0) {
    std::fprintf(stderr, "bridgesim: cannot write '%s'\n", path.c_str());
    throw Failure{4};
  }
}

int cmd_simulate(const CommonArgs& args) {
  ConfigPtr cfg = load(args);
  const OutputSettings out = output_settings(cfg.get());
  bs_run* raw = nullptr;
  check(bs_simulate(cfg.get(), &raw), "simulation");
  RunPtr run(raw);

  bs_run_summary s;
  check(bs_run_get_summary(run.get(), &s), "summary");
  std::vector<double> theta(s.n_theta);
  check(bs_run_max_abs_theta_bar(run.get(), theta.data(), theta.size()), "summary");

  make_dir(out.dir);
  if (out.csv) check(bs_run_write_csv(run.get(), (out.dir / "run.csv").c_str()), "writing run.csv");
  if (out.json) {
    check(bs_run_write_summary_json(run.get(), (out.dir / "summary.json").c_str()),
          "writing summary.json");
  }

  std::printf("verdict            %s\n", s.unstable ? "unstable" : "stable");
  std::printf("energy(0)          %.6e J\n", s.energy0);
  std::printf("energy drift       %.3e\n", s.energy_drift);
  std::printf("mean slackening    %.2f %%\n", 100.0 * s.mean_slackening);
  std::printf("max |theta_bar_k| ");
  for (double v : theta) std::printf(" %.3e", v);
  std::printf("\ndominant torsional mode %zu\n", s.dominant_torsional_mode);
  return 0;
}

void print_threshold(const bs_threshold* r, void*) {
  if (r->error[0] != '\0') {
    std::fprintf(stderr, "mode %2zu %-11s error: %s\n", r->mode,
                 r->variant == BS_RIGID ? "rigid" : "convexified", r->error);
  } else if (!r->found) {
    std::fprintf(stderr, "mode %2zu %-11s no threshold below the scan limit\n", r->mode,
                 r->variant == BS_RIGID ? "rigid" : "convexified");
  } else {
    std::fprintf(stderr,
                 "mode %2zu %-11s W0 %.2f m  energy %.4e J  slackening %.2f %%  "
                 "drift %.1e  dominant torsional %zu\n",
                 r->mode, r->variant == BS_RIGID ? "rigid" : "convexified", r->threshold,
                 r->energy0, 100.0 * r->mean_slackening, r->energy_drift,
                 r->dominant_torsional_mode);
  }
  std::fflush(stderr);
}

std::vector<bs_variant> parse_variants(const std::vector<std::string>& names) {
  std::vector<bs_variant> out;
  for (const auto& n : names) {
    if (n == "convexified") {
      out.push_back(BS_CONVEXIFIED);
    } else if (n == "rigid") {
      out.push_back(BS_RIGID);
    } else {
      std::fprintf(stderr, "bridgesim: unknown variant '%s' (convexified|rigid)\n", n.c_str());
      throw Failure{kExitConfig};
    }
  }
  return out;
}

int run_thresholds(const CommonArgs& args, bool single, std::size_t workers,
                   const std::vector<std::string>& variant_names) {
  ConfigPtr cfg = load(args);
  const OutputSettings out = output_settings(cfg.get());
  const std::vector<bs_variant> variants = parse_variants(variant_names);

  std::vector<std::size_t> modes;
  std::vector<bs_variant> chosen = variants;
  if (single) {
    const nlohmann::json j = config_json(cfg.get());
    modes.push_back(j.at("experiment").at("mode").get<std::size_t>());
    if (chosen.empty()) {
      chosen.push_back(j.at("experiment").at("variant") == "rigid" ? BS_RIGID : BS_CONVEXIFIED);
    }
  }

  bs_table* raw = nullptr;
  check(bs_sweep_run(cfg.get(), modes.empty() ? nullptr : modes.data(), modes.size(),
                     chosen.empty() ? nullptr : chosen.data(), chosen.size(), workers,
                     print_threshold, nullptr, &raw),
        "threshold search");
  TablePtr table(raw);

  make_dir(out.dir);
  if (out.csv) {
    check(bs_table_write_csv(table.get(), (out.dir / "thresholds.csv").c_str()),
          "writing thresholds.csv");
    check(bs_table_write_comparison_csv(table.get(), (out.dir / "comparison.csv").c_str()),
          "writing comparison.csv");
  }
  if (out.json) {
    char* text = nullptr;
    check(bs_table_to_json(table.get(), &text), "serializing thresholds");
    StringPtr owned(text);
    write_string(out.dir / "thresholds.json", std::string(owned.get()) + "\n");
  }
  return 0;
}

void print_check(const bs_check* c, void*) {
  std::printf("%s: %s  (%zu cases, worst %.3g)%s%s\n", c->name, c->passed ? "PASS" : "FAIL",
              c->cases, c->worst, c->detail[0] ? "  " : "", c->detail);
  std::fflush(stdout);
}

int cmd_validate(const CommonArgs& args, const std::string& json_path) {
  ConfigPtr cfg = load(args);
  int all_passed = 0;
  char* text = nullptr;
  check(bs_validate(cfg.get(), print_check, nullptr, &all_passed,
                    json_path.empty() ? nullptr : &text),
        "validation");
  StringPtr owned(text);
  if (!json_path.empty()) write_string(json_path, std::string(owned.get()) + "\n");
  std::printf("%s\n", all_passed ? "all suites passed" : "some suites FAILED");
  return all_passed ? 0 : kExitChecksFailed;
}

int cmd_flat_envelope(std::size_t cells) {
  bs_flat_envelope_report r;
  check(bs_flat_envelope_example(cells, &r), "flat-envelope example");
  std::printf("tangency point (root)       %.6f\n", r.zeta_root);
  std::printf("tangency residual           %.3e\n", r.tangency_residual);
  std::printf("tangency point (envelope)   %.6f\n", r.zeta_envelope);
  std::printf("right quotient limit        %.6e\n", r.right_limit);
  std::printf("left quotient limit         %.6e\n", r.left_limit);
  std::printf("concave majorant integral   %.6e\n", r.concave_majorant_integral);
  return 0;
}

void add_common(CLI::App* sub, CommonArgs& args) {
  sub->add_option("-c,--config", args.config, "JSON configuration file")
      ->check(CLI::ExistingFile);
  sub->add_option("-s,--set", args.overrides, "Override a key, e.g. numerics.dt=5e-4")
      ->allow_extra_args(false);
  sub->add_option("-o,--out", args.out_dir, "Output directory (output.dir)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Convexified-cable suspension bridge simulator"};
  app.set_version_flag("--version", std::string(bs_version()));
  app.require_subcommand(1);

  CommonArgs args;
  std::size_t workers = 0;
  std::vector<std::string> variants;
  std::string validate_json;
  std::size_t example_cells = 4000;

  auto* simulate = app.add_subcommand("simulate", "Run one experiment and write its time series");
  add_common(simulate, args);

  auto* threshold =
      app.add_subcommand("threshold", "Instability threshold of the configured mode");
  add_common(threshold, args);
  threshold->add_option("--variant", variants, "convexified and/or rigid");

  auto* sweep = app.add_subcommand("sweep", "Instability thresholds of every configured mode");
  add_common(sweep, args);
  sweep->add_option("--variant", variants, "convexified and/or rigid (default: sweep.variants)");
  for (auto* sub : {threshold, sweep}) {
    sub->add_option("-j,--workers", workers,
                    "Worker threads (default: BRIDGESIM_WORKERS or all cores)");
  }

  auto* validate = app.add_subcommand("validate", "Run the randomized property suites");
  add_common(validate, args);
  validate->add_option("--json", validate_json, "Also write the results as JSON");

  auto* example = app.add_subcommand(
      "example-2-3", "Tangency point and one-sided quotients of the flat-envelope example");
  example->add_option("--cells", example_cells, "Grid cells on (-2, 2)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (simulate->parsed()) return cmd_simulate(args);
    if (threshold->parsed()) return run_thresholds(args, true, workers, variants);
    if (sweep->parsed()) return run_thresholds(args, false, workers, variants);
    if (validate->parsed()) return cmd_validate(args, validate_json);
    if (example->parsed()) return cmd_flat_envelope(example_cells);
  } catch (const Failure& f) {
    return f.code;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "bridgesim: %s\n", e.what());
    return 5;
  }
  return 0;
}
