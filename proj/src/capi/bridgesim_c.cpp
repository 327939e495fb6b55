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

#include "bridgesim/bridgesim.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <memory>
#include <new>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "core/dynamics.hpp"
#include "core/experiments.hpp"
#include "core/validation.hpp"
#include "core/variation.hpp"
#include "io/config.hpp"
#include "io/output.hpp"

using namespace bridgesim;

struct bs_config {
  RunConfig cfg;
  nlohmann::json doc;  // as given, so that overrides compose on the source
};

struct bs_model {
  std::unique_ptr<GalerkinSystem> sys;
};

struct bs_run {
  RunRecord record;
  bool unstable = false;
};

struct bs_table {
  std::vector<ThresholdResult> results;
};

namespace {

thread_local std::string last_error;

bs_status fail(bs_status status, const std::string& message) {
  last_error = message;
  return status;
}

template <typename F>
bs_status guarded(F&& body) {
  try {
    body();
    return BS_OK;
  } catch (const ConfigError& e) {
    return fail(BS_ERR_CONFIG, e.what());
  } catch (const NumericalAbort& e) {
    return fail(BS_ERR_NUMERICAL, e.what());
  } catch (const IoError& e) {
    return fail(BS_ERR_IO, e.what());
  } catch (const InvalidInput& e) {
    return fail(BS_ERR_INVALID_ARGUMENT, e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(BS_ERR_CONFIG, e.what());
  } catch (const std::bad_alloc&) {
    return fail(BS_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(BS_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(BS_ERR_INTERNAL, "unknown error");
  }
}

void require(bool cond, const char* what) {
  if (!cond) throw InvalidInput(what);
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

ModelVariant to_variant(bs_variant v) {
  switch (v) {
    case BS_CONVEXIFIED:
      return ModelVariant::Convexified;
    case BS_RIGID:
      return ModelVariant::Rigid;
  }
  throw InvalidInput("unknown variant");
}

bs_variant from_variant(ModelVariant v) {
  return v == ModelVariant::Rigid ? BS_RIGID : BS_CONVEXIFIED;
}

bs_threshold to_c(const ThresholdResult& r) {
  bs_threshold t{};
  t.mode = r.mode;
  t.variant = from_variant(r.variant);
  t.found = r.found;
  t.threshold = r.threshold;
  t.lo = r.lo;
  t.hi = r.hi;
  t.energy0 = r.energy0;
  t.mean_slackening = r.mean_slackening;
  t.energy_drift = r.energy_drift;
  t.dominant_torsional_mode = r.dominant_torsional_mode;
  t.probes = r.probes;
  t.bracket_verified = r.bracket_verified;
  t.non_monotone = r.non_monotone;
  t.unstable_at_start = r.unstable_at_start;
  t.error = r.error.c_str();
  return t;
}

bs_check to_c(const CheckResult& c) {
  return {c.name.c_str(), c.passed, c.cases, c.worst, c.detail.c_str()};
}

template <typename Write>
void write_file(const char* path, Write&& write) {
  require(path && *path, "path must be non-empty");
  std::ostringstream out;
  write(out);
  write_text_file(path, out.str());
}

}  // namespace

extern "C" {

const char* bs_version(void) { return "1.0.0"; }

const char* bs_last_error(void) { return last_error.c_str(); }

const char* bs_status_name(bs_status status) {
  switch (status) {
    case BS_OK:
      return "ok";
    case BS_ERR_INVALID_ARGUMENT:
      return "invalid argument";
    case BS_ERR_CONFIG:
      return "configuration error";
    case BS_ERR_NUMERICAL:
      return "numerical abort";
    case BS_ERR_IO:
      return "i/o error";
    case BS_ERR_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

void bs_free_string(char* s) { std::free(s); }

size_t bs_default_workers(void) { return default_workers(); }

bs_status bs_config_default(bs_config** out) {
  return guarded([&] {
    require(out, "out must not be NULL");
    auto c = std::make_unique<bs_config>();
    c->doc = nlohmann::json::object();
    c->cfg = parse_config(c->doc);
    *out = c.release();
  });
}

bs_status bs_config_load(const char* path, const char* const* overrides,
                         size_t n_overrides, bs_config** out) {
  return guarded([&] {
    require(out, "out must not be NULL");
    require(overrides || n_overrides == 0, "overrides must not be NULL");
    auto c = std::make_unique<bs_config>();
    c->doc = nlohmann::json::object();
    if (path && *path) {
      std::ifstream in(path);
      if (!in) throw ConfigError(std::string("cannot open config file '") + path + "'");
      std::stringstream ss;
      ss << in.rdbuf();
      try {
        c->doc = nlohmann::json::parse(ss.str());
      } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("malformed JSON in '") + path + "': " + e.what());
      }
    }
    for (size_t i = 0; i < n_overrides; ++i) {
      require(overrides[i], "override must not be NULL");
      apply_override(c->doc, overrides[i]);
    }
    c->cfg = parse_config(c->doc);
    *out = c.release();
  });
}

bs_status bs_config_from_json(const char* text, bs_config** out) {
  return guarded([&] {
    require(text && out, "arguments must not be NULL");
    auto c = std::make_unique<bs_config>();
    try {
      c->doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw ConfigError(std::string("malformed JSON: ") + e.what());
    }
    c->cfg = parse_config(c->doc);
    *out = c.release();
  });
}

bs_status bs_config_set(bs_config* cfg, const char* assignment) {
  return guarded([&] {
    require(cfg && assignment, "arguments must not be NULL");
    nlohmann::json doc = cfg->doc;
    apply_override(doc, assignment);
    RunConfig parsed = parse_config(doc);
    cfg->doc = std::move(doc);
    cfg->cfg = std::move(parsed);
  });
}

bs_status bs_config_to_json(const bs_config* cfg, char** out) {
  return guarded([&] {
    require(cfg && out, "arguments must not be NULL");
    *out = dup_string(to_json(cfg->cfg).dump(2));
  });
}

void bs_config_free(bs_config* cfg) { delete cfg; }

bs_status bs_model_create(const bs_config* cfg, bs_variant variant, bs_model** out) {
  return guarded([&] {
    require(cfg && out, "arguments must not be NULL");
    const Numerics& n = cfg->cfg.numerics;
    auto m = std::make_unique<bs_model>();
    m->sys = std::make_unique<GalerkinSystem>(cfg->cfg.bridge, n.cells, n.n_w, n.n_theta,
                                              n.dynamics(to_variant(variant)));
    *out = m.release();
  });
}

bs_status bs_model_sizes(const bs_model* m, size_t* n_w, size_t* n_theta) {
  return guarded([&] {
    require(m && n_w && n_theta, "arguments must not be NULL");
    *n_w = m->sys->n_w();
    *n_theta = m->sys->n_theta();
  });
}

bs_status bs_model_accelerations(bs_model* m, const double* w, const double* theta,
                                 double* w_acc, double* theta_acc) {
  return guarded([&] {
    require(m && w && theta && w_acc && theta_acc, "arguments must not be NULL");
    const size_t nw = m->sys->n_w(), nt = m->sys->n_theta();
    m->sys->accelerations({w, nw}, {theta, nt}, {w_acc, nw}, {theta_acc, nt});
  });
}

bs_status bs_model_energy(bs_model* m, const double* w, const double* theta,
                          const double* w_vel, const double* theta_vel, double* energy) {
  return guarded([&] {
    require(m && w && theta && w_vel && theta_vel && energy, "arguments must not be NULL");
    const size_t nw = m->sys->n_w(), nt = m->sys->n_theta();
    ModalState s(nw, nt);
    s.w.assign(w, w + nw);
    s.theta.assign(theta, theta + nt);
    s.w_vel.assign(w_vel, w_vel + nw);
    s.theta_vel.assign(theta_vel, theta_vel + nt);
    s.validate();
    *energy = m->sys->energy(s);
  });
}

void bs_model_free(bs_model* m) { delete m; }

bs_status bs_simulate(const bs_config* cfg, bs_run** out) {
  return guarded([&] {
    require(cfg && out, "arguments must not be NULL");
    const ExperimentSpec spec = cfg->cfg.experiment_spec();
    auto r = std::make_unique<bs_run>();
    r->record = run_experiment(spec, cfg->cfg.bridge, cfg->cfg.numerics, false, true);
    r->unstable = detect_instability(r->record, spec);
    *out = r.release();
  });
}

bs_status bs_run_get_summary(const bs_run* run, bs_run_summary* out) {
  return guarded([&] {
    require(run && out, "arguments must not be NULL");
    const RunSummary& s = run->record.summary;
    *out = bs_run_summary{};
    out->n_w = s.max_abs_w_bar.size();
    out->n_theta = s.max_abs_theta_bar.size();
    out->energy0 = s.energy0;
    out->energy_drift = s.energy_drift();
    out->mean_slack_alpha = s.mean_slack_alpha;
    out->mean_slack_beta = s.mean_slack_beta;
    out->mean_slackening = s.mean_slackening();
    out->t_end = s.t_end;
    out->steps = s.steps;
    out->samples = s.samples;
    out->dominant_torsional_mode = s.dominant_torsional_mode();
    out->stopped_early = s.stopped_early;
    out->unstable = run->unstable;
  });
}

bs_status bs_run_max_abs_w_bar(const bs_run* run, double* out, size_t n) {
  return guarded([&] {
    require(run && (out || n == 0), "arguments must not be NULL");
    const auto& v = run->record.summary.max_abs_w_bar;
    for (size_t i = 0; i < n && i < v.size(); ++i) out[i] = v[i];
  });
}

bs_status bs_run_max_abs_theta_bar(const bs_run* run, double* out, size_t n) {
  return guarded([&] {
    require(run && (out || n == 0), "arguments must not be NULL");
    const auto& v = run->record.summary.max_abs_theta_bar;
    for (size_t i = 0; i < n && i < v.size(); ++i) out[i] = v[i];
  });
}

size_t bs_run_sample_count(const bs_run* run) { return run ? run->record.times.size() : 0; }

bs_status bs_run_sample(const bs_run* run, size_t i, double* t, double* w_bar,
                        double* theta_bar, double* energy, double* slack_alpha,
                        double* slack_beta) {
  return guarded([&] {
    require(run, "run must not be NULL");
    const RunRecord& r = run->record;
    require(i < r.times.size(), "sample index out of range");
    if (t) *t = r.times[i];
    if (w_bar) std::copy(r.w_bar[i].begin(), r.w_bar[i].end(), w_bar);
    if (theta_bar) std::copy(r.theta_bar[i].begin(), r.theta_bar[i].end(), theta_bar);
    if (energy) *energy = r.energy[i];
    if (slack_alpha) *slack_alpha = r.slack_alpha[i];
    if (slack_beta) *slack_beta = r.slack_beta[i];
  });
}

bs_status bs_run_write_csv(const bs_run* run, const char* path) {
  return guarded([&] {
    require(run, "run must not be NULL");
    write_file(path, [&](std::ostream& o) { write_run_csv(o, run->record); });
  });
}

bs_status bs_run_summary_json(const bs_run* run, char** out) {
  return guarded([&] {
    require(run && out, "arguments must not be NULL");
    nlohmann::json j = summary_to_json(run->record.summary);
    j["unstable"] = run->unstable;
    *out = dup_string(j.dump(2));
  });
}

bs_status bs_run_write_summary_json(const bs_run* run, const char* path) {
  return guarded([&] {
    require(run, "run must not be NULL");
    nlohmann::json j = summary_to_json(run->record.summary);
    j["unstable"] = run->unstable;
    write_file(path, [&](std::ostream& o) { o << j.dump(2) << '\n'; });
  });
}

void bs_run_free(bs_run* run) { delete run; }

bs_status bs_sweep_run(const bs_config* cfg, const size_t* modes, size_t n_modes,
                       const bs_variant* variants, size_t n_variants, size_t workers,
                       bs_threshold_callback on_done, void* user, bs_table** out) {
  return guarded([&] {
    require(cfg && out, "arguments must not be NULL");
    const RunConfig& c = cfg->cfg;
    std::vector<size_t> mode_list =
        modes ? std::vector<size_t>(modes, modes + n_modes) : c.sweep.modes;
    std::vector<ModelVariant> variant_list;
    if (variants) {
      for (size_t i = 0; i < n_variants; ++i) variant_list.push_back(to_variant(variants[i]));
    } else {
      variant_list = c.sweep.variants;
    }
    require(!mode_list.empty() && !variant_list.empty(), "nothing to sweep");
    for (size_t m : mode_list) {
      if (m < 1 || m > c.numerics.n_w) throw InvalidInput("mode out of range [1, n_w]");
    }
    std::vector<SweepTask> tasks;
    for (ModelVariant v : variant_list) {
      for (size_t m : mode_list) tasks.push_back({m, v});
    }
    ThresholdCallback cb;
    if (on_done) {
      cb = [on_done, user](const ThresholdResult& r) {
        const bs_threshold t = to_c(r);
        on_done(&t, user);
      };
    }
    auto table = std::make_unique<bs_table>();
    table->results = sweep_tasks(tasks, c.experiment_spec(), c.bridge, c.numerics,
                                 c.sweep.search, workers ? workers : default_workers(), cb);
    *out = table.release();
  });
}

size_t bs_table_count(const bs_table* table) { return table ? table->results.size() : 0; }

bs_status bs_table_get(const bs_table* table, size_t i, bs_threshold* out) {
  return guarded([&] {
    require(table && out, "arguments must not be NULL");
    require(i < table->results.size(), "row index out of range");
    *out = to_c(table->results[i]);
  });
}

bs_status bs_table_write_csv(const bs_table* table, const char* path) {
  return guarded([&] {
    require(table, "table must not be NULL");
    write_file(path, [&](std::ostream& o) { write_thresholds_csv(o, table->results); });
  });
}

bs_status bs_table_write_comparison_csv(const bs_table* table, const char* path) {
  return guarded([&] {
    require(table, "table must not be NULL");
    write_file(path, [&](std::ostream& o) { write_comparison_csv(o, table->results); });
  });
}

bs_status bs_table_to_json(const bs_table* table, char** out) {
  return guarded([&] {
    require(table && out, "arguments must not be NULL");
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : table->results) arr.push_back(threshold_to_json(r));
    *out = dup_string(arr.dump(2));
  });
}

void bs_table_free(bs_table* table) { delete table; }

bs_status bs_validate(const bs_config* cfg, bs_check_callback on_check, void* user,
                      int* all_passed, char** json) {
  return guarded([&] {
    require(cfg && all_passed, "arguments must not be NULL");
    CheckCallback cb;
    if (on_check) {
      cb = [on_check, user](const CheckResult& r) {
        const bs_check c = to_c(r);
        on_check(&c, user);
      };
    }
    const auto results = run_property_suites(cfg->cfg.validation, cb);
    bool ok = true;
    for (const auto& r : results) ok = ok && r.passed;
    *all_passed = ok;
    if (json) *json = dup_string(checks_to_json(results).dump(2));
  });
}

bs_status bs_flat_envelope_example(size_t cells, bs_flat_envelope_report* out) {
  return guarded([&] {
    require(out, "out must not be NULL");
    require(cells >= 8, "cells must be at least 8");
    const FlatEnvelopeReport r = bridgesim::flat_envelope_example(cells);
    *out = {r.zeta_root,   r.tangency_residual, r.zeta_envelope,
            r.right_limit, r.left_limit,        r.concave_majorant_integral};
  });
}

}  // extern "C"
