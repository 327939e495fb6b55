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

#include "core/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <thread>

namespace bridgesim {

void ExperimentSpec::validate(std::size_t n_w) const {
  if (mode < 1 || mode > n_w) {
    throw InvalidInput("experiment.mode must lie in [1, n_w]");
  }
  if (!std::isfinite(amplitude)) throw InvalidInput("experiment.amplitude must be finite");
  if (!(perturbation_ratio >= 0.0 && perturbation_ratio < detection_ratio &&
        detection_ratio < 1.0)) {
    throw InvalidInput(
        "need 0 <= perturbation_ratio < detection_ratio < 1");
  }
  if (!(T > 0.0) || !std::isfinite(T)) throw InvalidInput("experiment.T must be positive");
}

void Numerics::validate() const {
  if (cells < 2) throw InvalidInput("numerics.N must be at least 2");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidInput("numerics.dt must be positive");
  if (n_w < 1 || n_theta < 1) throw InvalidInput("numerics.n_w and n_theta must be >= 1");
  if (!(store_stride > 0.0) || !std::isfinite(store_stride)) {
    throw InvalidInput("numerics.store_stride must be positive");
  }
  if (!(tol.contact > 0.0) || !(tol.slope > 0.0)) {
    throw InvalidInput("tolerances must be positive");
  }
}

DynamicsOptions Numerics::dynamics(ModelVariant variant) const {
  DynamicsOptions o;
  o.integrator = integrator;
  o.variant = variant;
  o.tol = tol;
  return o;
}

void SearchOptions::validate() const {
  if (!(start > 0.0) || !(step > 0.0) || !(resolution > 0.0) ||
      !(max_amplitude >= start)) {
    throw InvalidInput("search needs start, step, resolution > 0 and max >= start");
  }
}

ModalState build_ic(const ExperimentSpec& spec, std::size_t n_w,
                    std::size_t n_theta, double L) {
  spec.validate(n_w);
  const double to_coeff = 1.0 / amplitude_scale(L);
  const double seed = spec.perturbation_ratio * spec.amplitude * to_coeff;
  ModalState s(n_w, n_theta);
  std::fill(s.w.begin(), s.w.end(), seed);
  std::fill(s.theta.begin(), s.theta.end(), seed);
  std::fill(s.w_vel.begin(), s.w_vel.end(), seed);
  std::fill(s.theta_vel.begin(), s.theta_vel.end(), seed);
  s.w[spec.mode - 1] = spec.amplitude * to_coeff;
  return s;
}

bool detect_instability(const RunSummary& summary, const ExperimentSpec& spec) {
  const double level = spec.detection_ratio * std::abs(spec.amplitude);
  return std::any_of(summary.max_abs_theta_bar.begin(),
                     summary.max_abs_theta_bar.end(),
                     [&](double v) { return v > 0.0 && v >= level; });
}

bool detect_instability(const RunRecord& record, const ExperimentSpec& spec) {
  return detect_instability(record.summary, spec);
}

RunRecord run_experiment(const ExperimentSpec& spec, const BridgeParams& p,
                         const Numerics& num, bool stop_on_detection,
                         bool keep_history) {
  num.validate();
  GalerkinSystem sys(p, num.cells, num.n_w, num.n_theta, num.dynamics(spec.variant));
  const ModalState ic = build_ic(spec, num.n_w, num.n_theta, p.L);
  SimulationOptions so;
  so.T = spec.T;
  so.dt = num.dt;
  so.store_stride = num.store_stride;
  so.keep_history = keep_history;
  if (stop_on_detection) so.stop_theta_bar = spec.detection_ratio * std::abs(spec.amplitude);
  return sys.simulate(ic, so);
}

Accelerations rigid_variant_rhs(const ModalState& s, const BridgeParams& p,
                                std::size_t cells) {
  DynamicsOptions o;
  o.variant = ModelVariant::Rigid;
  return assemble_rhs(s, p, cells, o);
}

namespace {

struct Probe {
  bool unstable = false;
  bool aborted = false;
};

Probe probe(const ExperimentSpec& base, double amplitude, const BridgeParams& p,
            const Numerics& num) {
  ExperimentSpec spec = base;
  spec.amplitude = amplitude;
  try {
    return {detect_instability(run_experiment(spec, p, num, true), spec), false};
  } catch (const NumericalAbort&) {
    return {true, true};
  }
}

}  // namespace

ThresholdResult find_threshold(std::size_t mode, const ExperimentSpec& base,
                               const BridgeParams& p, const Numerics& num,
                               const SearchOptions& search) {
  search.validate();
  num.validate();
  ExperimentSpec spec = base;
  spec.mode = mode;
  spec.validate(num.n_w);

  ThresholdResult r;
  r.mode = mode;
  r.variant = spec.variant;

  // Amplitudes are rounded to the resolution grid so that reported values
  // carry no stray digits.
  const double res = search.resolution;
  auto snap = [&](double a) { return std::round(a / res) * res; };

  double lo = 0.0;
  double hi = 0.0;
  bool bracketed = false;
  for (std::size_t n = 0;; ++n) {
    const double a = snap(search.start + static_cast<double>(n) * search.step);
    if (a > search.max_amplitude + 0.5 * res) break;
    ++r.probes;
    if (probe(spec, a, p, num).unstable) {
      hi = a;
      bracketed = true;
      r.unstable_at_start = n == 0;
      break;
    }
    lo = a;
  }
  if (!bracketed) {
    r.lo = lo;
    r.hi = lo;
    r.error = "no instability found up to " + std::to_string(search.max_amplitude) + " m";
    return r;
  }

  while (hi - lo > res * (1.0 + 1e-9)) {
    double mid = snap(0.5 * (lo + hi));
    if (mid <= lo || mid >= hi) mid = 0.5 * (lo + hi);
    ++r.probes;
    if (probe(spec, mid, p, num).unstable) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  r.lo = lo;
  r.hi = hi;
  r.threshold = hi;

  // Full-horizon rerun at the threshold for the reported statistics.
  ExperimentSpec at = spec;
  at.amplitude = hi;
  try {
    const RunRecord rec = run_experiment(at, p, num, false);
    const RunSummary& s = rec.summary;
    r.energy0 = s.energy0;
    r.mean_slackening = s.mean_slackening();
    r.energy_drift = s.energy_drift();
    r.dominant_torsional_mode = s.dominant_torsional_mode();
    r.max_abs_theta_bar = s.max_abs_theta_bar;
    r.found = true;
    if (!detect_instability(s, at)) r.non_monotone = true;
  } catch (const NumericalAbort& e) {
    r.error = std::string("numerical abort at threshold: ") + e.what();
    return r;
  }
  ++r.probes;

  if (search.verify_bracket) {
    bool lo_stable = true;
    if (lo > 0.0) {
      ++r.probes;
      lo_stable = !probe(spec, lo, p, num).unstable;
    }
    r.bracket_verified = lo_stable && !r.non_monotone;
    if (!lo_stable) r.non_monotone = true;
  }
  return r;
}

std::size_t default_workers() {
  if (const char* env = std::getenv("BRIDGESIM_WORKERS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

std::vector<ThresholdResult> sweep_tasks(const std::vector<SweepTask>& tasks,
                                         const ExperimentSpec& base,
                                         const BridgeParams& p, const Numerics& num,
                                         const SearchOptions& search,
                                         std::size_t workers,
                                         const ThresholdCallback& on_done) {
  std::vector<ThresholdResult> out(tasks.size());
  if (tasks.empty()) return out;
  workers = std::clamp<std::size_t>(workers, 1, tasks.size());

  std::atomic<std::size_t> next{0};
  std::mutex cb_mutex;
  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      ExperimentSpec spec = base;
      spec.variant = tasks[i].variant;
      ThresholdResult r;
      try {
        r = find_threshold(tasks[i].mode, spec, p, num, search);
      } catch (const std::exception& e) {
        r.mode = tasks[i].mode;
        r.variant = tasks[i].variant;
        r.error = e.what();
      }
      out[i] = r;
      if (on_done) {
        std::lock_guard<std::mutex> lock(cb_mutex);
        on_done(out[i]);
      }
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  return out;
}

std::vector<ThresholdResult> sweep(const std::vector<std::size_t>& modes,
                                   const ExperimentSpec& base,
                                   const BridgeParams& p, const Numerics& num,
                                   const SearchOptions& search,
                                   std::size_t workers,
                                   const ThresholdCallback& on_done) {
  std::vector<SweepTask> tasks;
  for (std::size_t m : modes) tasks.push_back({m, base.variant});
  return sweep_tasks(tasks, base, p, num, search, workers, on_done);
}

const char* variant_name(ModelVariant v) {
  return v == ModelVariant::Rigid ? "rigid" : "convexified";
}

const char* integrator_name(Integrator v) {
  return v == Integrator::Verlet ? "verlet" : "rk4";
}

}  // namespace bridgesim
