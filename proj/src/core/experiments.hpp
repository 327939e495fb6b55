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

// Torsional-instability protocol: one longitudinal mode is excited, every
// other degree of freedom gets a small seed, and the run is called unstable
// when some torsional mode grows by an order of magnitude over the horizon.

#ifndef BRIDGESIM_CORE_EXPERIMENTS_HPP_
#define BRIDGESIM_CORE_EXPERIMENTS_HPP_

#include <functional>
#include <string>
#include <vector>

#include "core/dynamics.hpp"

namespace bridgesim {

struct ExperimentSpec {
  std::size_t mode = 1;  // excited longitudinal mode, 1-based
  double amplitude = 1.0;  // normalized amplitude of the excited mode [m]
  double perturbation_ratio = 1e-3;
  double T = 120.0;
  double detection_ratio = 1e-2;
  ModelVariant variant = ModelVariant::Convexified;

  void validate(std::size_t n_w) const;
};

struct Numerics {
  std::size_t cells = 2048;
  double dt = 1e-3;
  std::size_t n_w = 10;
  std::size_t n_theta = 4;
  Integrator integrator = Integrator::RK4;
  double store_stride = 0.01;
  ToleranceConfig tol;

  void validate() const;
  DynamicsOptions dynamics(ModelVariant variant) const;
};

struct SearchOptions {
  double start = 0.25;
  double step = 0.25;
  double resolution = 0.01;
  double max_amplitude = 30.0;
  /// Re-run the final bracket ends from scratch and check they still differ.
  bool verify_bracket = true;

  void validate() const;
};

struct ThresholdResult {
  std::size_t mode = 0;
  ModelVariant variant = ModelVariant::Convexified;
  bool found = false;
  double threshold = 0.0;  // hi end of the final bracket
  double lo = 0.0;
  double hi = 0.0;
  double energy0 = 0.0;          // total energy of the IC at the threshold
  double mean_slackening = 0.0;  // time average over both cables
  double energy_drift = 0.0;     // of the full-horizon run at the threshold
  std::size_t dominant_torsional_mode = 0;
  std::vector<double> max_abs_theta_bar;
  /// The first scanned amplitude was already unstable.
  bool unstable_at_start = false;
  /// Some probe inside the final bracket disagreed with the monotone picture.
  bool non_monotone = false;
  bool bracket_verified = false;
  std::size_t probes = 0;
  std::string error;

  double bracket_width() const { return hi - lo; }
};

/// Normalized-amplitude IC: excited mode at `amplitude`, every other
/// position and all velocities at perturbation_ratio * amplitude.
ModalState build_ic(const ExperimentSpec& spec, std::size_t n_w,
                    std::size_t n_theta, double L);

/// max_k max_t |theta_bar_k| >= detection_ratio * amplitude.
bool detect_instability(const RunSummary& summary, const ExperimentSpec& spec);
bool detect_instability(const RunRecord& record, const ExperimentSpec& spec);

/// One protocol run. With `stop_on_detection` the run ends as soon as the
/// detector fires (the classification is unchanged by that).
RunRecord run_experiment(const ExperimentSpec& spec, const BridgeParams& p,
                         const Numerics& num, bool stop_on_detection,
                         bool keep_history = false);

/// Accelerations with every envelope replaced by the raw constraint.
Accelerations rigid_variant_rhs(const ModalState& s, const BridgeParams& p,
                                std::size_t cells);

/// Upward scan from search.start in search.step increments to the first
/// unstable amplitude, then bisection of the last bracket to
/// search.resolution. Numerical aborts count as unstable.
ThresholdResult find_threshold(std::size_t mode, const ExperimentSpec& base,
                               const BridgeParams& p, const Numerics& num,
                               const SearchOptions& search = {});

/// Number of workers: BRIDGESIM_WORKERS if set and positive, else the
/// hardware concurrency.
std::size_t default_workers();

using ThresholdCallback = std::function<void(const ThresholdResult&)>;

/// find_threshold for each mode, run on a pool of `workers` threads; results
/// come back in the order of `modes`. Per-mode failures land in `error`.
std::vector<ThresholdResult> sweep(const std::vector<std::size_t>& modes,
                                   const ExperimentSpec& base,
                                   const BridgeParams& p, const Numerics& num,
                                   const SearchOptions& search,
                                   std::size_t workers,
                                   const ThresholdCallback& on_done = {});

struct SweepTask {
  std::size_t mode = 1;
  ModelVariant variant = ModelVariant::Convexified;
};

/// As `sweep`, over arbitrary (mode, variant) pairs; results follow `tasks`.
std::vector<ThresholdResult> sweep_tasks(const std::vector<SweepTask>& tasks,
                                         const ExperimentSpec& base,
                                         const BridgeParams& p, const Numerics& num,
                                         const SearchOptions& search,
                                         std::size_t workers,
                                         const ThresholdCallback& on_done = {});

const char* variant_name(ModelVariant v);
const char* integrator_name(Integrator v);

}  // namespace bridgesim

#endif  // BRIDGESIM_CORE_EXPERIMENTS_HPP_
