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

// Randomized property suites over the envelope, variation, bridge and
// dynamics modules. Every suite draws its cases from a fixed seed, so a
// given build always checks the same inputs.

#ifndef BRIDGESIM_CORE_VALIDATION_HPP_
#define BRIDGESIM_CORE_VALIDATION_HPP_

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "core/envelope.hpp"
#include "core/grid.hpp"

namespace bridgesim {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::size_t cases = 0;
  /// Largest observed value/limit over the cases (<= 1 when passing); for
  /// report-only suites, the largest observed ratio.
  double worst = 0.0;
  std::string detail;
};

struct ValidationOptions {
  std::uint64_t seed = 20260415;
  std::size_t cases = 128;
};

using CheckCallback = std::function<void(const CheckResult&)>;

/// Runs every suite; `on_result` is called as each finishes.
std::vector<CheckResult> run_property_suites(const ValidationOptions& opts = {},
                                             const CheckCallback& on_result = {});

/// Names of the suites, in execution order.
std::vector<std::string> property_suite_names();

/// Greatest convex minorant as the pointwise max over every line through two
/// samples that stays below all samples. O(N^3); for cross-checks only.
std::vector<double> brute_force_envelope(std::span<const double> v);

/// Random test data shared by the suites and the unit tests.
class RandomFunctions {
 public:
  explicit RandomFunctions(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi);
  std::size_t index(std::size_t lo, std::size_t hi);  // inclusive

  /// Mixture of sines, a quadratic trend, occasional plateaus, affine runs
  /// and spikes.
  GridFunction function(double a, double b, std::size_t cells);
  /// Smooth function vanishing at both ends (and near them).
  GridFunction test_function(double a, double b, std::size_t cells);
  /// Random perturbation with values in [0, size].
  GridFunction nonnegative_noise(const GridFunction& like, double size);
  /// Function vanishing at both ends, random shape.
  GridFunction pinned_function(double a, double b, std::size_t cells);

 private:
  std::mt19937_64 rng_;
};

}  // namespace bridgesim

#endif  // BRIDGESIM_CORE_VALIDATION_HPP_
