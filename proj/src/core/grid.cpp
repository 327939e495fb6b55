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

#include "core/grid.hpp"

#include <algorithm>
#include <cmath>

namespace bridgesim {

GridFunction::GridFunction(double a, double b, std::vector<double> values)
    : a_(a), b_(b), values_(std::move(values)) {
  if (!std::isfinite(a_) || !std::isfinite(b_) || !(b_ > a_)) {
    throw InvalidInput("GridFunction interval must satisfy a < b");
  }
  if (values_.size() < 3) {
    throw InvalidInput("GridFunction needs at least 2 cells (N >= 2)");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw InvalidInput("GridFunction value not finite");
  }
}

double GridFunction::sup_norm() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

void require_same_grid(const GridFunction& f, const GridFunction& g,
                       const char* what) {
  if (!f.same_grid(g)) {
    throw InvalidInput(std::string(what) + ": grid mismatch");
  }
}

double trapezoid(const GridFunction& f) {
  const auto v = f.values();
  double s = 0.5 * (v.front() + v.back());
  for (std::size_t i = 1; i + 1 < v.size(); ++i) s += v[i];
  return s * f.dx();
}

double l1_distance(const GridFunction& f, const GridFunction& g) {
  require_same_grid(f, g, "l1_distance");
  const auto a = f.values();
  const auto b = g.values();
  const std::size_t n = a.size();
  double s = 0.5 * (std::abs(a[0] - b[0]) + std::abs(a[n - 1] - b[n - 1]));
  for (std::size_t i = 1; i + 1 < n; ++i) s += std::abs(a[i] - b[i]);
  return s * f.dx();
}

double cell_integral(std::span<const double> cells, double dx) {
  double s = 0.0;
  for (double c : cells) s += c;
  return s * dx;
}

std::vector<double> cell_slopes(const GridFunction& f) {
  const auto v = f.values();
  const double inv = 1.0 / f.dx();
  std::vector<double> s(f.cells());
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = (v[i + 1] - v[i]) * inv;
  return s;
}

}  // namespace bridgesim
