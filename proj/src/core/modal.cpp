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

#include "core/modal.hpp"

#include <algorithm>

#include "core/grid.hpp"

namespace bridgesim {

void ModalState::validate() const {
  if (w.empty() || theta.empty()) {
    throw InvalidInput("ModalState needs at least one w and one theta mode");
  }
  if (w_vel.size() != w.size() || theta_vel.size() != theta.size()) {
    throw InvalidInput("ModalState velocity sizes do not match positions");
  }
  if (!finite()) throw InvalidInput("ModalState has non-finite entries");
}

bool ModalState::finite() const {
  auto ok = [](const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(),
                       [](double x) { return std::isfinite(x); });
  };
  return std::isfinite(t) && ok(w) && ok(theta) && ok(w_vel) && ok(theta_vel);
}

ModalBasis::ModalBasis(double L, std::size_t cells, std::size_t modes)
    : modes_(modes), nodes_(cells + 1), table_(modes * (cells + 1)) {
  const double norm = amplitude_scale(L);
  for (std::size_t k = 1; k <= modes; ++k) {
    double* r = table_.data() + (k - 1) * nodes_;
    for (std::size_t i = 0; i < nodes_; ++i) {
      // Exact zeros at both ends; sin(k pi) is not.
      if (i == 0 || i == cells) {
        r[i] = 0.0;
        continue;
      }
      const double arg = std::numbers::pi * static_cast<double>(k) *
                         static_cast<double>(i) / static_cast<double>(cells);
      r[i] = norm * std::sin(arg);
    }
  }
}

void ModalBasis::synthesize(std::span<const double> coeffs,
                            std::span<double> out) const {
  std::fill(out.begin(), out.end(), 0.0);
  const std::size_t m = std::min(coeffs.size(), modes_);
  for (std::size_t k = 0; k < m; ++k) {
    const double c = coeffs[k];
    if (c == 0.0) continue;
    const double* r = table_.data() + k * nodes_;
    for (std::size_t i = 0; i < nodes_; ++i) out[i] += c * r[i];
  }
}

void ModalBasis::project(std::span<const double> v,
                         std::span<double> out) const {
  const std::size_t m = std::min(out.size(), modes_);
  for (std::size_t k = 0; k < m; ++k) {
    const double* r = table_.data() + k * nodes_;
    double s = 0.0;
    for (std::size_t i = 0; i < nodes_; ++i) s += r[i] * v[i];
    out[k] = s;
  }
}

}  // namespace bridgesim
