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

#ifndef BRIDGESIM_CORE_MODAL_HPP_
#define BRIDGESIM_CORE_MODAL_HPP_

#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

namespace bridgesim {

/// Galerkin phase point. Coefficients multiply e_k(x) = sqrt(2/L) sin(k pi x / L);
/// index 0 holds mode k = 1.
struct ModalState {
  double t = 0.0;
  std::vector<double> w;
  std::vector<double> theta;
  std::vector<double> w_vel;
  std::vector<double> theta_vel;

  ModalState() = default;
  ModalState(std::size_t n_w, std::size_t n_theta)
      : w(n_w), theta(n_theta), w_vel(n_w), theta_vel(n_theta) {}

  std::size_t n_w() const { return w.size(); }
  std::size_t n_theta() const { return theta.size(); }

  /// Throws InvalidInput on inconsistent sizes or non-finite entries.
  void validate() const;
  bool finite() const;
};

/// sqrt(2/L): converts a modal coefficient to the normalized amplitude
/// (w_bar = sqrt(2/L) w_k, in meters or radians).
inline double amplitude_scale(double L) { return std::sqrt(2.0 / L); }

/// Integral of e_k over [0, L]: sqrt(2L) (1 - (-1)^k) / (k pi).
inline double mode_integral(std::size_t k, double L) {
  return k % 2 == 1 ? 2.0 * std::sqrt(2.0 * L) / (static_cast<double>(k) *
                                                   std::numbers::pi)
                    : 0.0;
}

/// Sine basis sampled on a uniform grid over [0, L].
class ModalBasis {
 public:
  ModalBasis(double L, std::size_t cells, std::size_t modes);

  std::size_t modes() const { return modes_; }
  std::size_t nodes() const { return nodes_; }
  /// e_k at all nodes, k = 1..modes.
  std::span<const double> row(std::size_t k) const {
    return {table_.data() + (k - 1) * nodes_, nodes_};
  }

  /// out_i = sum_k coeffs[k-1] e_k(x_i).
  void synthesize(std::span<const double> coeffs, std::span<double> out) const;
  /// out[k-1] = sum_i e_k(x_i) v_i.
  void project(std::span<const double> v, std::span<double> out) const;

 private:
  std::size_t modes_;
  std::size_t nodes_;
  std::vector<double> table_;
};

}  // namespace bridgesim

#endif  // BRIDGESIM_CORE_MODAL_HPP_
