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

#ifndef BRIDGESIM_CORE_GRID_HPP_
#define BRIDGESIM_CORE_GRID_HPP_

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace bridgesim {

/// Rejected input: bad grid, bad configuration value, precondition failure.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A non-finite value appeared during time integration.
class NumericalAbort : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Tolerances used to classify contact nodes and equal slopes. Both are
/// relative: contact uses scale = max(1, ||f||_inf), slopes use
/// max(1, max |slope|).
struct ToleranceConfig {
  double contact = 1e-9;
  double slope = 1e-9;
};

/// A real function sampled at N + 1 uniform abscissae x_i = a + i (b - a) / N.
class GridFunction {
 public:
  GridFunction(double a, double b, std::vector<double> values);

  template <typename F>
  static GridFunction sample(double a, double b, std::size_t cells, F&& f) {
    if (cells < 2) throw InvalidInput("GridFunction needs at least 2 cells");
    std::vector<double> v(cells + 1);
    const double h = (b - a) / static_cast<double>(cells);
    for (std::size_t i = 0; i <= cells; ++i) {
      v[i] = f(a + h * static_cast<double>(i));
    }
    return GridFunction(a, b, std::move(v));
  }

  /// Same grid, new values.
  GridFunction with_values(std::vector<double> values) const {
    return GridFunction(a_, b_, std::move(values));
  }

  double a() const { return a_; }
  double b() const { return b_; }
  std::size_t cells() const { return values_.size() - 1; }
  std::size_t size() const { return values_.size(); }
  double dx() const { return (b_ - a_) / static_cast<double>(cells()); }
  double x(std::size_t i) const { return a_ + dx() * static_cast<double>(i); }

  double operator[](std::size_t i) const { return values_[i]; }
  std::span<const double> values() const { return values_; }
  const std::vector<double>& vec() const { return values_; }

  bool same_grid(const GridFunction& other) const {
    return a_ == other.a_ && b_ == other.b_ && size() == other.size();
  }

  double sup_norm() const;

 private:
  double a_;
  double b_;
  std::vector<double> values_;
};

void require_same_grid(const GridFunction& f, const GridFunction& g,
                       const char* what);

/// Composite trapezoid rule.
double trapezoid(const GridFunction& f);

/// Trapezoid rule of |f - g|.
double l1_distance(const GridFunction& f, const GridFunction& g);

/// Integral of a piecewise-constant cell field, sum_c v_c * dx.
double cell_integral(std::span<const double> cells, double dx);

/// Per-cell difference quotients (f_{i+1} - f_i) / dx.
std::vector<double> cell_slopes(const GridFunction& f);

}  // namespace bridgesim

#endif  // BRIDGESIM_CORE_GRID_HPP_
