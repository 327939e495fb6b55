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

// Convex envelope (greatest convex minorant) of sampled 1-D functions.
//
// The envelope of the samples {(x_i, f_i)} is the lower convex hull of the
// point set, linearly interpolated between hull vertices. Collinear middle
// points are dropped from the vertex set so every hull edge is a maximal
// affine run.

#ifndef BRIDGESIM_CORE_ENVELOPE_HPP_
#define BRIDGESIM_CORE_ENVELOPE_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "core/grid.hpp"

namespace bridgesim {

/// Closed range of node indices [first, last], first < last.
struct IndexRange {
  std::size_t first = 0;
  std::size_t last = 0;

  std::size_t cells() const { return last - first; }
  friend bool operator==(const IndexRange&, const IndexRange&) = default;
};

struct EnvelopeResult {
  GridFunction env;
  /// (env_{i+1} - env_i) / dx, one per cell.
  std::vector<double> slopes;
  /// |f_i - env_i| <= contact tolerance * scale.
  std::vector<bool> contact_mask;
  /// Lower hull vertices, increasing; always contains 0 and N.
  std::vector<std::size_t> vertices;
  /// Maximal runs of at least two cells on which env is affine (the K^i).
  std::vector<IndexRange> affine_segments;
  /// Closures [a^i, b^i] of the maximal runs of non-contact nodes: the
  /// stretches where f lies strictly above an affine envelope.
  std::vector<IndexRange> affine_intervals;
  double scale = 1.0;

  /// Total x-length of the affine intervals.
  double slack_length() const;
};

/// Monotone-chain lower hull of the points (i, v_i), i = 0..n-1. Pops on
/// cross <= 0, so collinear middle points are excluded.
void lower_hull(std::span<const double> v, std::vector<std::size_t>& vertices);

/// Lower hull restricted to the given increasing node indices.
void lower_hull(std::span<const double> v, std::span<const std::size_t> nodes,
                std::vector<std::size_t>& vertices);

/// Convex envelope of `v` restricted to `nodes` (increasing), evaluated at
/// every node in [nodes.front(), nodes.back()] by linear interpolation
/// between hull vertices. Writes into out[nodes.front() .. nodes.back()].
/// With `upper` set, computes the concave majorant instead.
void subset_envelope(std::span<const double> v,
                     std::span<const std::size_t> nodes, bool upper,
                     std::span<double> out);

EnvelopeResult convex_envelope(const GridFunction& f,
                               const ToleranceConfig& tol = {});

/// Tf = (F**)' with F the trapezoid primitive of f, F(a) = 0. Cell slopes
/// are assigned to nodes by averaging neighbours; endpoints copy their cell.
GridFunction operator_T(const GridFunction& f, const ToleranceConfig& tol = {});

/// Cell-wise slopes of F** (the piecewise-constant form of Tf).
std::vector<double> operator_T_cells(const GridFunction& f,
                                     const ToleranceConfig& tol = {});

/// Nodal values from per-cell values, same rule as operator_T.
std::vector<double> cells_to_nodes(std::span<const double> cells);

/// True iff no affine segment of `env` has a contact node in its interior.
bool check_noflat(const GridFunction& f, const EnvelopeResult& env);
bool check_noflat(const EnvelopeResult& env);

}  // namespace bridgesim

#endif  // BRIDGESIM_CORE_ENVELOPE_HPP_
