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

#include "core/envelope.hpp"

#include <algorithm>
#include <cmath>

namespace bridgesim {
namespace {

// Cross product of (A - O) x (B - O) with abscissae given as node indices.
inline double cross(std::size_t o, std::size_t a, std::size_t b, double vo,
                    double va, double vb) {
  const double ax = static_cast<double>(a) - static_cast<double>(o);
  const double bx = static_cast<double>(b) - static_cast<double>(o);
  return ax * (vb - vo) - (va - vo) * bx;
}

template <typename NodeAt>
void monotone_chain(std::size_t count, NodeAt node_at,
                    std::span<const double> v,
                    std::vector<std::size_t>& hull) {
  hull.clear();
  for (std::size_t k = 0; k < count; ++k) {
    const std::size_t i = node_at(k);
    while (hull.size() >= 2) {
      const std::size_t o = hull[hull.size() - 2];
      const std::size_t a = hull.back();
      if (cross(o, a, i, v[o], v[a], v[i]) <= 0.0) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(i);
  }
}

}  // namespace

double EnvelopeResult::slack_length() const {
  std::size_t cells = 0;
  for (const auto& r : affine_intervals) cells += r.cells();
  return static_cast<double>(cells) * env.dx();
}

void lower_hull(std::span<const double> v,
                std::vector<std::size_t>& vertices) {
  monotone_chain(v.size(), [](std::size_t k) { return k; }, v, vertices);
}

void lower_hull(std::span<const double> v, std::span<const std::size_t> nodes,
                std::vector<std::size_t>& vertices) {
  monotone_chain(nodes.size(), [&](std::size_t k) { return nodes[k]; }, v,
                 vertices);
}

void subset_envelope(std::span<const double> v,
                     std::span<const std::size_t> nodes, bool upper,
                     std::span<double> out) {
  if (nodes.empty()) return;
  if (nodes.size() == 1) {
    out[nodes.front()] = v[nodes.front()];
    return;
  }
  std::vector<double> work;
  std::span<const double> src = v;
  if (upper) {
    work.assign(v.begin(), v.end());
    for (double& w : work) w = -w;
    src = work;
  }
  std::vector<std::size_t> hull;
  lower_hull(src, nodes, hull);
  for (std::size_t e = 0; e + 1 < hull.size(); ++e) {
    const std::size_t p = hull[e];
    const std::size_t q = hull[e + 1];
    const double vp = v[p];
    const double step = (v[q] - vp) / static_cast<double>(q - p);
    for (std::size_t i = p; i < q; ++i) {
      out[i] = vp + step * static_cast<double>(i - p);
    }
  }
  out[hull.back()] = v[hull.back()];
}

EnvelopeResult convex_envelope(const GridFunction& f,
                               const ToleranceConfig& tol) {
  const auto v = f.values();
  const std::size_t n = f.cells();
  const double dx = f.dx();

  std::vector<std::size_t> hull;
  lower_hull(v, hull);

  std::vector<double> env(n + 1);
  std::vector<double> slopes(n);
  std::vector<double> edge_slope(hull.size() - 1);
  double max_slope = 0.0;
  for (std::size_t e = 0; e + 1 < hull.size(); ++e) {
    const std::size_t p = hull[e];
    const std::size_t q = hull[e + 1];
    const double step = (v[q] - v[p]) / static_cast<double>(q - p);
    edge_slope[e] = step / dx;
    max_slope = std::max(max_slope, std::abs(edge_slope[e]));
    for (std::size_t i = p; i < q; ++i) {
      env[i] = v[p] + step * static_cast<double>(i - p);
      slopes[i] = edge_slope[e];
    }
  }
  env[n] = v[n];

  const double scale = std::max(1.0, f.sup_norm());
  const double contact_tol = tol.contact * scale;
  std::vector<bool> contact(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    contact[i] = std::abs(v[i] - env[i]) <= contact_tol;
  }
  for (std::size_t h : hull) contact[h] = true;

  // Hull edges with equal slopes (within tolerance) belong to one affine run.
  std::vector<IndexRange> segments;
  const double slope_tol = tol.slope * std::max(1.0, max_slope);
  std::size_t e = 0;
  while (e + 1 < hull.size()) {
    std::size_t last = e + 1;
    while (last + 1 < hull.size() &&
           std::abs(edge_slope[last] - edge_slope[e]) <= slope_tol) {
      ++last;
    }
    if (hull[last] - hull[e] >= 2) segments.push_back({hull[e], hull[last]});
    e = last;
  }

  std::vector<IndexRange> intervals;
  std::size_t i = 1;
  while (i < n) {
    if (contact[i]) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < n && !contact[j + 1]) ++j;
    intervals.push_back({i - 1, j + 1});
    i = j + 1;
  }

  EnvelopeResult r{f.with_values(std::move(env)),
                   std::move(slopes),
                   std::move(contact),
                   std::move(hull),
                   std::move(segments),
                   std::move(intervals),
                   scale};
  return r;
}

std::vector<double> cells_to_nodes(std::span<const double> cells) {
  const std::size_t n = cells.size();
  std::vector<double> nodes(n + 1);
  nodes[0] = cells[0];
  nodes[n] = cells[n - 1];
  for (std::size_t i = 1; i < n; ++i) nodes[i] = 0.5 * (cells[i - 1] + cells[i]);
  return nodes;
}

std::vector<double> operator_T_cells(const GridFunction& f,
                                     const ToleranceConfig& tol) {
  const auto v = f.values();
  const double half_dx = 0.5 * f.dx();
  std::vector<double> primitive(v.size());
  primitive[0] = 0.0;
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    primitive[i + 1] = primitive[i] + half_dx * (v[i] + v[i + 1]);
  }
  return convex_envelope(f.with_values(std::move(primitive)), tol).slopes;
}

GridFunction operator_T(const GridFunction& f, const ToleranceConfig& tol) {
  return f.with_values(cells_to_nodes(operator_T_cells(f, tol)));
}

bool check_noflat(const GridFunction& f, const EnvelopeResult& env) {
  require_same_grid(f, env.env, "check_noflat");
  return check_noflat(env);
}

bool check_noflat(const EnvelopeResult& env) {
  for (const auto& seg : env.affine_segments) {
    for (std::size_t i = seg.first + 1; i < seg.last; ++i) {
      if (env.contact_mask[i]) return false;
    }
  }
  return true;
}

}  // namespace bridgesim
