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

#include "core/variation.hpp"

#include <cmath>

namespace bridgesim {
namespace {

void require_compact_support(const GridFunction& phi, const char* what) {
  const double tol = 1e-12 * std::max(1.0, phi.sup_norm());
  if (std::abs(phi[0]) > tol || std::abs(phi[phi.cells()]) > tol) {
    throw InvalidInput(std::string(what) +
                       ": test function must vanish at both ends");
  }
}

VariationField make_field(const GridFunction& grid, std::vector<double> values,
                          VariationKind kind) {
  GridFunction g = grid.with_values(std::move(values));
  std::vector<double> d = cell_slopes(g);
  return VariationField{std::move(g), std::move(d), kind};
}

std::vector<double> one_sided(std::span<const double> seed,
                              const EnvelopeResult& env, Sign sign) {
  std::vector<double> out(seed.begin(), seed.end());
  const std::size_t n = env.env.cells();
  std::vector<std::size_t> nodes;
  for (const auto& seg : env.affine_segments) {
    nodes.clear();
    for (std::size_t i = seg.first; i <= seg.last; ++i) {
      if (env.contact_mask[i] || i == 0 || i == n) nodes.push_back(i);
    }
    subset_envelope(seed, nodes, sign == Sign::Minus, out);
  }
  return out;
}

}  // namespace

std::vector<double> interpolate_across_intervals(std::span<const double> seed,
                                                 const EnvelopeResult& env) {
  std::vector<double> out(seed.begin(), seed.end());
  for (const auto& r : env.affine_intervals) {
    const double lo = seed[r.first];
    const double step = (seed[r.last] - lo) / static_cast<double>(r.cells());
    for (std::size_t i = r.first + 1; i < r.last; ++i) {
      out[i] = lo + step * static_cast<double>(i - r.first);
    }
  }
  return out;
}

VariationField j_phi(const GridFunction& f, const GridFunction& phi,
                     const EnvelopeResult& env) {
  require_same_grid(f, phi, "j_phi");
  require_compact_support(phi, "j_phi");
  if (!check_noflat(f, env)) {
    throw NoflatViolation("j_phi: envelope is flat against f; use j_phi_pm");
  }
  return make_field(phi, interpolate_across_intervals(phi.values(), env),
                    VariationKind::J);
}

VariationField j_phi_pm(const GridFunction& f, const GridFunction& phi,
                        const EnvelopeResult& env, Sign sign) {
  require_same_grid(f, phi, "j_phi_pm");
  require_same_grid(f, env.env, "j_phi_pm");
  require_compact_support(phi, "j_phi_pm");
  return make_field(phi, one_sided(phi.values(), env, sign),
                    sign == Sign::Plus ? VariationKind::JPlus
                                       : VariationKind::JMinus);
}

VariationField g_u_phi(const GridFunction& u, const GridFunction& phi,
                       const std::function<double(double)>& lambda_prime,
                       const EnvelopeResult& env_of_f) {
  require_same_grid(u, phi, "g_u_phi");
  require_same_grid(u, env_of_f.env, "g_u_phi");
  require_compact_support(phi, "g_u_phi");
  if (!check_noflat(env_of_f)) {
    throw NoflatViolation("g_u_phi: envelope is flat against Lambda(u)");
  }
  std::vector<double> seed(u.size());
  for (std::size_t i = 0; i < seed.size(); ++i) {
    seed[i] = phi[i] * lambda_prime(u[i]);
  }
  return make_field(phi, interpolate_across_intervals(seed, env_of_f),
                    VariationKind::G);
}

VariationField g_theta_psi_pm(const GridFunction& theta,
                              const GridFunction& psi,
                              const EnvelopeResult& env, Sign sign) {
  require_same_grid(theta, psi, "g_theta_psi_pm");
  require_same_grid(theta, env.env, "g_theta_psi_pm");
  require_compact_support(psi, "g_theta_psi_pm");
  std::vector<double> seed(theta.size());
  for (std::size_t i = 0; i < seed.size(); ++i) {
    seed[i] = psi[i] * std::cos(theta[i]);
  }
  return make_field(psi, one_sided(seed, env, sign),
                    sign == Sign::Plus ? VariationKind::GPlus
                                       : VariationKind::GMinus);
}

std::vector<double> directional_quotient(const GridFunction& f,
                                         const GridFunction& phi,
                                         const std::vector<double>& s_values,
                                         const ToleranceConfig& tol) {
  require_same_grid(f, phi, "directional_quotient");
  const double base = trapezoid(convex_envelope(f, tol).env);
  std::vector<double> out;
  out.reserve(s_values.size());
  std::vector<double> moved(f.size());
  for (double s : s_values) {
    if (s == 0.0) throw InvalidInput("directional_quotient: s must be nonzero");
    for (std::size_t i = 0; i < moved.size(); ++i) moved[i] = f[i] + s * phi[i];
    const double moved_int =
        trapezoid(convex_envelope(f.with_values(moved), tol).env);
    out.push_back((moved_int - base) / s);
  }
  return out;
}

double extrapolate_to_zero(const std::vector<double>& s_values,
                           const std::vector<double>& quotients) {
  if (s_values.size() != quotients.size() || s_values.empty()) {
    throw InvalidInput("extrapolate_to_zero: size mismatch");
  }
  if (s_values.size() == 1) return quotients.front();
  const double n = static_cast<double>(s_values.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < s_values.size(); ++i) {
    sx += s_values[i];
    sy += quotients[i];
    sxx += s_values[i] * s_values[i];
    sxy += s_values[i] * quotients[i];
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) return sy / n;
  const double slope = (n * sxy - sx * sy) / denom;
  return (sy - slope * sx) / n;
}

double bump(double x) {
  if (std::abs(x) >= 1.0) return 0.0;
  return std::exp(1.0 / (x * x - 1.0));
}

double bump_derivative(double x) {
  if (std::abs(x) >= 1.0) return 0.0;
  const double d = x * x - 1.0;
  return bump(x) * (-2.0 * x / (d * d));
}

double flat_envelope_tangency() {
  // Line through (2, 0) tangent to the bump at zeta.
  auto residual = [](double z) {
    return bump_derivative(z) * (z - 2.0) - bump(z);
  };
  double lo = 0.0;
  double hi = 0.5;
  while (hi - lo > 1e-10) {
    const double mid = 0.5 * (lo + hi);
    if (residual(mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

FlatEnvelopeReport flat_envelope_example(std::size_t cells) {
  FlatEnvelopeReport r;
  r.zeta_root = flat_envelope_tangency();
  r.tangency_residual = std::abs(bump_derivative(r.zeta_root) *
                                     (r.zeta_root - 2.0) -
                                 bump(r.zeta_root));

  const auto neg_phi =
      GridFunction::sample(-2.0, 2.0, cells, [](double x) { return -bump(x); });
  const auto env = convex_envelope(neg_phi);
  for (const auto& iv : env.affine_intervals) {
    if (iv.last == cells) r.zeta_envelope = neg_phi.x(iv.first);
  }
  r.concave_majorant_integral = -trapezoid(env.env);

  const auto f =
      GridFunction::sample(-2.0, 2.0, cells, [](double x) { return 0.3 * x + 0.5; });
  const auto phi = GridFunction::sample(-2.0, 2.0, cells, bump);
  const std::vector<double> s_pos{1e-4, 1e-5, 1e-6};
  const std::vector<double> s_neg{-1e-4, -1e-5, -1e-6};
  r.right_limit = extrapolate_to_zero(s_pos, directional_quotient(f, phi, s_pos));
  r.left_limit = extrapolate_to_zero(s_neg, directional_quotient(f, phi, s_neg));
  return r;
}

}  // namespace bridgesim
