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

#include "core/bridge_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace bridgesim {

void BridgeParams::validate() const {
  const std::pair<const char*, double> positive[] = {
      {"E", E},   {"E_c", E_c}, {"G", G}, {"L", L}, {"ell", ell},
      {"f_sag", f_sag}, {"I", I}, {"K", K}, {"J", J}, {"M", M}};
  for (const auto& [name, v] : positive) {
    if (!std::isfinite(v) || !(v > 0.0)) {
      throw InvalidInput(std::string("bridge.") + name + " must be positive");
    }
  }
  // Zero H and A switch the cables off.
  const std::pair<const char*, double> non_negative[] = {{"A", A}, {"H", H}, {"g", g}};
  for (const auto& [name, v] : non_negative) {
    if (!std::isfinite(v) || v < 0.0) {
      throw InvalidInput(std::string("bridge.") + name + " must be non-negative");
    }
  }
  if (!std::isfinite(y0) || y0 < 0.0) {
    throw InvalidInput("bridge.y0 must be non-negative");
  }
}

bool BridgeParams::sag_ratio_in_band() const {
  const double r = f_sag / L;
  return r >= 1.0 / 12.0 && r <= 1.0 / 8.0;
}

std::string BridgeParams::sag_ratio_warning() const {
  if (sag_ratio_in_band()) return {};
  std::ostringstream os;
  os << "sag/span ratio " << f_sag / L << " outside [1/12, 1/8]";
  return os.str();
}

double xi_bar_closed_form(double L, double f_sag) {
  const double a = 4.0 * f_sag / L;
  if (a == 0.0) return 1.0;
  // (1/L) int_0^L sqrt(1 + yhat'^2) dx with yhat' running over [-a, a].
  return 0.5 * (std::sqrt(1.0 + a * a) + std::asinh(a) / a);
}

double xi_bar_quadrature(double L, double f_sag, std::size_t panels) {
  if (panels % 2 == 1) ++panels;
  const double h = L / static_cast<double>(panels);
  auto density = [&](double x) {
    const double d = 8.0 * f_sag * x / (L * L) - 4.0 * f_sag / L;
    return std::sqrt(1.0 + d * d);
  };
  double s = density(0.0) + density(L);
  for (std::size_t i = 1; i < panels; ++i) {
    s += (i % 2 == 1 ? 4.0 : 2.0) * density(h * static_cast<double>(i));
  }
  return s * h / 3.0 / L;
}

CableGeometry make_geometry(const BridgeParams& p, std::size_t cells) {
  p.validate();
  const double c2 = 4.0 * p.f_sag / (p.L * p.L);
  const double c1 = 4.0 * p.f_sag / p.L;
  auto profile = GridFunction::sample(
      0.0, p.L, cells, [&](double x) { return c2 * x * x - c1 * x; });
  std::vector<double> v = profile.vec();
  v.front() = 0.0;
  v.back() = 0.0;
  CableGeometry g{profile.with_values(std::move(v)), 1.0, 1.0, 0.0};
  g.xi_bar = xi_bar_closed_form(p.L, p.f_sag);
  g.xi_max = std::sqrt(1.0 + c1 * c1);
  g.L_c = p.L * g.xi_bar;
  return g;
}

GridFunction cable_constraint(const GridFunction& w, const GridFunction& theta,
                              const CableGeometry& geom, const BridgeParams& p,
                              Side side) {
  require_same_grid(w, geom.rest_profile, "cable_constraint");
  require_same_grid(theta, geom.rest_profile, "cable_constraint");
  const double sgn = side == Side::Alpha ? 1.0 : -1.0;
  std::vector<double> q(w.size());
  for (std::size_t i = 0; i < q.size(); ++i) {
    q[i] = geom.rest_profile[i] - (w[i] + sgn * p.ell * std::sin(theta[i]));
  }
  return w.with_values(std::move(q));
}

CableEval evaluate_cable(std::span<const double> q, double dx,
                         const CableGeometry& geom, const BridgeParams& p,
                         ModelVariant variant, std::vector<std::size_t>& hull,
                         std::span<double> h_cells) {
  CableEval out;
  const double inv_dx = 1.0 / dx;
  const std::size_t cells = q.size() - 1;
  if (variant == ModelVariant::Convexified) {
    lower_hull(q, hull);
    double len = 0.0;
    for (std::size_t e = 0; e + 1 < hull.size(); ++e) {
      const std::size_t a = hull[e];
      const std::size_t b = hull[e + 1];
      const double run = static_cast<double>(b - a);
      const double s = (q[b] - q[a]) / run * inv_dx;
      len += run * gamma_density(s);
    }
    out.arclength = len * dx;
  } else {
    double len = 0.0;
    for (std::size_t i = 0; i < cells; ++i) {
      len += gamma_density((q[i + 1] - q[i]) * inv_dx);
    }
    out.arclength = len * dx;
  }
  out.gamma = out.arclength - geom.L_c;
  out.tension = p.H * geom.xi_bar + p.A * p.E_c / geom.L_c * out.gamma;

  if (!h_cells.empty()) {
    if (variant == ModelVariant::Convexified) {
      for (std::size_t e = 0; e + 1 < hull.size(); ++e) {
        const std::size_t a = hull[e];
        const std::size_t b = hull[e + 1];
        const double s = (q[b] - q[a]) / static_cast<double>(b - a) * inv_dx;
        const double h = out.tension * chi(s);
        for (std::size_t i = a; i < b; ++i) h_cells[i] = h;
      }
    } else {
      for (std::size_t i = 0; i < cells; ++i) {
        h_cells[i] = out.tension * chi((q[i + 1] - q[i]) * inv_dx);
      }
    }
  }
  return out;
}

double gamma_length(const GridFunction& u, const CableGeometry& geom,
                    const ToleranceConfig& tol) {
  require_same_grid(u, geom.rest_profile, "gamma_length");
  std::vector<double> q(u.size());
  for (std::size_t i = 0; i < q.size(); ++i) q[i] = geom.rest_profile[i] - u[i];
  const auto env = convex_envelope(u.with_values(std::move(q)), tol);
  double len = 0.0;
  for (double s : env.slopes) len += gamma_density(s);
  return len * u.dx() - geom.L_c;
}

std::vector<double> h_force_cells(const GridFunction& w,
                                  const GridFunction& theta,
                                  const CableGeometry& geom,
                                  const BridgeParams& p, Side side,
                                  ModelVariant variant) {
  const auto q = cable_constraint(w, theta, geom, p, side);
  std::vector<double> h(q.cells());
  std::vector<std::size_t> hull;
  evaluate_cable(q.values(), q.dx(), geom, p, variant, hull, h);
  return h;
}

GridFunction h_force(const GridFunction& w, const GridFunction& theta,
                     const CableGeometry& geom, const BridgeParams& p, Side side,
                     ModelVariant variant) {
  return w.with_values(
      cells_to_nodes(h_force_cells(w, theta, geom, p, side, variant)));
}

double cable_energy(const GridFunction& w, const GridFunction& theta,
                    const CableGeometry& geom, const BridgeParams& p,
                    ModelVariant variant) {
  std::vector<std::size_t> hull;
  const auto qa = cable_constraint(w, theta, geom, p, Side::Alpha);
  const auto qb = cable_constraint(w, theta, geom, p, Side::Beta);
  const auto a = evaluate_cable(qa.values(), qa.dx(), geom, p, variant, hull, {});
  const auto b = evaluate_cable(qb.values(), qb.dx(), geom, p, variant, hull, {});
  return p.H * geom.xi_bar * (a.arclength + b.arclength - 2.0 * geom.L_c) +
         p.A * p.E_c / (2.0 * geom.L_c) * (a.gamma * a.gamma + b.gamma * b.gamma);
}

EnergyBreakdown modal_energy_terms(const ModalState& s, const BridgeParams& p) {
  EnergyBreakdown e;
  const double pi_L = std::numbers::pi / p.L;
  for (std::size_t k = 1; k <= s.n_w(); ++k) {
    const double kk = static_cast<double>(k) * pi_L;
    const double wk = s.w[k - 1];
    e.kinetic += 0.5 * p.M * s.w_vel[k - 1] * s.w_vel[k - 1];
    e.deck_elastic += 0.5 * p.E * p.I * kk * kk * kk * kk * wk * wk;
    e.gravity -= p.M * p.g * wk * mode_integral(k, p.L);
  }
  for (std::size_t k = 1; k <= s.n_theta(); ++k) {
    const double kk = static_cast<double>(k) * pi_L;
    const double tk = s.theta[k - 1];
    e.kinetic += p.M * p.ell * p.ell / 6.0 * s.theta_vel[k - 1] * s.theta_vel[k - 1];
    e.deck_elastic += 0.5 * p.E * p.J * kk * kk * kk * kk * tk * tk +
                      0.5 * p.G * p.K * kk * kk * tk * tk;
  }
  return e;
}

EnergyBreakdown energy_breakdown(const ModalState& s, const CableGeometry& geom,
                                 const BridgeParams& p, ModelVariant variant) {
  s.validate();
  const auto& grid = geom.rest_profile;
  const ModalBasis basis(p.L, grid.cells(), std::max(s.n_w(), s.n_theta()));
  std::vector<double> w(grid.size());
  std::vector<double> th(grid.size());
  basis.synthesize(s.w, w);
  basis.synthesize(s.theta, th);
  EnergyBreakdown e = modal_energy_terms(s, p);
  e.cable = cable_energy(grid.with_values(std::move(w)),
                         grid.with_values(std::move(th)), geom, p, variant);
  return e;
}

double total_energy(const ModalState& s, const CableGeometry& geom,
                    const BridgeParams& p, ModelVariant variant) {
  return energy_breakdown(s, geom, p, variant).total();
}

std::pair<double, double> slackening_fraction(const EnvelopeResult& env_alpha,
                                              const EnvelopeResult& env_beta,
                                              double L) {
  return {env_alpha.slack_length() / L, env_beta.slack_length() / L};
}

}  // namespace bridgesim
