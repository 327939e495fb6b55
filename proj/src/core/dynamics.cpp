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

#include "core/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "core/variation.hpp"

namespace bridgesim {

double RunSummary::energy_drift() const {
  if (energy0 == 0.0) return energy_max - energy_min == 0.0 ? 0.0 : INFINITY;
  return std::abs(energy_max - energy_min) / std::abs(energy0);
}

std::size_t RunSummary::dominant_torsional_mode() const {
  if (max_abs_theta_bar.empty()) return 0;
  const auto it = std::max_element(max_abs_theta_bar.begin(), max_abs_theta_bar.end());
  return static_cast<std::size_t>(it - max_abs_theta_bar.begin()) + 1;
}

GalerkinSystem::GalerkinSystem(const BridgeParams& p, std::size_t cells,
                               std::size_t n_w, std::size_t n_theta,
                               DynamicsOptions opts)
    : params_(p),
      geom_(make_geometry(p, cells)),
      opts_(opts),
      cells_(cells),
      n_w_(n_w),
      n_theta_(n_theta),
      basis_(p.L, cells, std::max(n_w, n_theta)) {
  if (n_w == 0 || n_theta == 0) {
    throw InvalidInput("need at least one longitudinal and one torsional mode");
  }
  const double pi_L = std::numbers::pi / p.L;
  for (std::size_t k = 1; k <= n_w; ++k) {
    const double kk = static_cast<double>(k) * pi_L;
    stiff_w_.push_back(p.E * p.I * kk * kk * kk * kk);
    gravity_.push_back(p.M * p.g * mode_integral(k, p.L));
  }
  for (std::size_t k = 1; k <= n_theta; ++k) {
    const double kk = static_cast<double>(k) * pi_L;
    stiff_theta_.push_back((p.E * p.J * kk * kk * kk * kk + p.G * p.K * kk * kk) / p.ell);
  }
  const std::size_t nodes = cells + 1;
  for (auto* v : {&w_nodes_, &th_nodes_, &cos_th_, &qa_, &qb_, &vw_, &vth_}) {
    v->assign(nodes, 0.0);
  }
  ha_.assign(cells, 0.0);
  hb_.assign(cells, 0.0);
  hull_.reserve(nodes);
}

void GalerkinSystem::build_constraints(std::span<const double> w,
                                       std::span<const double> theta) {
  basis_.synthesize(w, w_nodes_);
  basis_.synthesize(theta, th_nodes_);
  const auto yhat = geom_.rest_profile.values();
  const double ell = params_.ell;
  for (std::size_t i = 0; i <= cells_; ++i) {
    const double th = th_nodes_[i];
    const double lift = ell * std::sin(th);
    cos_th_[i] = std::cos(th);
    const double base = yhat[i] - w_nodes_[i];
    qa_[i] = base - lift;
    qb_[i] = base + lift;
  }
}

void GalerkinSystem::compute_loads(std::span<const double> w,
                                   std::span<const double> theta,
                                   std::span<double> rw,
                                   std::span<double> rtheta) {
  build_constraints(w, theta);
  const double dx = geom_.rest_profile.dx();
  evaluate_cable(qa_, dx, geom_, params_, opts_.variant, hull_, ha_);
  evaluate_cable(qb_, dx, geom_, params_, opts_.variant, hull_, hb_);

  if (opts_.route == RhsRoute::Explicit) {
    explicit_loads(rw, rtheta);
    return;
  }
  // sum_c h_c (phi_{c+1} - phi_c) = sum_i phi_i (h_{i-1} - h_i), phi_0 = phi_N = 0.
  vw_[0] = vw_[cells_] = 0.0;
  vth_[0] = vth_[cells_] = 0.0;
  for (std::size_t i = 1; i < cells_; ++i) {
    const double sum_prev = ha_[i - 1] + hb_[i - 1];
    const double sum_here = ha_[i] + hb_[i];
    const double dif_prev = ha_[i - 1] - hb_[i - 1];
    const double dif_here = ha_[i] - hb_[i];
    vw_[i] = sum_prev - sum_here;
    vth_[i] = cos_th_[i] * (dif_prev - dif_here);
  }
  basis_.project(vw_, rw);
  basis_.project(vth_, rtheta);
}

void GalerkinSystem::explicit_loads(std::span<double> rw,
                                    std::span<double> rtheta) {
  const auto& grid = geom_.rest_profile;
  const GridFunction theta_f = grid.with_values(th_nodes_);
  std::vector<double> ones_slopes;

  auto field_load = [&](const VariationField& field, const std::vector<double>& h) {
    double s = 0.0;
    const auto v = field.values.values();
    for (std::size_t c = 0; c < cells_; ++c) s += h[c] * (v[c + 1] - v[c]);
    return s;
  };

  std::optional<EnvelopeResult> env_a;
  std::optional<EnvelopeResult> env_b;
  if (opts_.variant == ModelVariant::Convexified) {
    env_a = convex_envelope(grid.with_values(qa_), opts_.tol);
    env_b = convex_envelope(grid.with_values(qb_), opts_.tol);
  }
  auto j_field = [&](const GridFunction& phi, const std::optional<EnvelopeResult>& env,
                     const std::vector<double>& q) {
    if (!env) return VariationField{phi, cell_slopes(phi), VariationKind::J};
    const GridFunction f = grid.with_values(q);
    if (check_noflat(*env)) return j_phi(f, phi, *env);
    return j_phi_pm(f, phi, *env, Sign::Plus);
  };
  auto g_field = [&](const GridFunction& psi, const std::optional<EnvelopeResult>& env) {
    if (!env) {
      std::vector<double> seed(psi.size());
      for (std::size_t i = 0; i < seed.size(); ++i) seed[i] = psi[i] * cos_th_[i];
      auto g = grid.with_values(std::move(seed));
      auto d = cell_slopes(g);
      return VariationField{std::move(g), std::move(d), VariationKind::G};
    }
    if (check_noflat(*env)) {
      return g_u_phi(theta_f, psi, [](double t) { return std::cos(t); }, *env);
    }
    return g_theta_psi_pm(theta_f, psi, *env, Sign::Plus);
  };

  const auto row_fn = [&](std::size_t k) {
    const auto r = basis_.row(k);
    return grid.with_values(std::vector<double>(r.begin(), r.end()));
  };
  for (std::size_t k = 1; k <= n_w_; ++k) {
    const auto phi = row_fn(k);
    rw[k - 1] = field_load(j_field(phi, env_a, qa_), ha_) +
                field_load(j_field(phi, env_b, qb_), hb_);
  }
  for (std::size_t k = 1; k <= n_theta_; ++k) {
    const auto psi = row_fn(k);
    rtheta[k - 1] = field_load(g_field(psi, env_a), ha_) -
                    field_load(g_field(psi, env_b), hb_);
  }
}

void GalerkinSystem::accelerations(std::span<const double> w,
                                   std::span<const double> theta,
                                   std::span<double> w_acc,
                                   std::span<double> theta_acc) {
  compute_loads(w, theta, w_acc, theta_acc);
  const double inv_m = 1.0 / params_.M;
  const double inv_mt = 3.0 / (params_.M * params_.ell);
  bool finite = true;
  for (std::size_t k = 0; k < n_w_; ++k) {
    w_acc[k] = (w_acc[k] - stiff_w_[k] * w[k] + gravity_[k]) * inv_m;
    finite = finite && std::isfinite(w_acc[k]);
  }
  for (std::size_t k = 0; k < n_theta_; ++k) {
    theta_acc[k] = (theta_acc[k] - stiff_theta_[k] * theta[k]) * inv_mt;
    finite = finite && std::isfinite(theta_acc[k]);
  }
  if (!finite) abort_nonfinite(w, theta);
}

void GalerkinSystem::abort_nonfinite(std::span<const double> w,
                                     std::span<const double> theta) const {
  std::ostringstream os;
  os.precision(17);
  os << "non-finite acceleration; w = [";
  for (double v : w) os << ' ' << v;
  os << " ], theta = [";
  for (double v : theta) os << ' ' << v;
  os << " ]";
  throw NumericalAbort(os.str());
}

Accelerations GalerkinSystem::assemble_rhs(const ModalState& s) {
  s.validate();
  Accelerations a{std::vector<double>(n_w_), std::vector<double>(n_theta_)};
  accelerations(s.w, s.theta, a.w, a.theta);
  return a;
}

std::pair<std::vector<double>, std::vector<double>> GalerkinSystem::cable_loads(
    const ModalState& s) {
  std::vector<double> rw(n_w_);
  std::vector<double> rt(n_theta_);
  compute_loads(s.w, s.theta, rw, rt);
  return {rw, rt};
}

ModalState GalerkinSystem::step(const ModalState& s, double dt) {
  if (!(dt > 0.0)) throw InvalidInput("dt must be positive");
  if (s.n_w() != n_w_ || s.n_theta() != n_theta_) {
    throw InvalidInput("state mode counts do not match the system");
  }
  ModalState out = opts_.integrator == Integrator::RK4 ? step_rk4(s, dt)
                                                       : step_verlet(s, dt);
  if (!out.finite()) {
    throw NumericalAbort("non-finite state after step at t = " +
                         std::to_string(s.t));
  }
  return out;
}

ModalState GalerkinSystem::step_rk4(const ModalState& s, double dt) {
  const std::size_t nw = n_w_;
  const std::size_t nt = n_theta_;
  std::vector<double> kw[4], kt[4], kvw[4], kvt[4];
  std::vector<double> w(nw), th(nt);
  const double c[4] = {0.0, 0.5, 0.5, 1.0};
  for (int stage = 0; stage < 4; ++stage) {
    kvw[stage].resize(nw);
    kvt[stage].resize(nt);
    kw[stage].resize(nw);
    kt[stage].resize(nt);
    const double h = c[stage] * dt;
    for (std::size_t k = 0; k < nw; ++k) {
      kw[stage][k] = s.w_vel[k] + (stage ? h * kvw[stage - 1][k] : 0.0);
      w[k] = s.w[k] + (stage ? h * kw[stage - 1][k] : 0.0);
    }
    for (std::size_t k = 0; k < nt; ++k) {
      kt[stage][k] = s.theta_vel[k] + (stage ? h * kvt[stage - 1][k] : 0.0);
      th[k] = s.theta[k] + (stage ? h * kt[stage - 1][k] : 0.0);
    }
    accelerations(w, th, kvw[stage], kvt[stage]);
  }
  ModalState out = s;
  out.t = s.t + dt;
  const double sixth = dt / 6.0;
  for (std::size_t k = 0; k < nw; ++k) {
    out.w[k] += sixth * (kw[0][k] + 2 * kw[1][k] + 2 * kw[2][k] + kw[3][k]);
    out.w_vel[k] += sixth * (kvw[0][k] + 2 * kvw[1][k] + 2 * kvw[2][k] + kvw[3][k]);
  }
  for (std::size_t k = 0; k < nt; ++k) {
    out.theta[k] += sixth * (kt[0][k] + 2 * kt[1][k] + 2 * kt[2][k] + kt[3][k]);
    out.theta_vel[k] += sixth * (kvt[0][k] + 2 * kvt[1][k] + 2 * kvt[2][k] + kvt[3][k]);
  }
  return out;
}

ModalState GalerkinSystem::step_verlet(const ModalState& s, double dt) {
  std::vector<double> aw(n_w_), at(n_theta_);
  accelerations(s.w, s.theta, aw, at);
  ModalState out = s;
  out.t = s.t + dt;
  const double half = 0.5 * dt;
  for (std::size_t k = 0; k < n_w_; ++k) {
    out.w_vel[k] += half * aw[k];
    out.w[k] += dt * out.w_vel[k];
  }
  for (std::size_t k = 0; k < n_theta_; ++k) {
    out.theta_vel[k] += half * at[k];
    out.theta[k] += dt * out.theta_vel[k];
  }
  accelerations(out.w, out.theta, aw, at);
  for (std::size_t k = 0; k < n_w_; ++k) out.w_vel[k] += half * aw[k];
  for (std::size_t k = 0; k < n_theta_; ++k) out.theta_vel[k] += half * at[k];
  return out;
}

double GalerkinSystem::energy(const ModalState& s) {
  build_constraints(s.w, s.theta);
  const double dx = geom_.rest_profile.dx();
  const auto a = evaluate_cable(qa_, dx, geom_, params_, opts_.variant, hull_, {});
  const auto b = evaluate_cable(qb_, dx, geom_, params_, opts_.variant, hull_, {});
  const double cable =
      params_.H * geom_.xi_bar * (a.arclength + b.arclength - 2.0 * geom_.L_c) +
      params_.A * params_.E_c / (2.0 * geom_.L_c) *
          (a.gamma * a.gamma + b.gamma * b.gamma);
  return modal_energy_terms(s, params_).total() + cable;
}

std::pair<double, double> GalerkinSystem::slackening(const ModalState& s) {
  if (opts_.variant == ModelVariant::Rigid) return {0.0, 0.0};
  build_constraints(s.w, s.theta);
  const auto& grid = geom_.rest_profile;
  const auto ea = convex_envelope(grid.with_values(qa_), opts_.tol);
  const auto eb = convex_envelope(grid.with_values(qb_), opts_.tol);
  return slackening_fraction(ea, eb, params_.L);
}

GridFunction GalerkinSystem::deck_w(const ModalState& s) const {
  std::vector<double> v(cells_ + 1);
  basis_.synthesize(s.w, v);
  return geom_.rest_profile.with_values(std::move(v));
}

GridFunction GalerkinSystem::deck_theta(const ModalState& s) const {
  std::vector<double> v(cells_ + 1);
  basis_.synthesize(s.theta, v);
  return geom_.rest_profile.with_values(std::move(v));
}

RunRecord GalerkinSystem::simulate(const ModalState& ic,
                                   const SimulationOptions& opts) {
  ic.validate();
  if (!(opts.T > 0.0) || !(opts.dt > 0.0) || !(opts.store_stride > 0.0)) {
    throw InvalidInput("T, dt and store_stride must be positive");
  }
  if (ic.n_w() != n_w_ || ic.n_theta() != n_theta_) {
    throw InvalidInput("initial state mode counts do not match the system");
  }
  const auto n_steps = static_cast<std::size_t>(std::llround(opts.T / opts.dt));
  const auto stride = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::llround(opts.store_stride / opts.dt)));
  const double scale = amplitude_scale(params_.L);

  RunRecord rec;
  RunSummary& sum = rec.summary;
  sum.max_abs_w_bar.assign(n_w_, 0.0);
  sum.max_abs_theta_bar.assign(n_theta_, 0.0);
  double slack_a_sum = 0.0;
  double slack_b_sum = 0.0;

  auto track = [&](const ModalState& s) {
    double m = 0.0;
    for (std::size_t k = 0; k < n_w_; ++k) {
      sum.max_abs_w_bar[k] = std::max(sum.max_abs_w_bar[k], std::abs(scale * s.w[k]));
    }
    for (std::size_t k = 0; k < n_theta_; ++k) {
      const double a = std::abs(scale * s.theta[k]);
      sum.max_abs_theta_bar[k] = std::max(sum.max_abs_theta_bar[k], a);
      m = std::max(m, a);
    }
    return m;
  };
  auto sample = [&](const ModalState& s) {
    const double e = energy(s);
    const auto [sa, sb] = slackening(s);
    if (sum.samples == 0) {
      sum.energy0 = sum.energy_min = sum.energy_max = e;
    } else {
      sum.energy_min = std::min(sum.energy_min, e);
      sum.energy_max = std::max(sum.energy_max, e);
    }
    slack_a_sum += sa;
    slack_b_sum += sb;
    ++sum.samples;
    if (!opts.keep_history) return;
    rec.times.push_back(s.t);
    std::vector<double> wb(n_w_), tb(n_theta_);
    for (std::size_t k = 0; k < n_w_; ++k) wb[k] = scale * s.w[k];
    for (std::size_t k = 0; k < n_theta_; ++k) tb[k] = scale * s.theta[k];
    rec.w_bar.push_back(std::move(wb));
    rec.theta_bar.push_back(std::move(tb));
    rec.energy.push_back(e);
    rec.slack_alpha.push_back(sa);
    rec.slack_beta.push_back(sb);
  };

  ModalState state = ic;
  const double t0 = ic.t;
  track(state);
  sample(state);
  for (std::size_t n = 1; n <= n_steps; ++n) {
    state = step(state, opts.dt);
    state.t = t0 + static_cast<double>(n) * opts.dt;
    const double theta_max = track(state);
    sum.steps = n;
    const bool stop = opts.stop_theta_bar && theta_max >= *opts.stop_theta_bar;
    if (n % stride == 0 || n == n_steps || stop) sample(state);
    if (stop) {
      sum.stopped_early = true;
      break;
    }
  }
  sum.t_end = state.t;
  sum.mean_slack_alpha = slack_a_sum / static_cast<double>(sum.samples);
  sum.mean_slack_beta = slack_b_sum / static_cast<double>(sum.samples);
  return rec;
}

Accelerations assemble_rhs(const ModalState& s, const BridgeParams& p,
                           std::size_t cells, const DynamicsOptions& opts) {
  GalerkinSystem sys(p, cells, s.n_w(), s.n_theta(), opts);
  return sys.assemble_rhs(s);
}

ModalState step(const ModalState& s, double dt, const BridgeParams& p,
                std::size_t cells, const DynamicsOptions& opts) {
  GalerkinSystem sys(p, cells, s.n_w(), s.n_theta(), opts);
  return sys.step(s, dt);
}

RunRecord simulate(const ModalState& ic, const BridgeParams& p,
                   std::size_t cells, const DynamicsOptions& dyn,
                   const SimulationOptions& sim) {
  GalerkinSystem sys(p, cells, ic.n_w(), ic.n_theta(), dyn);
  return sys.simulate(ic, sim);
}

}  // namespace bridgesim
