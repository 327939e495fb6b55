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

#include "core/validation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "core/bridge_model.hpp"
#include "core/dynamics.hpp"
#include "core/variation.hpp"

namespace bridgesim {

double RandomFunctions::uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng_);
}

std::size_t RandomFunctions::index(std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
}

GridFunction RandomFunctions::function(double a, double b, std::size_t cells) {
  const double two_pi = 2.0 * std::numbers::pi;
  std::vector<double> v(cells + 1, 0.0);
  const std::size_t waves = index(1, 4);
  for (std::size_t k = 0; k < waves; ++k) {
    const double amp = uniform(-2.0, 2.0);
    const double freq = uniform(0.3, 6.0);
    const double phase = uniform(0.0, two_pi);
    for (std::size_t i = 0; i <= cells; ++i) {
      const double t = static_cast<double>(i) / static_cast<double>(cells);
      v[i] += amp * std::sin(two_pi * freq * t + phase);
    }
  }
  const double quad = uniform(-3.0, 3.0);
  const double lin = uniform(-2.0, 2.0);
  for (std::size_t i = 0; i <= cells; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(cells);
    v[i] += quad * (t - 0.5) * (t - 0.5) + lin * t;
  }
  const std::size_t p = index(0, cells - 1);
  const std::size_t q = index(p + 1, cells);
  switch (index(0, 4)) {
    case 1:  // plateau
      for (std::size_t i = p; i <= q; ++i) v[i] = v[p];
      break;
    case 2:  // exactly affine run
      for (std::size_t i = p; i <= q; ++i) {
        v[i] = v[p] + (v[q] - v[p]) * static_cast<double>(i - p) /
                          static_cast<double>(q - p);
      }
      break;
    case 3:  // rough
      for (double& x : v) x += uniform(-0.3, 0.3);
      break;
    default:
      break;
  }
  return GridFunction(a, b, std::move(v));
}

GridFunction RandomFunctions::test_function(double a, double b, std::size_t cells) {
  const double len = b - a;
  std::vector<double> v(cells + 1, 0.0);
  const std::size_t bumps = index(1, 3);
  for (std::size_t k = 0; k < bumps; ++k) {
    const double c = uniform(a + 0.2 * len, b - 0.2 * len);
    const double r = uniform(0.05 * len, std::min(c - a, b - c));
    const double amp = uniform(-2.0, 2.0);
    for (std::size_t i = 0; i <= cells; ++i) {
      const double x = a + len * static_cast<double>(i) / static_cast<double>(cells);
      v[i] += amp * bump((x - c) / r);
    }
  }
  v.front() = 0.0;
  v.back() = 0.0;
  return GridFunction(a, b, std::move(v));
}

GridFunction RandomFunctions::nonnegative_noise(const GridFunction& like, double size) {
  std::vector<double> v(like.size());
  const double base = uniform(0.0, size);
  for (double& x : v) x = base * uniform(0.0, 1.0);
  return like.with_values(std::move(v));
}

GridFunction RandomFunctions::pinned_function(double a, double b, std::size_t cells) {
  GridFunction f = function(a, b, cells);
  std::vector<double> v = f.vec();
  const double v0 = v.front();
  const double v1 = v.back();
  for (std::size_t i = 0; i <= cells; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(cells);
    v[i] -= v0 + (v1 - v0) * t;
  }
  v.front() = 0.0;
  v.back() = 0.0;
  return f.with_values(std::move(v));
}

std::vector<double> brute_force_envelope(std::span<const double> v) {
  const std::size_t n = v.size();
  double scale = 1.0;
  for (double x : v) scale = std::max(scale, std::abs(x));
  const double slack = 1e-12 * scale;
  std::vector<double> env(n, -INFINITY);
  std::vector<double> line(n);
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = p + 1; q < n; ++q) {
      const double slope = (v[q] - v[p]) / static_cast<double>(q - p);
      bool below = true;
      for (std::size_t k = 0; k < n && below; ++k) {
        line[k] = v[p] + slope * (static_cast<double>(k) - static_cast<double>(p));
        below = line[k] <= v[k] + slack;
      }
      if (!below) continue;
      for (std::size_t k = 0; k < n; ++k) env[k] = std::max(env[k], line[k]);
    }
  }
  return env;
}

namespace {

double tolerance(double scale, double length = 1.0) {
  return 1e-9 * std::max(1.0, scale) * std::max(1.0, length);
}

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

GridFunction primitive(const GridFunction& f) {
  std::vector<double> F(f.size(), 0.0);
  for (std::size_t i = 1; i < f.size(); ++i) {
    F[i] = F[i - 1] + 0.5 * f.dx() * (f[i - 1] + f[i]);
  }
  return f.with_values(std::move(F));
}

// Two-sided field when the envelope allows it, otherwise the one-sided one.
VariationField variation_of(const GridFunction& f, const GridFunction& phi,
                            const EnvelopeResult& env, Sign sign) {
  if (check_noflat(f, env)) return j_phi(f, phi, env);
  return j_phi_pm(f, phi, env, sign);
}

// sum_c h_c * (v_{c+1} - v_c), the discrete pairing of h with v'.
double pairing(std::span<const double> h, std::span<const double> v) {
  double s = 0.0;
  for (std::size_t c = 0; c < h.size(); ++c) s += h[c] * (v[c + 1] - v[c]);
  return s;
}

struct Suite {
  CheckResult r;
  explicit Suite(std::string name) { r.name = std::move(name); r.passed = true; }
  // Records a case whose checked value must not exceed `limit`.
  void expect_le(double value, double limit, const std::string& what = {}) {
    ++r.cases;
    const double ratio = limit > 0.0 ? value / limit : (value <= 0.0 ? 0.0 : INFINITY);
    r.worst = std::max(r.worst, ratio);
    if (!(value <= limit) && r.passed) {
      r.passed = false;
      std::ostringstream os;
      os.precision(6);
      os << "case " << r.cases << (what.empty() ? "" : " (" + what + ")") << ": "
         << value << " > " << limit;
      r.detail = os.str();
    }
  }
  CheckResult done() {
    if (r.passed && r.detail.empty()) {
      std::ostringstream os;
      os.precision(3);
      os << "worst value/limit " << r.worst;
      r.detail = os.str();
    }
    return r;
  }
};

struct Interval {
  double a;
  double b;
};

Interval random_interval(RandomFunctions& rf) {
  const double a = rf.uniform(-3.0, 3.0);
  return {a, a + rf.uniform(0.5, 6.0)};
}

CheckResult envelope_oracle(const ValidationOptions& o) {
  Suite s("envelope-oracle-equivalence");
  RandomFunctions rf(o.seed + 1);
  for (std::size_t k = 0; k < o.cases; ++k) {
    const auto [a, b] = random_interval(rf);
    const GridFunction f = rf.function(a, b, rf.index(2, 256));
    const auto env = convex_envelope(f);
    const auto oracle = brute_force_envelope(f.values());
    double err = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
      err = std::max(err, std::abs(env.env[i] - oracle[i]));
    }
    s.expect_le(err, tolerance(f.sup_norm()));
  }
  return s.done();
}

CheckResult envelope_invariants(const ValidationOptions& o) {
  Suite s("envelope-invariants");
  RandomFunctions rf(o.seed + 2);
  for (std::size_t k = 0; k < o.cases; ++k) {
    const auto [a, b] = random_interval(rf);
    const GridFunction f = rf.function(a, b, rf.index(2, 2048));
    const auto env = convex_envelope(f);
    const double tol = tolerance(f.sup_norm());
    double above = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) above = std::max(above, env.env[i] - f[i]);
    double concave = 0.0;
    const double slope_tol = 1e-9 * std::max(1.0, max_abs(env.slopes));
    for (std::size_t c = 0; c + 1 < env.slopes.size(); ++c) {
      concave = std::max(concave, env.slopes[c] - env.slopes[c + 1] - slope_tol);
    }
    const auto again = convex_envelope(env.env);
    double drift = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
      drift = std::max(drift, std::abs(again.env[i] - env.env[i]));
    }
    bool structure = env.contact_mask.front() && env.contact_mask.back();
    std::size_t prev_end = 0;
    for (std::size_t j = 0; j < env.affine_intervals.size(); ++j) {
      const auto& r = env.affine_intervals[j];
      structure = structure && r.first < r.last && (j == 0 || r.first >= prev_end);
      for (std::size_t i = r.first + 1; i < r.last; ++i) {
        structure = structure && !env.contact_mask[i];
      }
      prev_end = r.last;
    }
    const double worst = structure ? std::max({above, concave, drift}) : INFINITY;
    s.expect_le(worst, tol, structure ? "minorant/convexity/idempotence"
                                      : "contact and interval structure");
  }
  return s.done();
}

CheckResult t_monotone(const ValidationOptions& o) {
  Suite s("T-monotonicity");
  RandomFunctions rf(o.seed + 3);
  for (std::size_t k = 0; k < o.cases; ++k) {
    const auto [a, b] = random_interval(rf);
    const GridFunction f = rf.function(a, b, rf.index(2, 1024));
    const GridFunction noise = rf.nonnegative_noise(f, rf.uniform(0.0, 2.0));
    std::vector<double> gv = f.vec();
    for (std::size_t i = 0; i < gv.size(); ++i) gv[i] += noise[i];
    const GridFunction g = f.with_values(std::move(gv));
    const auto tf = operator_T(f);
    const auto tg = operator_T(g);
    double excess = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) excess = std::max(excess, tf[i] - tg[i]);
    s.expect_le(excess, tolerance(std::max(tf.sup_norm(), tg.sup_norm())));
  }
  return s.done();
}

CheckResult t_contraction(const ValidationOptions& o) {
  Suite s("T-L1-contraction");
  RandomFunctions rf(o.seed + 4);
  for (std::size_t k = 0; k < o.cases; ++k) {
    const auto [a, b] = random_interval(rf);
    const std::size_t n = rf.index(2, 1024);
    const GridFunction f = rf.function(a, b, n);
    GridFunction g = rf.function(a, b, n);
    if (k % 2 == 0) {
      // Nearby pair.
      std::vector<double> gv = f.vec();
      const double eps = rf.uniform(1e-4, 0.5);
      for (std::size_t i = 0; i < gv.size(); ++i) gv[i] += eps * g[i];
      g = f.with_values(std::move(gv));
    }
    const double lhs = l1_distance(operator_T(f), operator_T(g));
    const double rhs = l1_distance(f, g);
    s.expect_le(lhs, rhs + tolerance(std::max(f.sup_norm(), g.sup_norm()), b - a));
  }
  return s.done();
}

CheckResult t_integral(const ValidationOptions& o) {
  Suite s("T-integral-preservation");
  RandomFunctions rf(o.seed + 5);
  for (std::size_t k = 0; k < o.cases; ++k) {
    const auto [a, b] = random_interval(rf);
    const GridFunction f = rf.function(a, b, rf.index(2, 2048));
    const double err = std::abs(trapezoid(operator_T(f)) - trapezoid(f));
    s.expect_le(err, tolerance(f.sup_norm(), b - a));
  }
  return s.done();
}

CheckResult projection_lipschitz(const ValidationOptions& o) {
  Suite s("projection-W11-Lipschitz");
  RandomFunctions rf(o.seed + 6);
  for (std::size_t k = 0; k < o.cases; ++k) {
    const auto [a, b] = random_interval(rf);
    const std::size_t n = rf.index(2, 1024);
    const GridFunction F = rf.pinned_function(a, b, n);
    const GridFunction G = rf.pinned_function(a, b, n);
    const auto eF = convex_envelope(F);
    const auto eG = convex_envelope(G);
    double deriv = 0.0;
    for (std::size_t c = 0; c < n; ++c) deriv += std::abs(eF.slopes[c] - eG.slopes[c]);
    deriv *= F.dx();
    const double lhs = l1_distance(eF.env, eG.env) + deriv;
    const auto dF = cell_slopes(F);
    const auto dG = cell_slopes(G);
    double rhs = 0.0;
    for (std::size_t c = 0; c < n; ++c) rhs += std::abs(dF[c] - dG[c]);
    rhs *= F.dx() * ((b - a) / 2.0 + 1.0);
    s.expect_le(lhs, rhs + tolerance(std::max(F.sup_norm(), G.sup_norm()), b - a));
  }
  return s.done();
}

// Shared driver for the two pairing bounds: |<H(Tf), J_F'> - <H(Tg), J_G'>|
// against ||phi'||_inf ||f - g||_1.
template <typename H>
CheckResult pairing_bound(const ValidationOptions& o, std::string name,
                          std::uint64_t salt, H transform) {
  Suite s(std::move(name));
  RandomFunctions rf(o.seed + salt);
  for (std::size_t k = 0; k < o.cases; ++k) {
    const auto [a, b] = random_interval(rf);
    const std::size_t n = rf.index(8, 1024);
    const GridFunction f = rf.function(a, b, n);
    GridFunction g = rf.function(a, b, n);
    if (k % 2 == 0) {
      std::vector<double> gv = f.vec();
      const double eps = rf.uniform(1e-4, 0.5);
      for (std::size_t i = 0; i < gv.size(); ++i) gv[i] += eps * g[i];
      g = f.with_values(std::move(gv));
    }
    const GridFunction phi = rf.test_function(a, b, n);
    const Sign sign = k % 3 == 0 ? Sign::Minus : Sign::Plus;
    const GridFunction F = primitive(f);
    const GridFunction G = primitive(g);
    const auto eF = convex_envelope(F);
    const auto eG = convex_envelope(G);
    const auto jF = variation_of(F, phi, eF, sign);
    const auto jG = variation_of(G, phi, eG, sign);
    std::vector<double> hF(eF.slopes.size());
    std::vector<double> hG(eG.slopes.size());
    std::transform(eF.slopes.begin(), eF.slopes.end(), hF.begin(), transform);
    std::transform(eG.slopes.begin(), eG.slopes.end(), hG.begin(), transform);
    const double lhs = std::abs(pairing(hF, jF.values.values()) -
                                pairing(hG, jG.values.values()));
    const double phi_slope = max_abs(cell_slopes(phi));
    const double rhs = phi_slope * l1_distance(f, g);
    const double scale = std::max(max_abs(hF), max_abs(hG)) * phi.sup_norm();
    s.expect_le(lhs, rhs + tolerance(scale, b - a));
  }
  return s.done();
}

CheckResult g_ratio(const ValidationOptions& o) {
  Suite s("variation-G-ratio-bounded");
  RandomFunctions rf(o.seed + 9);
  double worst = 0.0;
  bool finite = true;
  for (std::size_t k = 0; k < o.cases; ++k) {
    const auto [a, b] = random_interval(rf);
    const std::size_t n = rf.index(8, 512);
    const GridFunction f = rf.function(a, b, n);
    const GridFunction p = rf.function(a, b, n);
    const double eps = std::pow(10.0, rf.uniform(-4.0, 0.0));
    std::vector<double> gv = f.vec();
    for (std::size_t i = 0; i < gv.size(); ++i) gv[i] += eps * p[i];
    const GridFunction g = f.with_values(std::move(gv));
    const GridFunction psi = rf.test_function(a, b, n);
    const GridFunction F = primitive(f);
    const GridFunction G = primitive(g);
    const auto eF = convex_envelope(F);
    const auto eG = convex_envelope(G);
    const auto gF = g_theta_psi_pm(F, psi, eF, Sign::Plus);
    const auto gG = g_theta_psi_pm(G, psi, eG, Sign::Plus);
    std::vector<double> hF(eF.slopes.size());
    std::vector<double> hG(eG.slopes.size());
    std::transform(eF.slopes.begin(), eF.slopes.end(), hF.begin(), chi);
    std::transform(eG.slopes.begin(), eG.slopes.end(), hG.begin(), chi);
    const double num = std::abs(pairing(hF, gF.values.values()) -
                                pairing(hG, gG.values.values()));
    const auto dF = cell_slopes(F);
    const auto dG = cell_slopes(G);
    double w11 = l1_distance(F, G);
    for (std::size_t c = 0; c < n; ++c) w11 += std::abs(dF[c] - dG[c]) * F.dx();
    const double ratio = w11 > 0.0 ? num / w11 : 0.0;
    finite = finite && std::isfinite(ratio);
    worst = std::max(worst, ratio);
    ++s.r.cases;
  }
  s.r.passed = finite;
  s.r.worst = worst;
  std::ostringstream os;
  os.precision(4);
  os << "max ratio " << worst << " (reported, no fixed constant)";
  s.r.detail = os.str();
  return s.r;
}

CheckResult reduction_identity(const ValidationOptions& o) {
  Suite s("reduction-identity");
  RandomFunctions rf(o.seed + 10);
  for (std::size_t k = 0; k < o.cases; ++k) {
    const auto [a, b] = random_interval(rf);
    const std::size_t n = rf.index(8, 2048);
    // Alternate envelopes of primitives (h = Tf) and of raw functions.
    const GridFunction base = rf.function(a, b, n);
    const GridFunction f = k % 2 == 0 ? primitive(base) : base;
    const GridFunction phi = rf.test_function(a, b, n);
    const GridFunction theta = rf.function(a, b, n);
    const auto env = convex_envelope(f);
    const auto& h = env.slopes;
    const double direct = pairing(h, phi.values());
    std::vector<double> seed(phi.size());
    for (std::size_t i = 0; i < seed.size(); ++i) seed[i] = phi[i] * std::cos(theta[i]);
    const double direct_g = pairing(h, seed);
    double resid = 0.0;
    for (Sign sign : {Sign::Plus, Sign::Minus}) {
      resid = std::max(resid, std::abs(pairing(h, j_phi_pm(f, phi, env, sign).values.values()) - direct));
      resid = std::max(resid, std::abs(pairing(h, g_theta_psi_pm(theta, phi, env, sign).values.values()) - direct_g));
    }
    if (check_noflat(f, env)) {
      resid = std::max(resid, std::abs(pairing(h, j_phi(f, phi, env).values.values()) - direct));
    }
    double scale = 0.0;
    for (std::size_t c = 0; c < h.size(); ++c) scale += std::abs(h[c] * (phi[c + 1] - phi[c]));
    s.expect_le(resid, 1e-8 * std::max(1.0, scale));
  }
  return s.done();
}

CheckResult bound_transfer(const ValidationOptions& o) {
  Suite s("variation-bound-transfer");
  RandomFunctions rf(o.seed + 11);
  for (std::size_t k = 0; k < o.cases; ++k) {
    const auto [a, b] = random_interval(rf);
    const std::size_t n = rf.index(8, 1024);
    const GridFunction f = rf.function(a, b, n);
    const GridFunction phi = rf.test_function(a, b, n);
    const auto env = convex_envelope(f);
    const double pv = phi.sup_norm();
    const double pd = max_abs(cell_slopes(phi));
    double excess = 0.0;
    for (Sign sign : {Sign::Plus, Sign::Minus}) {
      const auto j = variation_of(f, phi, env, sign);
      excess = std::max(excess, j.values.sup_norm() - pv);
      excess = std::max(excess, max_abs(j.deriv) - pd);
    }
    s.expect_le(excess, tolerance(std::max(pv, pd)));
  }
  return s.done();
}

CheckResult one_sided_consistency(const ValidationOptions& o) {
  Suite s("variation-one-sided-consistency");
  RandomFunctions rf(o.seed + 12);
  std::size_t attempts = 0;
  while (s.r.cases < o.cases && attempts < 20 * o.cases) {
    ++attempts;
    const auto [a, b] = random_interval(rf);
    const std::size_t n = rf.index(8, 1024);
    const GridFunction f = rf.function(a, b, n);
    const auto env = convex_envelope(f);
    if (!check_noflat(f, env)) continue;
    const GridFunction phi = rf.test_function(a, b, n);
    const auto j = j_phi(f, phi, env);
    const auto jp = j_phi_pm(f, phi, env, Sign::Plus);
    const auto jm = j_phi_pm(f, phi, env, Sign::Minus);
    double diff = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
      diff = std::max({diff, std::abs(jp.values[i] - j.values[i]),
                       std::abs(jm.values[i] - j.values[i])});
    }
    s.expect_le(diff, tolerance(phi.sup_norm()));
  }
  if (s.r.cases < o.cases) {
    s.r.passed = false;
    s.r.detail = "could not draw enough inputs satisfying the no-flat condition";
  }
  return s.done();
}

CheckResult variation_convergence(const ValidationOptions& o) {
  Suite s("variation-convergence");
  RandomFunctions rf(o.seed + 13);
  std::size_t attempts = 0;
  while (s.r.cases < o.cases && attempts < 20 * o.cases) {
    ++attempts;
    const auto [a, b] = random_interval(rf);
    const std::size_t n = rf.index(32, 512);
    const GridFunction f = rf.function(a, b, n);
    const auto env = convex_envelope(f);
    if (!check_noflat(f, env)) continue;
    const GridFunction p = rf.test_function(a, b, n);
    const GridFunction phi = rf.test_function(a, b, n);
    const auto j = j_phi(f, phi, env);
    auto distance = [&](double eps) {
      std::vector<double> v = f.vec();
      for (std::size_t i = 0; i < v.size(); ++i) v[i] += eps * p[i];
      const GridFunction fn = f.with_values(std::move(v));
      const auto jn = variation_of(fn, phi, convex_envelope(fn), Sign::Plus);
      double d = l1_distance(jn.values, j.values);
      for (std::size_t c = 0; c < n; ++c) d += std::abs(jn.deriv[c] - j.deriv[c]) * f.dx();
      return d;
    };
    double first = 0.0;
    double last = 0.0;
    double peak = 0.0;
    for (int e = 0; e <= 8; ++e) {
      const double d = distance(std::pow(10.0, -e));
      if (e == 0) first = d;
      peak = std::max(peak, d);
      last = d;
    }
    // The limit is reached once the perturbation no longer moves any hull
    // vertex; what remains is round-off.
    const double floor = tolerance(phi.sup_norm() + max_abs(cell_slopes(phi)), b - a);
    s.expect_le(last, std::max(floor, 1e-3 * std::max(first, peak)));
  }
  if (s.r.cases < o.cases) {
    s.r.passed = false;
    s.r.detail = "could not draw enough inputs satisfying the no-flat condition";
  }
  return s.done();
}

CheckResult one_sided_quotients(const ValidationOptions& o) {
  Suite s("one-sided-quotients");
  RandomFunctions rf(o.seed + 14);
  const std::vector<double> pos = {1e-4, 1e-5, 1e-6};
  const std::vector<double> neg = {-1e-4, -1e-5, -1e-6};
  std::size_t attempts = 0;
  while (s.r.cases < o.cases && attempts < 20 * o.cases) {
    ++attempts;
    const auto [a, b] = random_interval(rf);
    const std::size_t n = rf.index(64, 256);
    const GridFunction f = rf.function(a, b, n);
    const auto env = convex_envelope(f);
    if (!check_noflat(f, env)) continue;
    const GridFunction phi = rf.test_function(a, b, n);
    const double right = extrapolate_to_zero(pos, directional_quotient(f, phi, pos));
    const double left = extrapolate_to_zero(neg, directional_quotient(f, phi, neg));
    const double jp = trapezoid(j_phi_pm(f, phi, env, Sign::Plus).values);
    const double jm = trapezoid(j_phi_pm(f, phi, env, Sign::Minus).values);
    const double scale = std::max(1.0, phi.sup_norm() * (b - a));
    const double tol = 10.0 * (1.0 / static_cast<double>(n) + 1e-6) * scale;
    s.expect_le(std::max(std::abs(right - jp), std::abs(left - jm)), tol);
  }
  if (s.r.cases < o.cases) {
    s.r.passed = false;
    s.r.detail = "could not draw enough inputs satisfying the no-flat condition";
  }
  return s.done();
}

CheckResult chi_gamma_lipschitz(const ValidationOptions& o) {
  Suite s("chi-gamma-Lipschitz");
  RandomFunctions rf(o.seed + 15);
  for (std::size_t k = 0; k < 8 * o.cases; ++k) {
    auto draw = [&] {
      const double mag = std::pow(10.0, rf.uniform(-4.0, 3.0));
      return rf.uniform(0.0, 1.0) < 0.5 ? -mag : mag;
    };
    const double v = draw();
    const double w = k % 2 == 0 ? draw() : v + rf.uniform(-1e-3, 1e-3);
    const double d = std::abs(v - w);
    const double excess = std::max(std::abs(chi(v) - chi(w)),
                                   std::abs(gamma_density(v) - gamma_density(w))) - d;
    s.expect_le(excess, 1e-15 * std::max(1.0, std::max(std::abs(v), std::abs(w))));
  }
  return s.done();
}

CheckResult cable_length_lipschitz(const ValidationOptions& o) {
  Suite s("cable-length-Lipschitz");
  RandomFunctions rf(o.seed + 16);
  BridgeParams p;
  const std::size_t cells = 512;
  const CableGeometry geom = make_geometry(p, cells);
  for (std::size_t k = 0; k < o.cases; ++k) {
    const double amp = std::pow(10.0, rf.uniform(-2.0, 1.5));
    auto displacement = [&] {
      const GridFunction shape = rf.pinned_function(0.0, p.L, cells);
      std::vector<double> v = shape.vec();
      for (double& x : v) x *= amp;
      return geom.rest_profile.with_values(std::move(v));
    };
    const GridFunction u1 = displacement();
    const GridFunction u2 = displacement();
    const double lhs = std::abs(gamma_length(u1, geom) - gamma_length(u2, geom));
    const auto d1 = cell_slopes(u1);
    const auto d2 = cell_slopes(u2);
    double rhs = 0.0;
    for (std::size_t c = 0; c < cells; ++c) rhs += std::abs(d1[c] - d2[c]);
    rhs *= u1.dx();
    s.expect_le(lhs, rhs + 1e-9 * geom.L_c);
  }
  return s.done();
}

ModalState random_state(RandomFunctions& rf, std::size_t n_w, std::size_t n_t,
                        double amp, double L) {
  ModalState st(n_w, n_t);
  const double to_coeff = 1.0 / amplitude_scale(L);
  for (auto* v : {&st.w, &st.w_vel}) {
    for (double& x : *v) x = rf.uniform(-amp, amp) * to_coeff;
  }
  for (auto* v : {&st.theta, &st.theta_vel}) {
    for (double& x : *v) x = rf.uniform(-amp, amp) * 0.05 * to_coeff;
  }
  return st;
}

double history_gap(const RunRecord& x, const RunRecord& y, double theta_sign) {
  double gap = 0.0;
  for (std::size_t n = 0; n < x.times.size(); ++n) {
    for (std::size_t k = 0; k < x.w_bar[n].size(); ++k) {
      gap = std::max(gap, std::abs(x.w_bar[n][k] - y.w_bar[n][k]));
    }
    for (std::size_t k = 0; k < x.theta_bar[n].size(); ++k) {
      gap = std::max(gap, std::abs(x.theta_bar[n][k] - theta_sign * y.theta_bar[n][k]));
    }
    gap = std::max(gap, std::abs(x.energy[n] - y.energy[n]) /
                            std::max(1.0, std::abs(x.energy[n])));
  }
  return gap;
}

CheckResult theta_parity(const ValidationOptions& o) {
  Suite s("theta-parity");
  RandomFunctions rf(o.seed + 17);
  BridgeParams p;
  SimulationOptions so;
  so.T = 0.2;
  so.dt = 0.01;
  so.store_stride = 0.01;
  for (std::size_t k = 0; k < o.cases; ++k) {
    DynamicsOptions d;
    d.variant = k % 2 == 0 ? ModelVariant::Convexified : ModelVariant::Rigid;
    GalerkinSystem sys(p, 128, 4, 3, d);
    const ModalState ic = random_state(rf, 4, 3, rf.uniform(0.01, 4.0), p.L);
    ModalState mirror = ic;
    for (double& x : mirror.theta) x = -x;
    for (double& x : mirror.theta_vel) x = -x;
    const RunRecord a = sys.simulate(ic, so);
    const RunRecord b = sys.simulate(mirror, so);
    double gap = history_gap(a, b, -1.0);
    for (std::size_t n = 0; n < a.times.size(); ++n) {
      gap = std::max({gap, std::abs(a.slack_alpha[n] - b.slack_beta[n]),
                      std::abs(a.slack_beta[n] - b.slack_alpha[n])});
    }
    s.expect_le(gap, 1e-12);
  }
  return s.done();
}

CheckResult rigid_agreement(const ValidationOptions& o) {
  Suite s("rigid-convexified-agreement");
  RandomFunctions rf(o.seed + 18);
  BridgeParams p;
  SimulationOptions so;
  so.T = 0.5;
  so.dt = 0.01;
  so.store_stride = 0.05;
  DynamicsOptions conv;
  DynamicsOptions rigid;
  rigid.variant = ModelVariant::Rigid;
  GalerkinSystem sc(p, 128, 6, 3, conv);
  GalerkinSystem sr(p, 128, 6, 3, rigid);
  std::size_t attempts = 0;
  while (s.r.cases < o.cases && attempts < 4 * o.cases) {
    ++attempts;
    const ModalState ic = random_state(rf, 6, 3, rf.uniform(1e-3, 0.08), p.L);
    const RunRecord a = sc.simulate(ic, so);
    const bool taut = std::all_of(a.slack_alpha.begin(), a.slack_alpha.end(),
                                  [](double v) { return v == 0.0; }) &&
                      std::all_of(a.slack_beta.begin(), a.slack_beta.end(),
                                  [](double v) { return v == 0.0; });
    if (!taut) continue;
    const RunRecord b = sr.simulate(ic, so);
    s.expect_le(history_gap(a, b, 1.0), 1e-12);
  }
  if (s.r.cases < o.cases) {
    s.r.passed = false;
    s.r.detail = "too few never-slack trajectories drawn";
  }
  return s.done();
}

CheckResult rhs_routes(const ValidationOptions& o) {
  Suite s("rhs-route-equivalence");
  RandomFunctions rf(o.seed + 19);
  BridgeParams p;
  for (std::size_t k = 0; k < o.cases; ++k) {
    DynamicsOptions reduced;
    reduced.variant = k % 4 == 3 ? ModelVariant::Rigid : ModelVariant::Convexified;
    DynamicsOptions expl = reduced;
    expl.route = RhsRoute::Explicit;
    const std::size_t cells = rf.index(64, 512);
    GalerkinSystem a(p, cells, 10, 4, reduced);
    GalerkinSystem b(p, cells, 10, 4, expl);
    const ModalState st = random_state(rf, 10, 4, rf.uniform(0.01, 6.0), p.L);
    const auto [rw1, rt1] = a.cable_loads(st);
    const auto [rw2, rt2] = b.cable_loads(st);
    double diff = 0.0;
    double scale = 1.0;
    for (std::size_t i = 0; i < rw1.size(); ++i) {
      diff = std::max(diff, std::abs(rw1[i] - rw2[i]));
      scale = std::max(scale, std::abs(rw1[i]));
    }
    for (std::size_t i = 0; i < rt1.size(); ++i) {
      diff = std::max(diff, std::abs(rt1[i] - rt2[i]));
      scale = std::max(scale, std::abs(rt1[i]));
    }
    s.expect_le(diff, 1e-8 * scale);
  }
  return s.done();
}

CheckResult check_flat_envelope_example(const ValidationOptions&) {
  Suite s("flat-envelope-example");
  const FlatEnvelopeReport r = bridgesim::flat_envelope_example();
  s.expect_le(std::abs(r.zeta_root - 0.25), 0.01, "tangency root");
  s.expect_le(std::abs(r.zeta_envelope - 0.25), 0.01, "envelope boundary");
  s.expect_le(r.tangency_residual, 1e-8, "tangency residual");
  s.expect_le(std::abs(r.right_limit), 1e-3 * std::abs(r.left_limit), "one-sided limits");
  std::ostringstream os;
  os.precision(6);
  os << "zeta " << r.zeta_root << " / " << r.zeta_envelope << ", limits "
     << r.right_limit << " vs " << r.left_limit;
  if (s.r.passed) s.r.detail = os.str();
  return s.done();
}

using SuiteFn = CheckResult (*)(const ValidationOptions&);

struct NamedSuite {
  const char* name;
  SuiteFn fn;
};

const std::vector<NamedSuite>& suites() {
  static const std::vector<NamedSuite> all = {
      {"envelope-oracle-equivalence", envelope_oracle},
      {"envelope-invariants", envelope_invariants},
      {"T-monotonicity", t_monotone},
      {"T-L1-contraction", t_contraction},
      {"T-integral-preservation", t_integral},
      {"projection-W11-Lipschitz", projection_lipschitz},
      {"variation-stability-bound",
       [](const ValidationOptions& o) {
         return pairing_bound(o, "variation-stability-bound", 7,
                              [](double v) { return v; });
       }},
      {"variation-composition-bound",
       [](const ValidationOptions& o) {
         return pairing_bound(o, "variation-composition-bound", 8,
                              [](double v) { return chi(v); });
       }},
      {"variation-G-ratio-bounded", g_ratio},
      {"reduction-identity", reduction_identity},
      {"variation-bound-transfer", bound_transfer},
      {"variation-one-sided-consistency", one_sided_consistency},
      {"variation-convergence", variation_convergence},
      {"one-sided-quotients", one_sided_quotients},
      {"chi-gamma-Lipschitz", chi_gamma_lipschitz},
      {"cable-length-Lipschitz", cable_length_lipschitz},
      {"theta-parity", theta_parity},
      {"rigid-convexified-agreement", rigid_agreement},
      {"rhs-route-equivalence", rhs_routes},
      {"flat-envelope-example", check_flat_envelope_example},
  };
  return all;
}

}  // namespace

std::vector<std::string> property_suite_names() {
  std::vector<std::string> names;
  for (const auto& s : suites()) names.emplace_back(s.name);
  return names;
}

std::vector<CheckResult> run_property_suites(const ValidationOptions& opts,
                                             const CheckCallback& on_result) {
  std::vector<CheckResult> out;
  for (const auto& s : suites()) {
    CheckResult r;
    try {
      r = s.fn(opts);
    } catch (const std::exception& e) {
      r.name = s.name;
      r.passed = false;
      r.detail = std::string("exception: ") + e.what();
    }
    if (on_result) on_result(r);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace bridgesim
