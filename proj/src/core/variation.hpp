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

// Variations of integrals of convexified functions.
//
// Perturbing f by s*phi moves the envelope f** by s times a reshaped test
// function: phi itself where f touches its envelope, and an affine (or, when
// f is flat along its envelope, a one-sided convex/concave) interpolation of
// phi across every stretch where the envelope is a chord.

#ifndef BRIDGESIM_CORE_VARIATION_HPP_
#define BRIDGESIM_CORE_VARIATION_HPP_

#include <functional>
#include <vector>

#include "core/envelope.hpp"
#include "core/grid.hpp"

namespace bridgesim {

/// The envelope is flat against f somewhere, so the two-sided variation
/// does not exist. Callers fall back to the one-sided operators.
class NoflatViolation : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

enum class VariationKind { JPlus, JMinus, J, G, GPlus, GMinus };
enum class Sign { Plus, Minus };

struct VariationField {
  GridFunction values;
  /// Cell-wise derivative of `values`.
  std::vector<double> deriv;
  VariationKind kind;
};

/// Two-sided variation field: phi on the contact set, affine interpolation
/// of phi(a^i), phi(b^i) across each affine interval. Requires noflat and
/// phi vanishing at both ends.
VariationField j_phi(const GridFunction& f, const GridFunction& phi,
                     const EnvelopeResult& env);

/// One-sided variation field for s -> 0^+ (Plus) or 0^- (Minus). On each
/// affine segment K^i, the convex (Plus) or concave (Minus) envelope of phi
/// restricted to the contact nodes of K^i and the interval ends.
VariationField j_phi_pm(const GridFunction& f, const GridFunction& phi,
                        const EnvelopeResult& env, Sign sign);

/// Variation of the envelope of Lambda(u) along phi, for f = Lambda(u)
/// satisfying noflat. `env_of_f` is the envelope of f.
VariationField g_u_phi(const GridFunction& u, const GridFunction& phi,
                       const std::function<double(double)>& lambda_prime,
                       const EnvelopeResult& env_of_f);

/// One-sided variation with seed psi * cos(theta) (Lambda = sin).
VariationField g_theta_psi_pm(const GridFunction& theta,
                              const GridFunction& psi,
                              const EnvelopeResult& env, Sign sign);

/// Seed values on the contact set, affine interpolation across every
/// affine interval. No noflat check; used by the dynamics.
std::vector<double> interpolate_across_intervals(
    std::span<const double> seed, const EnvelopeResult& env);

/// [int (f + s phi)** - int f**] / s for each s.
std::vector<double> directional_quotient(const GridFunction& f,
                                         const GridFunction& phi,
                                         const std::vector<double>& s_values,
                                         const ToleranceConfig& tol = {});

/// Linear extrapolation to s = 0 of quotients sampled at s_values (all of
/// one sign), least squares in s.
double extrapolate_to_zero(const std::vector<double>& s_values,
                           const std::vector<double>& quotients);

/// Smooth bump exp(1/(x^2 - 1)) on (-1, 1), zero elsewhere.
double bump(double x);
double bump_derivative(double x);

struct FlatEnvelopeReport {
  /// Tangency point of the line through (2, 0) and the bump, by bisection.
  double zeta_root = 0.0;
  /// |phi'(zeta)(zeta - 2) - phi(zeta)|.
  double tangency_residual = 0.0;
  /// Left end of the affine interval of (-phi)** touching x = 2.
  double zeta_envelope = 0.0;
  /// One-sided quotient limits for f affine, perturbation phi.
  double right_limit = 0.0;
  double left_limit = 0.0;
  /// Integral of -(-phi)** computed directly.
  double concave_majorant_integral = 0.0;
};

/// Bisection root of the tangency condition on (0, 1), tolerance 1e-10.
double flat_envelope_tangency();

/// Full report on the flat-envelope example on (-2, 2).
FlatEnvelopeReport flat_envelope_example(std::size_t cells = 4000);

}  // namespace bridgesim

#endif  // BRIDGESIM_CORE_VARIATION_HPP_
