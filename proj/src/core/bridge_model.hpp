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

// Fish-bone suspension bridge with convexified cables.
//
// Frame: w is the downward deck displacement, theta the torsion angle. The
// cables are described in an upward (height) frame by the rest profile
//
//   yhat(x) = (4 f / L^2) x^2 - (4 f / L) x,      yhat(0) = yhat(L) = 0,
//
// which is convex. The deck edge under cable alpha (beta) sits at
// yhat - (w + ell sin theta) (resp. yhat - (w - ell sin theta)); the cable is
// the greatest convex minorant of that constraint. Deck moving up pushes a
// bump into the constraint, the envelope bridges it with a chord, and the
// hangers along the chord are slack.

#ifndef BRIDGESIM_CORE_BRIDGE_MODEL_HPP_
#define BRIDGESIM_CORE_BRIDGE_MODEL_HPP_

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "core/envelope.hpp"
#include "core/grid.hpp"
#include "core/modal.hpp"

namespace bridgesim {

/// Physical constants, SI units. Defaults are the Tacoma Narrows Bridge.
struct BridgeParams {
  double E = 2.0e11;     // deck Young modulus [Pa]
  double E_c = 1.85e11;  // cable Young modulus [Pa]
  double G = 8.1e10;     // deck shear modulus [Pa]
  double L = 853.44;     // main span [m]
  double ell = 6.0;      // deck half width [m]
  double f_sag = 70.71;  // cable sag [m]
  double I = 0.154;      // [m^4]
  double K = 6.07e-6;    // torsional constant [m^4]
  double J = 5.44;       // warping constant [m^6]
  double A = 0.1228;     // cable section [m^2]
  double M = 7198.0;     // deck mass per length [kg/m]
  double H = 4.5413e7;   // initial cable tension [N]
  double g = 9.81;       // [m/s^2]
  double y0 = 0.0;       // tower height [m]; drops out of every formula

  /// Throws InvalidInput unless every constant is positive; A, H, g and y0
  /// may also be zero.
  void validate() const;
  /// Sag/span ratio inside the usual design range [1/12, 1/8].
  bool sag_ratio_in_band() const;
  std::string sag_ratio_warning() const;
};

enum class Side { Alpha, Beta };
enum class ModelVariant { Convexified, Rigid };

struct CableGeometry {
  GridFunction rest_profile;  // yhat
  double xi_bar = 1.0;        // mean of sqrt(1 + yhat'^2)
  double xi_max = 1.0;        // sqrt(1 + (4 f / L)^2)
  double L_c = 0.0;           // rest cable length = L * xi_bar
};

CableGeometry make_geometry(const BridgeParams& p, std::size_t cells);

/// Closed-form mean length density of the parabolic cable.
double xi_bar_closed_form(double L, double f_sag);
/// Same by composite Simpson quadrature (cross-check).
double xi_bar_quadrature(double L, double f_sag, std::size_t panels = 20000);

/// chi(v) = v / sqrt(1 + v^2), gamma(v) = sqrt(1 + v^2).
inline double chi(double v) { return v / std::sqrt(1.0 + v * v); }
inline double gamma_density(double v) { return std::sqrt(1.0 + v * v); }

/// Height-frame constraint of one cable: yhat - (w +/- ell sin theta),
/// alpha taking +.
GridFunction cable_constraint(const GridFunction& w, const GridFunction& theta,
                              const CableGeometry& geom, const BridgeParams& p,
                              Side side);

/// Elongation of a cable whose attachment line is displaced downward by u:
/// arclength of (yhat - u)** minus L_c.
double gamma_length(const GridFunction& u, const CableGeometry& geom,
                    const ToleranceConfig& tol = {});

/// Per-cable quantities derived from one constraint function.
struct CableEval {
  double arclength = 0.0;
  double gamma = 0.0;    // arclength - L_c
  double tension = 0.0;  // H xi_bar + (A E_c / L_c) gamma
};

/// Hot path shared by the force and energy routines. `q` is the nodal
/// constraint; writes the force density h = tension * chi(slope) per cell
/// into `h_cells` (may be empty to skip). Slopes are those of the convex
/// envelope (Convexified) or of q itself (Rigid).
CableEval evaluate_cable(std::span<const double> q, double dx,
                         const CableGeometry& geom, const BridgeParams& p,
                         ModelVariant variant, std::vector<std::size_t>& hull,
                         std::span<double> h_cells);

/// Cable force density, one value per cell. In the deck's downward frame this
/// is -(H xi_bar + A E_c Gamma / L_c) * chi(c') with c the cable depth; in the
/// height frame used here it equals tension * chi(s) with s the envelope slope.
std::vector<double> h_force_cells(const GridFunction& w,
                                  const GridFunction& theta,
                                  const CableGeometry& geom,
                                  const BridgeParams& p, Side side,
                                  ModelVariant variant = ModelVariant::Convexified);

/// Nodal form of h_force_cells (neighbour averaging).
GridFunction h_force(const GridFunction& w, const GridFunction& theta,
                     const CableGeometry& geom, const BridgeParams& p, Side side,
                     ModelVariant variant = ModelVariant::Convexified);

/// E_C: H xi_bar [sum of both arclengths - 2 L_c] + A E_c / (2 L_c) (Gamma_a^2 + Gamma_b^2).
double cable_energy(const GridFunction& w, const GridFunction& theta,
                    const CableGeometry& geom, const BridgeParams& p,
                    ModelVariant variant = ModelVariant::Convexified);

struct EnergyBreakdown {
  double kinetic = 0.0;
  double deck_elastic = 0.0;
  double cable = 0.0;
  double gravity = 0.0;
  double total() const { return kinetic + deck_elastic + cable + gravity; }
};

/// Closed-form modal part: kinetic, bending/torsion/warping, gravity.
EnergyBreakdown modal_energy_terms(const ModalState& s, const BridgeParams& p);

/// Total energy of a Galerkin state on the geometry's grid.
double total_energy(const ModalState& s, const CableGeometry& geom,
                    const BridgeParams& p,
                    ModelVariant variant = ModelVariant::Convexified);
EnergyBreakdown energy_breakdown(const ModalState& s, const CableGeometry& geom,
                                 const BridgeParams& p,
                                 ModelVariant variant = ModelVariant::Convexified);

/// Fraction of the span covered by affine intervals, per cable.
std::pair<double, double> slackening_fraction(const EnvelopeResult& env_alpha,
                                              const EnvelopeResult& env_beta,
                                              double L);

}  // namespace bridgesim

#endif  // BRIDGESIM_CORE_BRIDGE_MODEL_HPP_
