#pragma once

#include "cxgeo/geodesic.hpp"

#include <functional>
#include <string>

namespace cxgeo {

// Real Riemannian metric on coordinates y; used by the classical oracle.
struct RealMetric {
  std::string name;
  int dimension = 0;
  std::function<Matrix(const Vector& y)> g;
};

// Textbook Christoffel symbols of the second kind, layout [mu][a][b]:
//   Gamma(mu, a, b) = 1/2 g^{mu nu} (d_a g_{nu b} + d_b g_{nu a} - d_nu g_{ab})
// Metric derivatives come from a five-point stencil with fixed step h, so the
// oracle shares no code with the jet machinery.
Tensor3 christoffel(const RealMetric& metric, const Vector& y, double h = 1e-3);

// -Gamma(mu, a, b) Dy^a Dy^b
Vector classical_acceleration(const RealMetric& metric, const Vector& y, const Vector& dy, double h = 1e-3);

// Classical geodesic y'' = -Gamma y' y' with the shared integrator core.
// Samples store y in `x` and Dy in `dx`; `t` and `dt` are zero.
Trajectory classical_geodesic_oracle(const RealMetric& metric, const Vector& y0, const Vector& dy0,
                                     const IntegratorConfig& cfg);

// Round sphere, y = (theta, phi), g = diag(1, sin^2 theta).
RealMetric sphere2();

// The gR block of `m` seen on y = (t1, x2, ..., xn); the remaining
// coordinates (x1 and t2..tn) are frozen at their values in `base`.
RealMetric real_slice_metric(const MetricDefinition& m, const PhasePoint& base);

// Maps a classical run on y = (t1, x2, ..., xn) back to projective form:
// x = (base.x1, y2, ...), t = (y1, base.t2, ...), Dx = (0, Dy2, ...), Dt = (Dy1, 0, ...).
Trajectory embed_real_slice(const Trajectory& classical, const PhasePoint& base);

// Largest violation of d^x_1 g = 0 and d^t_c g = 0 (c >= 2) over both gR and gI.
double real_slice_violation(const MetricJet& jet);

struct LorentzDecomposition {
  Vector acceleration;  // direct projective D2x
  Vector gravitation;   // G = -Gamma(gR on y) Dy Dy, y = (t1, x2, ..., xn)
  Vector magnetic;      // -gR^{-1} fx(1, ., b) Dx^b
  Vector electric;      // -gR^{-1} phi_mm(., 1, 1)
  Vector lorentz;       // magnetic + electric
  double residual = 0.0;  // max |acceleration - (G + L)|
};

inline constexpr double kHypothesisTolerance = 1e-10;

// Requires Dt = e1 and the derivative constraints above (HypothesisViolation).
LorentzDecomposition lorentz_field(const MetricDefinition& m, const ProjectiveGeodesicState& s,
                                   const DiffConfig& cfg = {});
LorentzDecomposition lorentz_field(const MetricJet& jet, const Vector& dx, const Vector& dt);

}  // namespace cxgeo
