#pragma once

#include "cxgeo/calculus.hpp"
#include "cxgeo/geometry.hpp"

namespace cxgeo {

// Christoffel-pattern combinations 1/2 [d_g M_ab - d_a M_bg - d_b M_ag] of the
// four (x|t, gR|gI) derivative families. Layout [gamma][alpha][beta].
//   phi_pp: x-derivatives of gR    phi_pm: x-derivatives of gI
//   phi_mp: t-derivatives of gR    phi_mm: t-derivatives of gI
struct PrimaryField {
  Tensor3 phi_pp;
  Tensor3 phi_pm;
  Tensor3 phi_mp;
  Tensor3 phi_mm;
};

// fx(a, g, b) = d^x_g gI_ab - d^x_b gI_ag, ft likewise with t. Layout
// [alpha][gamma][beta]; antisymmetric in (gamma, beta).
struct SecondaryField {
  Tensor3 fx;
  Tensor3 ft;
};

// eps(eta, gamma) with sum_eta eps(eta, gamma) gR(mu, eta) = gI(mu, gamma),
// i.e. eps = gR^{-1} gI.
struct LinkTensor {
  Matrix eps;
  double norm_estimate = 0.0;  // spectral norm of gR^{-1} gI
};

// Coefficients of the projective geodesic
//   sum_mu h(mu, g) D2x^mu = U11(g,a,b) Dx^a Dx^b - U10(g,a,b) Dx^b Dt^a - U00(g,a,b) Dt^a Dt^b
// with h(mu, g) = gR(mu, g) + sum_eta eps(eta, g) gI(mu, eta).
struct ProjectiveCoefficients {
  Tensor3 upsilon11;
  Tensor3 upsilon10;
  Tensor3 upsilon00;
  Matrix h;
};

PrimaryField primary_field(const MetricJet& jet);
SecondaryField secondary_field(const MetricJet& jet);

// Throws SingularMetric when gR cannot be factorized.
LinkTensor link_tensor(const MetricSample& sample);

// max |sum_eta eps(eta, g) gR(mu, eta) - gI(mu, g)|
double link_contraction_residual(const MetricSample& sample, const LinkTensor& link);

Matrix mass_matrix(const MetricSample& sample, const LinkTensor& link);

ProjectiveCoefficients projective_coefficients(const MetricJet& jet);

// Quadratic form sum U11 Dx Dx - U10 Dx Dt - U00 Dt Dt (before solving with h).
Vector upsilon_force(const ProjectiveCoefficients& c, const Vector& dx, const Vector& dt);

// Residuals of the two Primary Field decompositions (LHS - RHS, complex,
// layout [gamma][alpha][beta]). Both identities only ever multiply symmetric
// velocity products, so the part symmetric in (alpha, beta) is reported
// separately from the raw array.
struct Proposition2Residual {
  ComplexTensor3 first;   // d_gbar g_ab - d_bbar g_ag - d_a g_bg  vs  phi_pp + i phi_pm + i/2 d^t_g gR_ab
  ComplexTensor3 second;  // d_gbar g_ab - d_bbar g_ag + d_a g_bg  vs  1/2 d^x_g gR_ab - phi_mm + i phi_mp
  double first_raw_max = 0.0;
  double second_raw_max = 0.0;
  double first_symmetric_max = 0.0;
  double second_symmetric_max = 0.0;

  double raw_max() const { return std::max(first_raw_max, second_raw_max); }
  double symmetric_max() const { return std::max(first_symmetric_max, second_symmetric_max); }
};

Proposition2Residual proposition2_residual(const MetricJet& jet);

// Residual of the Secondary Field decomposition
//   2 d_gbar gI_ab + i d^x_b g_ag + d^t_a g_bg  vs  fx(a,g,b) + d^t_a gI_bg - i ft(b,g,a) + i d^x_b gR_ag
// layout [gamma][alpha][beta].
struct Proposition3Residual {
  ComplexTensor3 residual;
  double raw_max = 0.0;
};

Proposition3Residual proposition3_residual(const MetricJet& jet);

// Everything the `fields` diagnostic dump reports at one point.
struct FieldSet {
  PhasePoint point;
  MetricJet jet;
  PrimaryField primary;
  SecondaryField secondary;
  LinkTensor link;
  ProjectiveCoefficients coefficients;
  Proposition2Residual prop2;
  Proposition3Residual prop3;
};

FieldSet field_set(const MetricDefinition& m, const PhasePoint& p, const DiffConfig& cfg = {});

}  // namespace cxgeo
