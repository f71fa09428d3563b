#pragma once

#include "cxgeo/geometry.hpp"

namespace cxgeo {

enum class DiffScheme { central2, central4, richardson };

// relative: h_c = step * max(1, |coordinate c|); absolute: h_c = step.
enum class StepScaling { relative, absolute };

struct DiffConfig {
  DiffScheme scheme = DiffScheme::central2;
  double step = 0.0;  // 0 selects default_step(scheme)
  StepScaling scaling = StepScaling::relative;
  bool use_analytic = true;  // take the metric's exact jet when it has one
};

// cbrt(eps) for central2, eps^(1/5) for the fourth-order schemes.
double default_step(DiffScheme scheme);

DiffScheme parse_diff_scheme(const std::string& name);
std::string to_string(DiffScheme scheme);

// Value and first partials of gR, gI at p. Throws DomainError when a stencil
// point leaves the metric's domain, plus everything evaluate_metric throws.
MetricJet metric_jet(const MetricDefinition& m, const PhasePoint& p, const DiffConfig& cfg = {});

enum class Wirtinger { holo, antiholo };

// (d_gamma g)_{ab} or (d_gammabar g)_{ab} for g = gR + i gI, where
// d_gamma = (d/dx - i d/dt) / 2 and d_gammabar = (d/dx + i d/dt) / 2.
CMatrix wirtinger_combination(const MetricJet& jet, Wirtinger kind, int gamma);

}  // namespace cxgeo
