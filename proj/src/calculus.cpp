#include "cxgeo/calculus.hpp"

#include "cxgeo/errors.hpp"

#include <cmath>
#include <limits>

namespace cxgeo {

double default_step(DiffScheme scheme) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  switch (scheme) {
    case DiffScheme::central2: return std::cbrt(eps);
    case DiffScheme::central4:
    case DiffScheme::richardson: return std::pow(eps, 0.2);
  }
  return std::cbrt(eps);
}

DiffScheme parse_diff_scheme(const std::string& name) {
  if (name == "central2") return DiffScheme::central2;
  if (name == "central4") return DiffScheme::central4;
  if (name == "richardson") return DiffScheme::richardson;
  throw UnknownIdentifier("difference scheme '" + name + "'");
}

std::string to_string(DiffScheme scheme) {
  switch (scheme) {
    case DiffScheme::central2: return "central2";
    case DiffScheme::central4: return "central4";
    case DiffScheme::richardson: return "richardson";
  }
  return "?";
}

namespace {

RawComponents raw_at(const MetricDefinition& m, const PhasePoint& p) {
  if (!m.contains(p))
    throw DomainError("finite-difference stencil point leaves the domain of metric '" + m.name + "'");
  return m.components(p);
}

struct Pair {
  Matrix r;
  Matrix i;
};

// Central difference of (gR, gI) along one coordinate with stencil offset h.
Pair central(const MetricDefinition& m, const PhasePoint& p, int c, bool along_t, double h) {
  PhasePoint plus = p;
  PhasePoint minus = p;
  Vector& vp = along_t ? plus.t : plus.x;
  Vector& vm = along_t ? minus.t : minus.x;
  vp(c) += h;
  vm(c) -= h;
  // Use the representable step actually taken.
  const double span = vp(c) - vm(c);
  const RawComponents fp = raw_at(m, plus);
  const RawComponents fm = raw_at(m, minus);
  return {(fp.gR - fm.gR) / span, (fp.gI - fm.gI) / span};
}

Pair derivative(const MetricDefinition& m, const PhasePoint& p, int c, bool along_t,
                const DiffConfig& cfg) {
  const double base = cfg.step > 0.0 ? cfg.step : default_step(cfg.scheme);
  const double coord = along_t ? p.t(c) : p.x(c);
  const double h = cfg.scaling == StepScaling::relative ? base * std::max(1.0, std::abs(coord)) : base;
  switch (cfg.scheme) {
    case DiffScheme::central2: return central(m, p, c, along_t, h);
    case DiffScheme::central4: {
      // (8 D(h) - 2 D(2h)) / 6 in terms of central quotients equals the
      // classic five-point stencil.
      const Pair d1 = central(m, p, c, along_t, h);
      const Pair d2 = central(m, p, c, along_t, 2.0 * h);
      return {(4.0 * d1.r - d2.r) / 3.0, (4.0 * d1.i - d2.i) / 3.0};
    }
    case DiffScheme::richardson: {
      const Pair coarse = central(m, p, c, along_t, h);
      const Pair fine = central(m, p, c, along_t, 0.5 * h);
      return {(4.0 * fine.r - coarse.r) / 3.0, (4.0 * fine.i - coarse.i) / 3.0};
    }
  }
  return central(m, p, c, along_t, h);
}

void store(Tensor3& dst, int c, const Matrix& value, bool antisymmetric) {
  const Matrix projected = antisymmetric ? Matrix(0.5 * (value - value.transpose()))
                                         : Matrix(0.5 * (value + value.transpose()));
  dst.set_slice(c, projected);
}

}  // namespace

MetricJet metric_jet(const MetricDefinition& m, const PhasePoint& p, const DiffConfig& cfg) {
  const MetricSample sample = evaluate_metric(m, p);
  if (cfg.use_analytic && m.has_analytic_jet()) {
    MetricJet j = m.analytic_jet(p);
    j.sample = sample;
    return j;
  }
  MetricJet j = MetricJet::zero(sample);
  for (int c = 0; c < m.dimension; ++c) {
    const Pair dx = derivative(m, p, c, false, cfg);
    const Pair dt = derivative(m, p, c, true, cfg);
    store(j.dx_gR, c, dx.r, false);
    store(j.dx_gI, c, dx.i, true);
    store(j.dt_gR, c, dt.r, false);
    store(j.dt_gI, c, dt.i, true);
  }
  for (const Tensor3* t : {&j.dx_gR, &j.dt_gR, &j.dx_gI, &j.dt_gI})
    for (double v : t->data())
      if (!std::isfinite(v)) throw DomainError("metric derivative is not finite");
  return j;
}

CMatrix wirtinger_combination(const MetricJet& jet, Wirtinger kind, int gamma) {
  const int n = jet.dim();
  if (gamma < 0 || gamma >= n)
    throw DimensionMismatch("Wirtinger index " + std::to_string(gamma) + " outside 0.." +
                            std::to_string(n - 1));
  const Matrix dxR = jet.dx_gR.slice(gamma);
  const Matrix dtR = jet.dt_gR.slice(gamma);
  const Matrix dxI = jet.dx_gI.slice(gamma);
  const Matrix dtI = jet.dt_gI.slice(gamma);
  CMatrix out(n, n);
  if (kind == Wirtinger::holo) {
    out.real() = 0.5 * (dxR + dtI);
    out.imag() = 0.5 * (dxI - dtR);
  } else {
    out.real() = 0.5 * (dxR - dtI);
    out.imag() = 0.5 * (dxI + dtR);
  }
  return out;
}

}  // namespace cxgeo
