#include "cxgeo/geometry.hpp"

#include "cxgeo/errors.hpp"

#include <cstdint>
#include <cstdio>

namespace cxgeo {

void PhasePoint::validate() const {
  if (x.size() != t.size())
    throw DimensionMismatch("x has length " + std::to_string(x.size()) + " but t has length " +
                            std::to_string(t.size()));
  if (x.size() < 1) throw DimensionMismatch("phase point must have dimension >= 1");
  if (!x.allFinite() || !t.allFinite()) throw DomainError("phase point has non-finite entries");
}

CMatrix MetricSample::complex() const {
  CMatrix g(dim(), dim());
  g.real() = gR;
  g.imag() = gI;
  return g;
}

Matrix MetricSample::real_form() const {
  const int n = dim();
  Matrix G(2 * n, 2 * n);
  G.topLeftCorner(n, n) = gR;
  G.topRightCorner(n, n) = gI;
  G.bottomLeftCorner(n, n) = -gI;
  G.bottomRightCorner(n, n) = gR;
  return G;
}

MetricJet MetricJet::zero(const MetricSample& sample) {
  const int n = sample.dim();
  return {sample, Tensor3(n), Tensor3(n), Tensor3(n), Tensor3(n)};
}

void project_hermitian(MetricSample& s) {
  s.gR = (0.5 * (s.gR + s.gR.transpose())).eval();
  s.gI = (0.5 * (s.gI - s.gI.transpose())).eval();
}

void require_positive_definite(const MetricSample& s, const std::string& origin) {
  Eigen::LLT<Matrix> real_part(s.gR);
  if (real_part.info() != Eigen::Success)
    throw NotPositiveDefinite("gR is not positive definite (" + origin + ")");
  Eigen::LLT<CMatrix> full(s.complex());
  if (full.info() != Eigen::Success)
    throw NotPositiveDefinite("Hermitian g = gR + i gI is not positive definite (" + origin + ")");
}

MetricSample validate_sample(RawComponents raw, const std::string& origin) {
  if (raw.gR.rows() != raw.gR.cols() || raw.gI.rows() != raw.gI.cols() ||
      raw.gR.rows() != raw.gI.rows())
    throw DimensionMismatch("metric components are not square matrices of equal size (" + origin +
                            ")");
  if (!raw.gR.allFinite() || !raw.gI.allFinite())
    throw DomainError("metric components are not finite (" + origin + ")");

  const double scale = std::max(1.0, std::max(max_abs(raw.gR), max_abs(raw.gI)));
  const double asym = max_abs(Matrix(raw.gR - raw.gR.transpose()));
  const double sym = max_abs(Matrix(raw.gI + raw.gI.transpose()));
  if (asym > kHermitianTolerance * scale)
    throw NonHermitian("gR is not symmetric, deviation " + std::to_string(asym) + " (" + origin +
                       ")");
  if (sym > kHermitianTolerance * scale)
    throw NonHermitian("gI is not antisymmetric, deviation " + std::to_string(sym) + " (" +
                       origin + ")");

  MetricSample s{std::move(raw.gR), std::move(raw.gI)};
  project_hermitian(s);
  require_positive_definite(s, origin);
  return s;
}

MetricSample evaluate_metric(const MetricDefinition& m, const PhasePoint& p) {
  p.validate();
  if (p.dim() != m.dimension)
    throw DimensionMismatch("metric '" + m.name + "' has dimension " + std::to_string(m.dimension) +
                            " but point has dimension " + std::to_string(p.dim()));
  if (!m.contains(p)) throw DomainError("point outside the domain of metric '" + m.name + "'");
  return validate_sample(m.components(p), "metric '" + m.name + "'");
}

MetricDefinition scaled(const MetricDefinition& m, double c) {
  MetricDefinition out = m;
  out.name = m.name + "*scaled";
  out.description = m.description + ";scale=" + std::to_string(c);
  out.components = [inner = m.components, c](const PhasePoint& p) {
    RawComponents r = inner(p);
    r.gR *= c;
    r.gI *= c;
    return r;
  };
  if (m.analytic_jet) {
    out.analytic_jet = [inner = m.analytic_jet, c](const PhasePoint& p) {
      MetricJet j = inner(p);
      j.sample.gR *= c;
      j.sample.gI *= c;
      j.dx_gR *= c;
      j.dt_gR *= c;
      j.dx_gI *= c;
      j.dt_gI *= c;
      return j;
    };
  }
  return out;
}

MetricDefinition with_imaginary_scaled(const MetricDefinition& m, double s) {
  MetricDefinition out = m;
  out.name = m.name + "*imag-scaled";
  out.description = m.description + ";imag_scale=" + std::to_string(s);
  out.components = [inner = m.components, s](const PhasePoint& p) {
    RawComponents r = inner(p);
    r.gI *= s;
    return r;
  };
  if (m.analytic_jet) {
    out.analytic_jet = [inner = m.analytic_jet, s](const PhasePoint& p) {
      MetricJet j = inner(p);
      j.sample.gI *= s;
      j.dx_gI *= s;
      j.dt_gI *= s;
      return j;
    };
  }
  return out;
}

std::string metric_hash(const MetricDefinition& m) {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](const std::string& s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ULL;
    }
  };
  mix(m.name);
  mix("|");
  mix(m.description);
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace cxgeo
