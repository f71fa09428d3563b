#pragma once

#include "cxgeo/tensor.hpp"

#include <functional>
#include <optional>
#include <string>

namespace cxgeo {

// A point z = x + i t on the complex manifold in split real coordinates.
struct PhasePoint {
  Vector x;
  Vector t;

  PhasePoint() = default;
  PhasePoint(Vector x_, Vector t_) : x(std::move(x_)), t(std::move(t_)) {}
  static PhasePoint origin(int n) { return {Vector::Zero(n), Vector::Zero(n)}; }

  int dim() const { return static_cast<int>(x.size()); }

  // Throws DimensionMismatch / DomainError when the invariants fail.
  void validate() const;
};

// Split form g = gR + i gI of a Hermitian metric at one point.
struct MetricSample {
  Matrix gR;
  Matrix gI;

  int dim() const { return static_cast<int>(gR.rows()); }
  CMatrix complex() const;

  // Real 2n x 2n form [[gR, gI], [-gI, gR]] acting on (dx, dt).
  Matrix real_form() const;
};

// Metric values plus all first partials. Layout [gamma][alpha][beta]:
// dx_gR(c, a, b) = d/dx^c gR_{a b}, and so on for the other three arrays.
struct MetricJet {
  MetricSample sample;
  Tensor3 dx_gR;
  Tensor3 dt_gR;
  Tensor3 dx_gI;
  Tensor3 dt_gI;

  int dim() const { return sample.dim(); }
  static MetricJet zero(const MetricSample& sample);
};

// Raw user components; symmetry classes are not trusted.
struct RawComponents {
  Matrix gR;
  Matrix gI;
};

// Immutable description of a metric. Evaluation functions must be pure.
struct MetricDefinition {
  std::string name;
  int dimension = 0;
  std::function<RawComponents(const PhasePoint&)> components;
  // Exact first derivatives, when the metric supplies them.
  std::function<MetricJet(const PhasePoint&)> analytic_jet;
  // Optional domain predicate; unrestricted when empty.
  std::function<bool(const PhasePoint&)> domain;
  // Canonical parameter string, used for run metadata hashes.
  std::string description;

  bool has_analytic_jet() const { return static_cast<bool>(analytic_jet); }
  bool contains(const PhasePoint& p) const { return !domain || domain(p); }
};

inline constexpr double kHermitianTolerance = 1e-12;

// Symmetrize gR and antisymmetrize gI in place.
void project_hermitian(MetricSample& sample);

// Evaluates, checks the symmetry classes (relative tolerance 1e-12), projects
// and checks positive definiteness of gR and of the full Hermitian g.
MetricSample evaluate_metric(const MetricDefinition& m, const PhasePoint& p);

// Validation of an already assembled sample (same checks as evaluate_metric).
MetricSample validate_sample(RawComponents raw, const std::string& origin);

void require_positive_definite(const MetricSample& sample, const std::string& origin);

// c * g, used for scale-invariance checks.
MetricDefinition scaled(const MetricDefinition& m, double c);

// gR + i s gI.
MetricDefinition with_imaginary_scaled(const MetricDefinition& m, double s);

// FNV-1a over name and description; stable across runs and platforms.
std::string metric_hash(const MetricDefinition& m);

}  // namespace cxgeo
