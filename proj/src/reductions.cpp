#include "cxgeo/reductions.hpp"

#include "cxgeo/errors.hpp"

#include <cmath>

namespace cxgeo {

namespace {

Eigen::LLT<Matrix> factor(const Matrix& g, const std::string& what) {
  Eigen::LLT<Matrix> llt(g);
  if (llt.info() != Eigen::Success) throw SingularMetric(what + " is not positive definite");
  return llt;
}

// Lowered symbols from derivative array d(a, nu, b) = d_a g_{nu b}, raised with g.
Tensor3 raise_christoffel(const Matrix& g, const Tensor3& d, const std::string& what) {
  const int n = d.dim();
  const Eigen::LLT<Matrix> llt = factor(g, what);
  Tensor3 out(n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      Vector lowered(n);
      for (int nu = 0; nu < n; ++nu) lowered(nu) = 0.5 * (d(a, nu, b) + d(b, nu, a) - d(nu, a, b));
      const Vector raised = llt.solve(lowered);
      for (int mu = 0; mu < n; ++mu) out(mu, a, b) = raised(mu);
    }
  }
  return out;
}

Vector contract(const Tensor3& gamma, const Vector& v) {
  const int n = gamma.dim();
  Vector out = Vector::Zero(n);
  for (int mu = 0; mu < n; ++mu)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) out(mu) -= gamma(mu, a, b) * v(a) * v(b);
  return out;
}

}  // namespace

Tensor3 christoffel(const RealMetric& metric, const Vector& y, double h) {
  const int n = metric.dimension;
  if (y.size() != n) throw DimensionMismatch("point does not match metric '" + metric.name + "'");
  Tensor3 d(n);
  for (int a = 0; a < n; ++a) {
    auto at = [&](double offset) {
      Vector q = y;
      q(a) += offset;
      return metric.g(q);
    };
    const Matrix da = (8.0 * (at(h) - at(-h)) - (at(2.0 * h) - at(-2.0 * h))) / (12.0 * h);
    for (int nu = 0; nu < n; ++nu)
      for (int b = 0; b < n; ++b) d(a, nu, b) = da(nu, b);
  }
  return raise_christoffel(metric.g(y), d, "metric '" + metric.name + "'");
}

Vector classical_acceleration(const RealMetric& metric, const Vector& y, const Vector& dy, double h) {
  return contract(christoffel(metric, y, h), dy);
}

Trajectory classical_geodesic_oracle(const RealMetric& metric, const Vector& y0, const Vector& dy0,
                                     const IntegratorConfig& cfg) {
  const int n = metric.dimension;
  if (y0.size() != n || dy0.size() != n)
    throw DimensionMismatch("initial data does not match metric '" + metric.name + "'");
  Vector state(2 * n);
  state << y0, dy0;
  const OdeRhs rhs = [&metric, n](double, const Vector& s) {
    Vector out(2 * n);
    out << s.segment(n, n), classical_acceleration(metric, s.segment(0, n), s.segment(n, n));
    return out;
  };
  Trajectory traj{"classical", n, {}};
  for (const OdePoint& pt : solve_ode(rhs, state, cfg)) {
    TrajectorySample s;
    s.tau = pt.tau;
    s.x = pt.y.segment(0, n);
    s.dx = pt.y.segment(n, n);
    s.t = Vector::Zero(n);
    s.dt = Vector::Zero(n);
    const Matrix g = metric.g(s.x);
    s.speed = std::sqrt(std::max(0.0, s.dx.dot(g * s.dx)));
    const double rcond = reciprocal_condition(Eigen::PartialPivLU<Matrix>(g));
    s.h_condition = rcond > 0.0 ? 1.0 / rcond : INFINITY;
    traj.samples.push_back(std::move(s));
  }
  return traj;
}

RealMetric sphere2() {
  return {"sphere2", 2, [](const Vector& y) {
            Matrix g = Matrix::Identity(2, 2);
            const double s = std::sin(y(0));
            g(1, 1) = s * s;
            return g;
          }};
}

RealMetric real_slice_metric(const MetricDefinition& m, const PhasePoint& base) {
  const int n = m.dimension;
  if (base.dim() != n) throw DimensionMismatch("base point does not match metric '" + m.name + "'");
  return {m.name + "/y-slice", n, [m, base](const Vector& y) {
            PhasePoint p = base;
            p.t(0) = y(0);
            for (int c = 1; c < p.dim(); ++c) p.x(c) = y(c);
            return evaluate_metric(m, p).gR;
          }};
}

Trajectory embed_real_slice(const Trajectory& classical, const PhasePoint& base) {
  const int n = base.dim();
  if (classical.dimension != n) throw DimensionMismatch("classical run and base point differ in dimension");
  Trajectory out{"projective", n, {}};
  for (const TrajectorySample& c : classical.samples) {
    TrajectorySample s = c;
    s.x = base.x;
    s.t = base.t;
    s.dx = Vector::Zero(n);
    s.dt = Vector::Zero(n);
    s.t(0) = c.x(0);
    s.dt(0) = c.dx(0);
    for (int k = 1; k < n; ++k) {
      s.x(k) = c.x(k);
      s.dx(k) = c.dx(k);
    }
    out.samples.push_back(std::move(s));
  }
  return out;
}

double real_slice_violation(const MetricJet& jet) {
  const int n = jet.dim();
  double worst = std::max(max_abs(jet.dx_gR.slice(0)), max_abs(jet.dx_gI.slice(0)));
  for (int c = 1; c < n; ++c)
    worst = std::max({worst, max_abs(jet.dt_gR.slice(c)), max_abs(jet.dt_gI.slice(c))});
  return worst;
}

LorentzDecomposition lorentz_field(const MetricJet& jet, const Vector& dx, const Vector& dt) {
  const int n = jet.dim();
  if (dx.size() != n || dt.size() != n) throw DimensionMismatch("velocity does not match metric dimension");
  const Vector e1 = Vector::Unit(n, 0);
  if (max_abs(dt - e1) > kHypothesisTolerance)
    throw HypothesisViolation("the Lorentz decomposition needs Dt = (1, 0, ..., 0)");
  const double violation = real_slice_violation(jet);
  if (violation > kHypothesisTolerance)
    throw HypothesisViolation("metric depends on x1 or on t2..tn (max derivative " + std::to_string(violation) + ")");

  LorentzDecomposition out;
  out.acceleration = projective_rhs_direct(jet, dx, dt);

  // y = (t1, x2, ..., xn): d_{y1} = d^t_1, d_{yk} = d^x_k.
  Tensor3 d(n);
  for (int a = 0; a < n; ++a)
    for (int nu = 0; nu < n; ++nu)
      for (int b = 0; b < n; ++b) d(a, nu, b) = a == 0 ? jet.dt_gR(0, nu, b) : jet.dx_gR(a, nu, b);
  Vector dy = dx;
  dy(0) = dt(0);
  out.gravitation = contract(raise_christoffel(jet.sample.gR, d, "gR"), dy);

  const Eigen::LLT<Matrix> llt = factor(jet.sample.gR, "gR");
  const SecondaryField f = secondary_field(jet);
  const PrimaryField phi = primary_field(jet);
  Vector magnetic_lowered = Vector::Zero(n);
  Vector electric_lowered(n);
  for (int g = 0; g < n; ++g) {
    for (int b = 0; b < n; ++b) magnetic_lowered(g) -= f.fx(0, g, b) * dx(b);
    electric_lowered(g) = -phi.phi_mm(g, 0, 0);
  }
  out.magnetic = llt.solve(magnetic_lowered);
  out.electric = llt.solve(electric_lowered);
  out.lorentz = out.magnetic + out.electric;
  out.residual = max_abs(out.acceleration - out.gravitation - out.lorentz);
  return out;
}

LorentzDecomposition lorentz_field(const MetricDefinition& m, const ProjectiveGeodesicState& s,
                                   const DiffConfig& cfg) {
  return lorentz_field(metric_jet(m, PhasePoint(s.x, s.t), cfg), s.dx, s.dt);
}

}  // namespace cxgeo
