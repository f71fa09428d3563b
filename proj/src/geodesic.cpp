#include "cxgeo/geodesic.hpp"

#include "cxgeo/errors.hpp"

#include <cmath>

namespace cxgeo {

double speed_squared(const MetricSample& s, const Vector& dx, const Vector& dt) {
  return dx.dot(s.gR * dx) + dt.dot(s.gR * dt) + 2.0 * dx.dot(s.gI * dt);
}

CVector complex_force(const MetricJet& jet, const CVector& dz) {
  const int n = jet.dim();
  std::vector<CMatrix> holo;
  std::vector<CMatrix> anti;
  holo.reserve(n);
  anti.reserve(n);
  for (int c = 0; c < n; ++c) {
    holo.push_back(wirtinger_combination(jet, Wirtinger::holo, c));
    anti.push_back(wirtinger_combination(jet, Wirtinger::antiholo, c));
  }
  const CVector dz_bar = dz.conjugate();
  CVector out = CVector::Zero(n);
  for (int b = 0; b < n; ++b) {
    // sum_a (d_bbar g)_{a g} Dz^a and sum_c (d_b g)_{c g} Dz^c, as vectors over g
    out -= dz_bar(b) * (anti[b].transpose() * dz);
    out -= dz(b) * (holo[b].transpose() * dz);
  }
  for (int g = 0; g < n; ++g) out(g) += (dz.transpose() * anti[g] * dz_bar).value();
  return out;
}

namespace {

CVector to_complex(const Vector& re, const Vector& im) {
  CVector z(re.size());
  z.real() = re;
  z.imag() = im;
  return z;
}

PhasePoint projective_point(const ProjectiveGeodesicState& s) { return {s.x, s.t}; }

}  // namespace

Acceleration complex_rhs(const MetricJet& jet, const Vector& dx, const Vector& dt) {
  const CVector force = complex_force(jet, to_complex(dx, dt));
  // sum_mu g(mu, g) D2z^mu = force_g, i.e. g^T D2z = force.
  Eigen::PartialPivLU<CMatrix> lu(jet.sample.complex().transpose());
  const double rcond = reciprocal_condition(lu);
  if (!(rcond > 1.0 / kMaxCondition))
    throw SingularMetric("complex metric solve is ill-conditioned (rcond " + std::to_string(rcond) + ")");
  const CVector a = lu.solve(force);
  return {a.real(), a.imag()};
}

Acceleration complex_rhs(const MetricDefinition& m, const ComplexGeodesicState& s, const DiffConfig& cfg) {
  return complex_rhs(metric_jet(m, s.p, cfg), s.dx, s.dt);
}

Vector solve_mass_system(const Matrix& h, const Vector& force) {
  Eigen::PartialPivLU<Matrix> lu(h.transpose());
  const double rcond = reciprocal_condition(lu);
  if (!(rcond > 1.0 / kMaxCondition))
    throw SingularMassMatrix("mass matrix h is not invertible", rcond > 0.0 ? 1.0 / rcond : INFINITY);
  return lu.solve(force);
}

Vector projective_rhs_direct(const MetricJet& jet, const Vector& dx, const Vector& dt) {
  const CVector force = complex_force(jet, to_complex(dx, dt));
  const LinkTensor link = link_tensor(jet.sample);
  // real identity + sum_eta eps(eta, g) * imaginary identity_eta
  const Vector combined = force.real() + link.eps.transpose() * force.imag();
  return solve_mass_system(mass_matrix(jet.sample, link), combined);
}

Vector projective_rhs_direct(const MetricDefinition& m, const ProjectiveGeodesicState& s,
                             const DiffConfig& cfg) {
  return projective_rhs_direct(metric_jet(m, projective_point(s), cfg), s.dx, s.dt);
}

Vector projective_rhs_upsilon(const MetricJet& jet, const Vector& dx, const Vector& dt) {
  const ProjectiveCoefficients c = projective_coefficients(jet);
  return solve_mass_system(c.h, upsilon_force(c, dx, dt));
}

Vector projective_rhs_upsilon(const MetricDefinition& m, const ProjectiveGeodesicState& s,
                              const DiffConfig& cfg) {
  return projective_rhs_upsilon(metric_jet(m, projective_point(s), cfg), s.dx, s.dt);
}

namespace {

double mass_condition(const MetricSample& s) {
  const Matrix h = mass_matrix(s, link_tensor(s));
  Eigen::PartialPivLU<Matrix> lu(h);
  const double rcond = reciprocal_condition(lu);
  return rcond > 0.0 ? 1.0 / rcond : INFINITY;
}

TrajectorySample make_sample(const MetricDefinition& m, double tau, Vector x, Vector t, Vector dx, Vector dt) {
  TrajectorySample out;
  out.tau = tau;
  const MetricSample s = evaluate_metric(m, {x, t});
  out.speed = std::sqrt(std::max(0.0, speed_squared(s, dx, dt)));
  out.h_condition = mass_condition(s);
  out.x = std::move(x);
  out.t = std::move(t);
  out.dx = std::move(dx);
  out.dt = std::move(dt);
  return out;
}

}  // namespace

Trajectory integrate_complex(const MetricDefinition& m, ComplexGeodesicState initial,
                             const IntegratorConfig& icfg, const DiffConfig& dcfg, bool normalize) {
  const int n = m.dimension;
  initial.p.validate();
  if (initial.p.dim() != n || initial.dx.size() != n || initial.dt.size() != n)
    throw DimensionMismatch("initial state does not match metric dimension " + std::to_string(n));

  if (normalize) {
    const MetricSample s = evaluate_metric(m, initial.p);
    const double q = speed_squared(s, initial.dx, initial.dt);
    if (!(q > 0.0)) throw DomainError("initial complex velocity has zero length");
    const double scale = 1.0 / std::sqrt(q);
    initial.dx *= scale;
    initial.dt *= scale;
  }

  Vector y0(4 * n);
  y0 << initial.p.x, initial.p.t, initial.dx, initial.dt;
  const OdeRhs rhs = [&m, &dcfg, n](double, const Vector& y) {
    const PhasePoint p(y.segment(0, n), y.segment(n, n));
    const Acceleration a = complex_rhs(metric_jet(m, p, dcfg), y.segment(2 * n, n), y.segment(3 * n, n));
    Vector dy(4 * n);
    dy << y.segment(2 * n, 2 * n), a.d2x, a.d2t;
    return dy;
  };

  IntegratorConfig cfg = icfg;
  cfg.tau_begin = initial.tau;
  cfg.tau_end = initial.tau + (icfg.tau_end - icfg.tau_begin);
  Trajectory out{"complex", n, {}};
  for (const OdePoint& pt : solve_ode(rhs, y0, cfg))
    out.samples.push_back(make_sample(m, pt.tau, pt.y.segment(0, n), pt.y.segment(n, n),
                                      pt.y.segment(2 * n, n), pt.y.segment(3 * n, n)));
  return out;
}

Trajectory integrate_projective(const MetricDefinition& m, const ProjectiveGeodesicState& initial,
                                const IntegratorConfig& icfg, const DiffConfig& dcfg,
                                ProjectiveRoute route) {
  const int n = m.dimension;
  if (initial.x.size() != n || initial.dx.size() != n || initial.t.size() != n || initial.dt.size() != n)
    throw DimensionMismatch("initial state does not match metric dimension " + std::to_string(n));
  PhasePoint(initial.x, initial.t).validate();

  const double tau0 = initial.tau;
  auto t_at = [&initial, tau0](double tau) -> Vector { return initial.t + initial.dt * (tau - tau0); };

  Vector y0(2 * n);
  y0 << initial.x, initial.dx;
  const OdeRhs rhs = [&](double tau, const Vector& y) {
    const MetricJet jet = metric_jet(m, PhasePoint(y.segment(0, n), t_at(tau)), dcfg);
    const Vector dx = y.segment(n, n);
    const Vector a = route == ProjectiveRoute::direct ? projective_rhs_direct(jet, dx, initial.dt)
                                                      : projective_rhs_upsilon(jet, dx, initial.dt);
    Vector dy(2 * n);
    dy << dx, a;
    return dy;
  };

  IntegratorConfig cfg = icfg;
  cfg.tau_begin = tau0;
  cfg.tau_end = tau0 + (icfg.tau_end - icfg.tau_begin);
  Trajectory out{"projective", n, {}};
  for (const OdePoint& pt : solve_ode(rhs, y0, cfg))
    out.samples.push_back(make_sample(m, pt.tau, pt.y.segment(0, n), t_at(pt.tau), pt.y.segment(n, n), initial.dt));
  return out;
}

}  // namespace cxgeo
