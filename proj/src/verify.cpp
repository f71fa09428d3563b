#include "cxgeo/verify.hpp"

#include "cxgeo/errors.hpp"
#include "cxgeo/neumann.hpp"
#include "cxgeo/random.hpp"
#include "cxgeo/reductions.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <ostream>

namespace cxgeo {

namespace {

using Lines = std::vector<CheckLine>;

CheckLine below(const std::string& check, const std::string& item, double value, double threshold,
                std::string detail = {}) {
  return {check, item, value < threshold ? CheckStatus::pass : CheckStatus::fail, value, threshold, std::move(detail)};
}

CheckLine within(const std::string& check, const std::string& item, double value, double lo, double hi) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "expected in [%g, %g]", lo, hi);
  return {check, item, value >= lo && value <= hi ? CheckStatus::pass : CheckStatus::fail, value, hi, buf};
}

CheckLine info(const std::string& check, const std::string& item, double value, std::string detail = {}) {
  return {check, item, CheckStatus::info, value, 0.0, std::move(detail)};
}

PhasePoint random_point(std::mt19937_64& rng, int n, double extent) {
  return {uniform_vector(rng, n, -extent, extent), uniform_vector(rng, n, -extent, extent)};
}

const Scenario* scenario_of(const VerifyContext& ctx) { return ctx.scenario; }

// ---------------------------------------------------------------- cor1

Lines check_cor1(const VerifyContext& ctx) {
  const std::string name = "cor1";
  const Scenario* sc = scenario_of(ctx);
  MetricDefinition m = real_diagonal();
  ProjectiveGeodesicState s;
  s.x = Vector::Constant(4, 0.3);
  s.t = Vector::Constant(4, 0.1);
  s.dx = (Vector(4) << 0.0, 0.6, -0.4, 0.5).finished();
  s.dt = Vector::Unit(4, 0) * 0.7;
  IntegratorConfig cfg;
  DiffConfig diff;
  if (sc) {
    m = sc->metric;
    s = {sc->initial.x, sc->dx, sc->initial.t, sc->dt, 0.0};
    cfg = sc->integrator;
    diff = sc->diff;
  }
  const int n = m.dimension;
  Lines out;
  const MetricJet jet0 = metric_jet(m, PhasePoint(s.x, s.t), diff);
  const double hyp = std::max({real_slice_violation(jet0), max_abs(jet0.sample.gI)});
  out.push_back(below(name, "real metric with the derivative constraints at start", hyp, kHypothesisTolerance));
  double data = std::abs(s.dx(0));
  for (int c = 1; c < n; ++c) data = std::max(data, std::abs(s.dt(c)));
  out.push_back(below(name, "initial data has Dx1 = 0 and Dt = (Dt1, 0, ...)", data, 1e-15));
  if (out[0].status == CheckStatus::fail || out[1].status == CheckStatus::fail) return out;

  const Trajectory proj = integrate_projective(m, s, cfg, diff);
  const PhasePoint base(s.x, s.t);
  Vector y0 = s.x;
  Vector dy0 = s.dx;
  y0(0) = s.t(0);
  dy0(0) = s.dt(0);
  const Trajectory oracle = embed_real_slice(classical_geodesic_oracle(real_slice_metric(m, base), y0, dy0, cfg), base);
  double dev = 0.0;
  for (std::size_t k = 0; k < proj.samples.size() && k < oracle.samples.size(); ++k) {
    const TrajectorySample& a = proj.samples[k];
    const TrajectorySample& b = oracle.samples[k];
    dev = std::max({dev, max_abs(a.x - b.x), max_abs(a.t - b.t), max_abs(a.dx - b.dx)});
  }
  if (proj.samples.size() != oracle.samples.size()) dev = INFINITY;
  out.push_back(below(name, "max deviation vs classical Christoffel oracle", dev, 1e-8));
  return out;
}

// ---------------------------------------------------------------- cor2

Lines check_cor2(const VerifyContext& ctx) {
  const std::string name = "cor2";
  double bz = 1.0;
  if (const Scenario* sc = scenario_of(ctx); sc && sc->metric_catalog == "uniform-b") {
    if (auto it = sc->metric_params.find("b"); it != sc->metric_params.end()) {
      if (it->second.size() != 3 || it->second[0] != 0.0 || it->second[1] != 0.0 || it->second[2] <= 0.0)
        throw HypothesisViolation("cor2 circle check needs b = (0, 0, b) with b > 0");
      bz = it->second[2];
    }
  }
  const double v = 0.1;
  const double radius = v / bz;
  const double period = 2.0 * std::numbers::pi / bz;
  const MetricDefinition m = uniform_b({0.0, 0.0, bz});
  Lines out;

  // Circle centred on the origin of the (x2, x3) plane.
  ProjectiveGeodesicState s{Vector::Zero(4), Vector::Zero(4), Vector::Zero(4), Vector::Unit(4, 0)};
  s.x(2) = -radius;
  s.dx(1) = v;
  IntegratorConfig cfg;
  cfg.step = 1e-3;
  cfg.tau_end = period;
  const Trajectory traj = integrate_projective(m, s, cfg);
  double radius_err = 0.0;
  for (const TrajectorySample& p : traj.samples)
    radius_err = std::max(radius_err, std::abs(std::hypot(p.x(1), p.x(2)) - radius) / radius);
  const Vector& end = traj.samples.back().x;
  const double phase = std::atan2(end(2), end(1)) - std::atan2(s.x(2), s.x(1));
  const double wrapped = std::remainder(phase, 2.0 * std::numbers::pi);
  out.push_back(below(name, "circle radius v/b, relative error", radius_err, 1e-4));
  out.push_back(below(name, "period 2 pi/b, relative error", std::abs(wrapped) / (2.0 * std::numbers::pi), 1e-4));

  std::mt19937_64 rng(ctx.seed);
  const Eigen::Vector3d b(0.0, 0.0, bz);
  double magnetic_err = 0.0;
  for (int k = 0; k < 100; ++k) {
    ProjectiveGeodesicState r{uniform_vector(rng, 4, -1, 1), uniform_vector(rng, 4, -1, 1), uniform_vector(rng, 4, -1, 1),
                              Vector::Unit(4, 0)};
    const LorentzDecomposition d = lorentz_field(m, r);
    const Eigen::Vector3d vel(r.dx(1), r.dx(2), r.dx(3));
    const Eigen::Vector3d expected = b.cross(vel);
    magnetic_err = std::max({magnetic_err, std::abs(d.magnetic(0)), (d.magnetic.tail(3) - expected).cwiseAbs().maxCoeff(),
                             max_abs(d.gravitation), max_abs(d.electric)});
  }
  out.push_back(below(name, "L magnetic part = B x v, G = 0 (100 states)", magnetic_err, 1e-12));

  auto residual_at = [&](double scale) {
    const MetricDefinition ms = with_imaginary_scaled(m, scale);
    std::mt19937_64 r2(ctx.seed + 1);
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
      ProjectiveGeodesicState r{uniform_vector(r2, 4, -1, 1), uniform_vector(r2, 4, -1, 1),
                                uniform_vector(r2, 4, -1, 1), Vector::Unit(4, 0)};
      worst = std::max(worst, lorentz_field(ms, r).residual);
    }
    return worst;
  };
  const double r1 = residual_at(0.1);
  const double r2 = residual_at(0.05);
  out.push_back(info(name, "residual |D2x - (G + L)| at gI scale 0.1", r1));
  out.push_back(info(name, "residual |D2x - (G + L)| at gI scale 0.05", r2));
  out.push_back(within(name, "residual drop when gI scale halves", r1 / r2, 3.5, 4.5));
  return out;
}

// ---------------------------------------------------------------- unit-speed

Lines check_unit_speed(const VerifyContext& ctx) {
  const std::string name = "unit-speed";
  std::vector<MetricDefinition> metrics;
  ComplexGeodesicState start{PhasePoint(Vector::Constant(4, 0.3), Vector::Constant(4, 0.2)), Vector::Constant(4, 1.0),
                             Vector::Constant(4, 0.5)};
  DiffConfig diff;
  const Scenario* sc = scenario_of(ctx);
  if (sc) {
    metrics.push_back(sc->metric);
    start = {sc->initial, sc->dx, sc->dt, 0.0};
    diff = sc->diff;
  } else {
    metrics = catalog_metrics();
  }
  auto drift = [&](const MetricDefinition& m, double step) {
    IntegratorConfig cfg;
    cfg.step = step;
    const Trajectory traj = integrate_complex(m, start, cfg, diff);
    double worst = 0.0;
    for (const TrajectorySample& s : traj.samples) worst = std::max(worst, std::abs(s.speed * s.speed - 1.0));
    return worst;
  };
  Lines out;
  for (const MetricDefinition& m : metrics) {
    out.push_back(below(name, m.name + ": drift at dtau = 1e-3", drift(m, 1e-3), 1e-6));
    // The order check needs truncation error well above round-off.
    const double coarse = drift(m, 0.02);
    const double fine = drift(m, 0.01);
    if (coarse > 1e-12)
      out.push_back(within(name, m.name + ": drift ratio dtau 0.02 -> 0.01", coarse / fine, 12.0, 20.0));
    else
      out.push_back(info(name, m.name + ": drift at dtau = 0.02 (round-off level, no order check)", coarse));
  }
  return out;
}

// ---------------------------------------------------------------- route-equivalence

Lines check_route_equivalence(const VerifyContext& ctx) {
  const std::string name = "route-equivalence";
  const Scenario* sc = scenario_of(ctx);
  RandomTrigOptions opt;
  opt.seed = ctx.seed;
  const MetricDefinition m = sc ? sc->metric : random_trig(opt);
  const DiffConfig diff = sc ? sc->diff : DiffConfig{};
  std::mt19937_64 rng(ctx.seed);
  double direct = 0.0;
  double upsilon = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const PhasePoint p = random_point(rng, m.dimension, 3.0);
    const Vector dx = uniform_vector(rng, m.dimension, -1, 1);
    const Vector dt = uniform_vector(rng, m.dimension, -1, 1);
    const MetricJet jet = metric_jet(m, p, diff);
    const Vector a = projective_rhs_direct(jet, dx, dt);
    direct = std::max(direct, max_abs(a - complex_rhs(jet, dx, dt).d2x));
    upsilon = std::max(upsilon, max_abs(projective_rhs_upsilon(jet, dx, dt) - a));
  }
  return {below(name, m.name + ": direct route vs complex solve (1000 states)", direct, 1e-10),
          info(name, m.name + ": upsilon route vs direct route (1000 states)", upsilon)};
}

// ---------------------------------------------------------------- neumann

MetricSample contrived_sample(std::mt19937_64& rng, int n, double target_norm) {
  Matrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) a(i, k) = uniform(rng, -1, 1);
  MetricSample s{Matrix::Identity(n, n) + 0.1 * (a + a.transpose()), Matrix::Zero(n, n)};
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) s.gI(i, k) = uniform(rng, -1, 1);
  s.gI = 0.5 * (s.gI - s.gI.transpose()).eval();
  // The iteration matrix is quadratic in gI.
  const double norm = neumann_contraction_norm(s, link_tensor(s));
  s.gI *= std::sqrt(target_norm / norm);
  return s;
}

Lines check_neumann(const VerifyContext& ctx) {
  const std::string name = "neumann";
  std::mt19937_64 rng(ctx.seed);
  Lines out;
  double worst = 0.0;
  int max_terms_used = 0;
  double norm_seen = 0.0;
  for (int k = 0; k < 20; ++k) {
    const MetricSample s = contrived_sample(rng, 4, 0.5);
    const LinkTensor link = link_tensor(s);
    const Vector rhs = uniform_vector(rng, 4, -1, 1);
    const NeumannResult r = neumann_solve(s, link, rhs, 30, 2e-9);
    const Vector exact = mass_matrix(s, link).partialPivLu().solve(rhs);
    worst = std::max(worst, max_abs(r.solution - exact));
    max_terms_used = std::max(max_terms_used, r.terms);
    norm_seen = std::max(norm_seen, r.norm);
  }
  out.push_back(below(name, "agreement with LU at norm 0.5 (<= 30 terms)", worst, 1e-8,
                      "terms used <= " + std::to_string(max_terms_used)));
  {
    MetricSample s{Matrix::Identity(4, 4), Matrix::Zero(4, 4)};
    const NeumannResult r = neumann_solve(s, link_tensor(s), Vector::Ones(4));
    out.push_back(below(name, "gI = 0 converges in one term", std::abs(r.terms - 1.0), 0.5));
  }
  bool raised = false;
  double big_norm = 0.0;
  try {
    const MetricSample s = contrived_sample(rng, 4, 1.5);
    big_norm = neumann_contraction_norm(s, link_tensor(s));
    neumann_solve(s, link_tensor(s), Vector::Ones(4));
  } catch (const NotContractive&) {
    raised = true;
  }
  out.push_back({name, "NotContractive raised at norm 1.5", raised ? CheckStatus::pass : CheckStatus::fail, big_norm,
                 1.0, raised ? "" : "no exception"});
  return out;
}

// ---------------------------------------------------------------- prop-residuals

Lines check_prop_residuals(const VerifyContext& ctx) {
  const std::string name = "prop-residuals";
  RandomTrigOptions flat;
  flat.seed = ctx.seed;
  flat.t_dependent = false;
  flat.amplitude = 0.1;
  RandomTrigOptions generic = flat;
  generic.t_dependent = true;
  std::vector<MetricDefinition> subclass{random_trig(flat), uniform_b({0.1, -0.05, 0.2}), real_diagonal()};
  std::mt19937_64 rng(ctx.seed);
  double p2_first = 0.0;
  double p2_second = 0.0;
  double p2_sym = 0.0;
  double p3 = 0.0;
  for (const MetricDefinition& m : subclass) {
    for (int k = 0; k < 100; ++k) {
      const MetricJet jet = metric_jet(m, random_point(rng, m.dimension, 3.0));
      const Proposition2Residual r2 = proposition2_residual(jet);
      p2_first = std::max(p2_first, r2.first_raw_max);
      p2_second = std::max(p2_second, r2.second_raw_max);
      p2_sym = std::max(p2_sym, r2.symmetric_max());
      p3 = std::max(p3, proposition3_residual(jet).raw_max);
    }
  }
  const std::string scope = " (t-independent metrics, 300 points)";
  Lines out{below(name, "primary decomposition 1, raw" + scope, p2_first, 1e-10),
            below(name, "primary decomposition 2, raw" + scope, p2_second, 1e-10),
            below(name, "primary decompositions, part symmetric in (a, b)" + scope, p2_sym, 1e-10),
            below(name, "secondary decomposition, raw" + scope, p3, 1e-10)};

  const MetricDefinition g = random_trig(generic);
  double g2 = 0.0;
  double g2s = 0.0;
  double g3 = 0.0;
  for (int k = 0; k < 100; ++k) {
    const MetricJet jet = metric_jet(g, random_point(rng, g.dimension, 3.0));
    const Proposition2Residual r2 = proposition2_residual(jet);
    g2 = std::max(g2, r2.raw_max());
    g2s = std::max(g2s, r2.symmetric_max());
    g3 = std::max(g3, proposition3_residual(jet).raw_max);
  }
  out.push_back(info(name, "primary decompositions, raw (t-dependent random-trig)", g2));
  out.push_back(info(name, "primary decompositions, symmetric part (t-dependent random-trig)", g2s));
  out.push_back(info(name, "secondary decomposition, raw (t-dependent random-trig)", g3));
  return out;
}

using CheckFn = std::function<Lines(const VerifyContext&)>;

const std::map<std::string, CheckFn>& registry() {
  static const std::map<std::string, CheckFn> r{
      {"cor1", check_cor1},
      {"cor2", check_cor2},
      {"unit-speed", check_unit_speed},
      {"route-equivalence", check_route_equivalence},
      {"neumann", check_neumann},
      {"prop-residuals", check_prop_residuals},
  };
  return r;
}

}  // namespace

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names{"cor1", "cor2", "unit-speed", "route-equivalence", "neumann",
                                              "prop-residuals"};
  return names;
}

bool is_suite_name(const std::string& name) { return name == "all" || registry().count(name) > 0; }

std::vector<std::string> resolve_suite(const std::string& name) {
  if (name == "all") return check_names();
  if (registry().count(name)) return {name};
  throw UnknownIdentifier("no check or suite named '" + name + "'");
}

std::vector<CheckLine> run_check(const std::string& name, const VerifyContext& ctx) {
  const auto it = registry().find(name);
  if (it == registry().end()) throw UnknownIdentifier("no check named '" + name + "'");
  try {
    return it->second(ctx);
  } catch (const Error& e) {
    if (e.category() == ErrorCategory::parse || e.category() == ErrorCategory::io) throw;
    return {{name, "check raised an error", CheckStatus::fail, 0.0, 0.0, e.what()}};
  }
}

std::string to_string(CheckStatus status) {
  switch (status) {
    case CheckStatus::pass: return "PASS";
    case CheckStatus::fail: return "FAIL";
    case CheckStatus::info: return "INFO";
  }
  return "?";
}

void print_check_table(std::ostream& out, const std::vector<CheckLine>& lines) {
  std::size_t check_w = 5;
  std::size_t item_w = 4;
  for (const CheckLine& l : lines) {
    check_w = std::max(check_w, l.check.size());
    item_w = std::max(item_w, l.item.size());
  }
  char buf[64];
  auto pad = [](const std::string& s, std::size_t w) { return s + std::string(w - std::min(w, s.size()), ' '); };
  out << pad("check", check_w) << "  " << pad("item", item_w) << "  status  value       threshold\n";
  for (const CheckLine& l : lines) {
    out << pad(l.check, check_w) << "  " << pad(l.item, item_w) << "  " << pad(to_string(l.status), 6) << "  ";
    std::snprintf(buf, sizeof buf, "%-10.3e", l.value);
    out << buf;
    if (l.status != CheckStatus::info) {
      std::snprintf(buf, sizeof buf, "  %-9.3g", l.threshold);
      out << buf;
    }
    if (!l.detail.empty()) out << "  " << l.detail;
    out << '\n';
  }
}

bool all_passed(const std::vector<CheckLine>& lines) {
  for (const CheckLine& l : lines)
    if (l.status == CheckStatus::fail) return false;
  return true;
}

}  // namespace cxgeo
