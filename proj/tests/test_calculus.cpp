#include "cxgeo/calculus.hpp"
#include "cxgeo/catalog.hpp"
#include "cxgeo/errors.hpp"
#include "cxgeo/metric_spec.hpp"

#include "support.hpp"

#include <doctest.h>

#include <cmath>

using namespace cxgeo;

namespace {

DiffConfig numeric(DiffScheme scheme = DiffScheme::central2, double step = 0.0,
                   StepScaling scaling = StepScaling::relative) {
  DiffConfig c;
  c.scheme = scheme;
  c.step = step;
  c.scaling = scaling;
  c.use_analytic = false;
  return c;
}

double jet_error(const MetricJet& a, const MetricJet& b) {
  return std::max({test::max_diff(a.dx_gR, b.dx_gR), test::max_diff(a.dt_gR, b.dt_gR),
                   test::max_diff(a.dx_gI, b.dx_gI), test::max_diff(a.dt_gI, b.dt_gI)});
}

}  // namespace

TEST_SUITE("calculus") {

TEST_CASE("euclidean jet vanishes") {
  for (const DiffConfig& cfg : {DiffConfig{}, numeric()}) {
    const MetricJet j = metric_jet(euclidean(4), PhasePoint(Vector::Constant(4, 0.7), Vector::Zero(4)), cfg);
    CHECK(j.dx_gR.max_abs() == 0.0);
    CHECK(j.dt_gR.max_abs() == 0.0);
    CHECK(j.dx_gI.max_abs() == 0.0);
    CHECK(j.dt_gI.max_abs() == 0.0);
  }
}

TEST_CASE("uniform-b imaginary derivative") {
  const double b = 0.8;
  PhasePoint p(Vector::Constant(4, 0.3), Vector::Constant(4, -0.2));
  for (const DiffConfig& cfg : {DiffConfig{}, numeric()}) {
    const MetricJet j = metric_jet(uniform_b({0.0, 0.0, b}), p, cfg);
    // d/dx2 of gI_{1 3} and its antisymmetric partner
    CHECK(j.dx_gI(1, 0, 2) == doctest::Approx(b / 2).epsilon(1e-9));
    CHECK(j.dx_gI(1, 2, 0) == doctest::Approx(-b / 2).epsilon(1e-9));
    CHECK(j.dx_gI(2, 0, 1) == doctest::Approx(-b / 2).epsilon(1e-9));
    CHECK(j.dt_gI.max_abs() < 1e-9);
  }
}

TEST_CASE("DSL metric derivative at a point") {
  MetricSpec spec;
  spec.dimension = 4;
  spec.set_real(2, 2, "1 + 0.1*sin(x3)");
  const MetricJet j = metric_jet(compile_metric(spec), PhasePoint::origin(4), numeric(DiffScheme::central4));
  CHECK(std::abs(j.dx_gR(2, 1, 1) - 0.1) < 1e-10);
  CHECK(std::abs(j.dx_gR(1, 1, 1)) < 1e-12);
  CHECK(j.dt_gR.max_abs() < 1e-12);
}

TEST_CASE("all schemes agree with analytic jets") {
  std::mt19937_64 rng(12);
  for (const MetricDefinition& m : catalog_metrics()) {
    CAPTURE(m.name);
    for (int k = 0; k < 10; ++k) {
      const PhasePoint p = test::random_point(rng, m.dimension, 1.0);
      const MetricJet exact = metric_jet(m, p);
      CHECK(jet_error(metric_jet(m, p, numeric(DiffScheme::central2)), exact) < 1e-8);
      CHECK(jet_error(metric_jet(m, p, numeric(DiffScheme::central4)), exact) < 1e-10);
      CHECK(jet_error(metric_jet(m, p, numeric(DiffScheme::richardson)), exact) < 1e-10);
    }
  }
}

TEST_CASE("central2 error falls about 4x when the step halves") {
  RandomTrigOptions o;
  o.amplitude = 0.1;
  const MetricDefinition m = random_trig(o);
  std::mt19937_64 rng(13);
  for (int k = 0; k < 5; ++k) {
    const PhasePoint p = test::random_point(rng, 4, 1.0);
    const MetricJet exact = metric_jet(m, p);
    const double coarse = jet_error(metric_jet(m, p, numeric(DiffScheme::central2, 2e-2, StepScaling::absolute)), exact);
    const double fine = jet_error(metric_jet(m, p, numeric(DiffScheme::central2, 1e-2, StepScaling::absolute)), exact);
    CAPTURE(coarse);
    CAPTURE(fine);
    CHECK(coarse / fine >= 3.5);
    CHECK(coarse / fine <= 4.5);
  }
}

TEST_CASE("central4 error falls about 16x when the step halves") {
  const MetricDefinition m = random_trig();
  const PhasePoint p(Vector::Constant(4, 0.4), Vector::Constant(4, 0.1));
  const MetricJet exact = metric_jet(m, p);
  const double coarse = jet_error(metric_jet(m, p, numeric(DiffScheme::central4, 1e-1, StepScaling::absolute)), exact);
  const double fine = jet_error(metric_jet(m, p, numeric(DiffScheme::central4, 5e-2, StepScaling::absolute)), exact);
  CHECK(coarse / fine >= 12.0);
  CHECK(coarse / fine <= 20.0);
}

TEST_CASE("jet symmetry classes are exact") {
  std::mt19937_64 rng(14);
  const MetricDefinition m = random_trig();
  for (const DiffConfig& cfg : {DiffConfig{}, numeric()}) {
    const MetricJet j = metric_jet(m, test::random_point(rng, 4), cfg);
    for (int c = 0; c < 4; ++c)
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
          REQUIRE(j.dx_gR(c, a, b) == j.dx_gR(c, b, a));
          REQUIRE(j.dt_gR(c, a, b) == j.dt_gR(c, b, a));
          REQUIRE(j.dx_gI(c, a, b) == -j.dx_gI(c, b, a));
          REQUIRE(j.dt_gI(c, a, b) == -j.dt_gI(c, b, a));
        }
  }
}

TEST_CASE("Wirtinger combinations recover the real partials") {
  std::mt19937_64 rng(15);
  const MetricDefinition m = random_trig();
  for (int k = 0; k < 20; ++k) {
    const MetricJet j = metric_jet(m, test::random_point(rng, 4));
    for (int c = 0; c < 4; ++c) {
      const CMatrix holo = wirtinger_combination(j, Wirtinger::holo, c);
      const CMatrix anti = wirtinger_combination(j, Wirtinger::antiholo, c);
      const CMatrix dx = j.dx_gR.slice(c).cast<Complex>() + Complex(0, 1) * j.dx_gI.slice(c).cast<Complex>();
      const CMatrix dt = j.dt_gR.slice(c).cast<Complex>() + Complex(0, 1) * j.dt_gI.slice(c).cast<Complex>();
      REQUIRE(max_abs(holo + anti - dx) < 1e-12);
      REQUIRE(max_abs(Complex(0, 1) * (holo - anti) - dt) < 1e-12);
    }
  }
}

TEST_CASE("real t-independent metric has real Wirtinger combinations") {
  const MetricJet j = metric_jet(real_diagonal(), PhasePoint(Vector::Constant(4, 0.5), Vector::Zero(4)));
  for (int c = 0; c < 4; ++c) {
    const CMatrix anti = wirtinger_combination(j, Wirtinger::antiholo, c);
    CHECK(max_abs(anti.imag()) == 0.0);
    CHECK(max_abs(anti.real() - 0.5 * j.dx_gR.slice(c)) == 0.0);
  }
}

TEST_CASE("stencil leaving the domain raises DomainError") {
  MetricDefinition m = euclidean(2);
  m.domain = [](const PhasePoint& p) { return p.x(0) > 0.0; };
  PhasePoint p = PhasePoint::origin(2);
  p.x(0) = 1e-7;
  CHECK_THROWS_AS(metric_jet(m, p, numeric()), DomainError);
  p.x(0) = 1.0;
  CHECK_NOTHROW(metric_jet(m, p, numeric()));
}

TEST_CASE("scheme names") {
  CHECK(parse_diff_scheme("central4") == DiffScheme::central4);
  CHECK(to_string(DiffScheme::richardson) == "richardson");
  CHECK_THROWS_AS(parse_diff_scheme("forward"), UnknownIdentifier);
  CHECK(default_step(DiffScheme::central2) == doctest::Approx(std::cbrt(2.220446049250313e-16)));
}

}
