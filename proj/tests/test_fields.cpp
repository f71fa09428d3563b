#include "cxgeo/catalog.hpp"
#include "cxgeo/errors.hpp"
#include "cxgeo/fields.hpp"
#include "cxgeo/io.hpp"

#include "support.hpp"

#include <doctest.h>

using namespace cxgeo;

namespace {

RandomTrigOptions flat_trig(std::uint64_t seed) {
  RandomTrigOptions o;
  o.seed = seed;
  o.t_dependent = false;
  o.amplitude = 0.1;
  return o;
}

}  // namespace

TEST_SUITE("fields") {

TEST_CASE("secondary field of a uniform magnetic field") {
  const double b = 0.7;
  std::mt19937_64 rng(1);
  const SecondaryField f = secondary_field(metric_jet(uniform_b({0.0, 0.0, b}), test::random_point(rng, 4)));
  CHECK(f.fx(0, 1, 2) == doctest::Approx(b));
  CHECK(f.fx(0, 2, 1) == doctest::Approx(-b));
  CHECK(std::abs(f.fx(0, 1, 3)) < 1e-15);
  CHECK(f.ft.max_abs() == 0.0);
}

TEST_CASE("real t-independent metrics have no imaginary-part fields") {
  std::mt19937_64 rng(2);
  const MetricJet j = metric_jet(real_diagonal(), test::random_point(rng, 4));
  const PrimaryField p = primary_field(j);
  const SecondaryField s = secondary_field(j);
  CHECK(s.fx.max_abs() == 0.0);
  CHECK(s.ft.max_abs() == 0.0);
  CHECK(p.phi_pm.max_abs() == 0.0);
  CHECK(p.phi_mm.max_abs() == 0.0);
  CHECK(p.phi_mp.max_abs() == 0.0);
  CHECK(p.phi_pp.max_abs() > 0.0);
}

TEST_CASE("secondary field antisymmetry is exact") {
  std::mt19937_64 rng(3);
  const MetricDefinition m = random_trig();
  for (int k = 0; k < 100; ++k) {
    const SecondaryField f = secondary_field(metric_jet(m, test::random_point(rng, 4)));
    for (int a = 0; a < 4; ++a)
      for (int g = 0; g < 4; ++g)
        for (int b = 0; b < 4; ++b) {
          REQUIRE(f.fx(a, g, b) == -f.fx(a, b, g));
          REQUIRE(f.ft(a, g, b) == -f.ft(a, b, g));
        }
  }
}

TEST_CASE("primary field symmetry in the lower pair") {
  std::mt19937_64 rng(4);
  const PrimaryField p = primary_field(metric_jet(random_trig(), test::random_point(rng, 4)));
  for (int g = 0; g < 4; ++g)
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        CHECK(p.phi_pp(g, a, b) == doctest::Approx(p.phi_pp(g, b, a)).epsilon(1e-15));
        CHECK(p.phi_mp(g, a, b) == doctest::Approx(p.phi_mp(g, b, a)).epsilon(1e-15));
      }
}

TEST_CASE("imaginary-part primary fields on the diagonal") {
  std::mt19937_64 rng(5);
  const MetricDefinition m = random_trig();
  for (int k = 0; k < 100; ++k) {
    const MetricJet j = metric_jet(m, test::random_point(rng, 4));
    const PrimaryField p = primary_field(j);
    for (int g = 0; g < 4; ++g)
      for (int a = 0; a < 4; ++a) {
        // Entries with the upper index repeated below vanish identically.
        REQUIRE(p.phi_pm(g, a, g) == 0.0);
        REQUIRE(p.phi_mm(g, a, g) == 0.0);
        // The (alpha, alpha) diagonal reduces to a single derivative of gI.
        REQUIRE(p.phi_pm(g, a, a) == doctest::Approx(-j.dx_gI(a, a, g)).epsilon(1e-14));
        REQUIRE(p.phi_mm(g, a, a) == doctest::Approx(-j.dt_gI(a, a, g)).epsilon(1e-14));
      }
  }
}

TEST_CASE("link tensor examples") {
  MetricSample s{Matrix::Identity(4, 4), Matrix::Zero(4, 4)};
  CHECK(link_tensor(s).eps == Matrix::Zero(4, 4));

  s.gI(0, 1) = 0.3;
  s.gI(1, 0) = -0.3;
  CHECK(link_tensor(s).eps == s.gI);

  MetricSample d{Matrix::Identity(2, 2), Matrix::Zero(2, 2)};
  d.gR(0, 0) = 2.0;
  d.gI(0, 1) = 0.2;
  d.gI(1, 0) = -0.2;
  const LinkTensor l = link_tensor(d);
  CHECK(l.eps(0, 1) == doctest::Approx(0.1));
  CHECK(l.eps(1, 0) == doctest::Approx(-0.2));
  CHECK(l.norm_estimate == doctest::Approx(0.2));
}

TEST_CASE("link tensor contraction residual") {
  std::mt19937_64 rng(6);
  const MetricDefinition m = random_trig();
  for (int k = 0; k < 100; ++k) {
    const MetricSample s = evaluate_metric(m, test::random_point(rng, 4));
    REQUIRE(link_contraction_residual(s, link_tensor(s)) < 1e-12);
  }
  MetricSample singular{Matrix::Zero(2, 2), Matrix::Zero(2, 2)};
  CHECK_THROWS_AS(link_tensor(singular), SingularMetric);
}

TEST_CASE("reduction chain as gI vanishes on a t-independent metric") {
  std::mt19937_64 rng(7);
  const MetricDefinition m = with_imaginary_scaled(random_trig(flat_trig(3)), 0.0);
  for (int k = 0; k < 100; ++k) {
    const MetricJet j = metric_jet(m, test::random_point(rng, 4));
    const PrimaryField p = primary_field(j);
    const SecondaryField f = secondary_field(j);
    const ProjectiveCoefficients c = projective_coefficients(j);
    REQUIRE(max_abs(link_tensor(j.sample).eps) < 1e-12);
    REQUIRE(f.fx.max_abs() < 1e-12);
    REQUIRE(f.ft.max_abs() < 1e-12);
    REQUIRE(p.phi_pm.max_abs() < 1e-12);
    REQUIRE(p.phi_mm.max_abs() < 1e-12);
    REQUIRE(max_abs(c.h - j.sample.gR) < 1e-12);
    REQUIRE(test::max_diff(c.upsilon11, p.phi_pp) < 1e-12);
    REQUIRE(c.upsilon10.max_abs() < 1e-12);
  }
}

TEST_CASE("projective coefficients on the real diagonal metric") {
  // y = t1 enters like a coordinate: the Dt Dt term carries -1/2 d^x g11 = 0
  // and the mixed term carries d^t gR, which vanishes here.
  std::mt19937_64 rng(8);
  const MetricJet j = metric_jet(real_diagonal(), test::random_point(rng, 4));
  const ProjectiveCoefficients c = projective_coefficients(j);
  CHECK(max_abs(c.h - j.sample.gR) == 0.0);
  CHECK(c.upsilon10.max_abs() == 0.0);
  for (int g = 0; g < 4; ++g)
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) CHECK(c.upsilon00(g, a, b) == doctest::Approx(-0.5 * j.dx_gR(g, a, b)));
}

TEST_CASE("euclidean coefficients vanish") {
  const ProjectiveCoefficients c = projective_coefficients(metric_jet(euclidean(4), PhasePoint::origin(4)));
  CHECK(c.upsilon11.max_abs() == 0.0);
  CHECK(c.upsilon10.max_abs() == 0.0);
  CHECK(c.upsilon00.max_abs() == 0.0);
  CHECK(c.h == Matrix::Identity(4, 4));
}

TEST_CASE("scaling the metric scales the fields") {
  std::mt19937_64 rng(9);
  const MetricDefinition m = random_trig();
  const double c = 2.5;
  for (int k = 0; k < 20; ++k) {
    const PhasePoint p = test::random_point(rng, 4);
    const MetricJet j = metric_jet(m, p);
    const MetricJet js = metric_jet(scaled(m, c), p);
    const PrimaryField a = primary_field(j);
    const PrimaryField b = primary_field(js);
    Tensor3 scaled_pp = a.phi_pp;
    scaled_pp *= c;
    Tensor3 scaled_fx = secondary_field(j).fx;
    scaled_fx *= c;
    REQUIRE(test::max_diff(b.phi_pp, scaled_pp) < 1e-13);
    REQUIRE(test::max_diff(secondary_field(js).fx, scaled_fx) < 1e-13);
    REQUIRE(max_abs(link_tensor(js.sample).eps - link_tensor(j.sample).eps) < 1e-13);
  }
}

TEST_CASE("decomposition residuals on the t-independent subclass") {
  std::mt19937_64 rng(10);
  for (const MetricDefinition& m : {random_trig(flat_trig(4)), uniform_b({0.1, -0.05, 0.2}), real_diagonal()}) {
    CAPTURE(m.name);
    for (int k = 0; k < 50; ++k) {
      const MetricJet j = metric_jet(m, test::random_point(rng, 4, 3.0));
      const Proposition2Residual r2 = proposition2_residual(j);
      REQUIRE(r2.first_raw_max < 1e-10);
      REQUIRE(r2.symmetric_max() < 1e-10);
      REQUIRE(proposition3_residual(j).raw_max < 1e-10);
    }
  }
}

TEST_CASE("second primary decomposition holds only in its symmetric part") {
  // The antisymmetric part of the raw second identity is a real-part curl
  // that never meets a velocity product; it is nonzero on x-dependent metrics.
  std::mt19937_64 rng(11);
  const MetricJet j = metric_jet(real_diagonal(), test::random_point(rng, 4));
  const Proposition2Residual r2 = proposition2_residual(j);
  CHECK(r2.second_raw_max > 1e-3);
  CHECK(r2.second_symmetric_max < 1e-14);
}

TEST_CASE("field set JSON dump") {
  const FieldSet f = field_set(random_trig(), PhasePoint(Vector::Constant(4, 0.2), Vector::Zero(4)));
  const auto doc = field_set_json(f);
  for (const char* key : {"point", "phi_pp", "phi_pm", "phi_mp", "phi_mm", "fx", "ft", "eps", "eps_norm", "upsilon11",
                          "upsilon10", "upsilon00", "h", "prop2_residual_max", "prop3_residual_max"})
    CHECK(doc.contains(key));
  CHECK(doc["phi_pp"].size() == 4);
  CHECK(doc["phi_pp"][0].size() == 4);
}

}
