#include "cxgeo/fields.hpp"

#include "cxgeo/errors.hpp"

namespace cxgeo {

namespace {

// 1/2 [d(g, a, b) - d(a, b, g) - d(b, a, g)] with d = derivative array.
Tensor3 christoffel_pattern(const Tensor3& d) {
  const int n = d.dim();
  Tensor3 out(n);
  for (int g = 0; g < n; ++g)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) out(g, a, b) = 0.5 * (d(g, a, b) - d(a, b, g) - d(b, a, g));
  return out;
}

// out(a, g, b) = d(g, a, b) - d(b, a, g)
Tensor3 curl_pattern(const Tensor3& d) {
  const int n = d.dim();
  Tensor3 out(n);
  for (int a = 0; a < n; ++a)
    for (int g = 0; g < n; ++g)
      for (int b = 0; b < n; ++b) out(a, g, b) = d(g, a, b) - d(b, a, g);
  return out;
}

double symmetric_part_max(const ComplexTensor3& r) {
  const int n = r.dim();
  double out = 0.0;
  for (int g = 0; g < n; ++g)
    for (int a = 0; a < n; ++a)
      for (int b = a; b < n; ++b) out = std::max(out, std::abs(0.5 * (r(g, a, b) + r(g, b, a))));
  return out;
}

}  // namespace

PrimaryField primary_field(const MetricJet& jet) {
  return {christoffel_pattern(jet.dx_gR), christoffel_pattern(jet.dx_gI),
          christoffel_pattern(jet.dt_gR), christoffel_pattern(jet.dt_gI)};
}

SecondaryField secondary_field(const MetricJet& jet) {
  return {curl_pattern(jet.dx_gI), curl_pattern(jet.dt_gI)};
}

LinkTensor link_tensor(const MetricSample& sample) {
  Eigen::LLT<Matrix> llt(sample.gR);
  if (llt.info() != Eigen::Success) throw SingularMetric("gR factorization failed");
  LinkTensor out;
  out.eps = llt.solve(sample.gI);
  if (!out.eps.allFinite()) throw SingularMetric("gR solve produced non-finite values");
  out.norm_estimate = out.eps.size() ? Eigen::JacobiSVD<Matrix>(out.eps).singularValues()(0) : 0.0;
  return out;
}

double link_contraction_residual(const MetricSample& s, const LinkTensor& link) {
  // sum_eta gR(mu, eta) eps(eta, g) - gI(mu, g)
  return max_abs(Matrix(s.gR * link.eps - s.gI));
}

Matrix mass_matrix(const MetricSample& s, const LinkTensor& link) {
  // h(mu, g) = gR(mu, g) + sum_eta gI(mu, eta) eps(eta, g)
  return s.gR + s.gI * link.eps;
}

ProjectiveCoefficients projective_coefficients(const MetricJet& jet) {
  const int n = jet.dim();
  const PrimaryField phi = primary_field(jet);
  const SecondaryField f = secondary_field(jet);
  const LinkTensor link = link_tensor(jet.sample);
  const Matrix& e = link.eps;

  ProjectiveCoefficients c{Tensor3(n), Tensor3(n), Tensor3(n), mass_matrix(jet.sample, link)};
  // Real identity plus the eps-contracted imaginary identity (free index eta).
  for (int g = 0; g < n; ++g) {
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        double u11 = phi.phi_pp(g, a, b);
        double u10 = f.fx(a, g, b) + jet.dt_gR(a, b, g);
        double u00 = phi.phi_mm(g, a, b) - 0.5 * jet.dx_gR(g, a, b);
        for (int eta = 0; eta < n; ++eta) {
          const double w = e(eta, g);
          if (w == 0.0) continue;
          u11 += w * (phi.phi_pm(eta, a, b) + 0.5 * jet.dt_gR(eta, a, b));
          u10 += w * (jet.dx_gR(b, a, eta) - f.ft(b, eta, a));
          u00 -= w * phi.phi_mp(eta, a, b);
        }
        c.upsilon11(g, a, b) = u11;
        c.upsilon10(g, a, b) = u10;
        c.upsilon00(g, a, b) = u00;
      }
    }
  }
  return c;
}

Vector upsilon_force(const ProjectiveCoefficients& c, const Vector& dx, const Vector& dt) {
  const int n = static_cast<int>(dx.size());
  Vector out = Vector::Zero(n);
  for (int g = 0; g < n; ++g) {
    double acc = 0.0;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        acc += c.upsilon11(g, a, b) * dx(a) * dx(b) - c.upsilon10(g, a, b) * dx(b) * dt(a) -
               c.upsilon00(g, a, b) * dt(a) * dt(b);
    out(g) = acc;
  }
  return out;
}

Proposition2Residual proposition2_residual(const MetricJet& jet) {
  const int n = jet.dim();
  const PrimaryField phi = primary_field(jet);
  std::vector<CMatrix> holo;
  std::vector<CMatrix> anti;
  for (int c = 0; c < n; ++c) {
    holo.push_back(wirtinger_combination(jet, Wirtinger::holo, c));
    anti.push_back(wirtinger_combination(jet, Wirtinger::antiholo, c));
  }
  const Complex i(0.0, 1.0);
  Proposition2Residual r{ComplexTensor3(n), ComplexTensor3(n)};
  for (int g = 0; g < n; ++g) {
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        const Complex common = anti[g](a, b) - anti[b](a, g);
        const Complex d_a = holo[a](b, g);
        const Complex rhs1 = phi.phi_pp(g, a, b) + i * phi.phi_pm(g, a, b) + 0.5 * i * jet.dt_gR(g, a, b);
        const Complex rhs2 = 0.5 * jet.dx_gR(g, a, b) - phi.phi_mm(g, a, b) + i * phi.phi_mp(g, a, b);
        r.first(g, a, b) = common - d_a - rhs1;
        r.second(g, a, b) = common + d_a - rhs2;
      }
    }
  }
  r.first_raw_max = r.first.max_abs();
  r.second_raw_max = r.second.max_abs();
  r.first_symmetric_max = symmetric_part_max(r.first);
  r.second_symmetric_max = symmetric_part_max(r.second);
  return r;
}

Proposition3Residual proposition3_residual(const MetricJet& jet) {
  const int n = jet.dim();
  const SecondaryField f = secondary_field(jet);
  const Complex i(0.0, 1.0);
  Proposition3Residual r{ComplexTensor3(n)};
  for (int g = 0; g < n; ++g) {
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        // 2 d_gbar gI_ab, with gI real: d^x_g gI_ab + i d^t_g gI_ab
        const Complex two_dbar_gI(jet.dx_gI(g, a, b), jet.dt_gI(g, a, b));
        const Complex dxb_g_ag(jet.dx_gR(b, a, g), jet.dx_gI(b, a, g));
        const Complex dta_g_bg(jet.dt_gR(a, b, g), jet.dt_gI(a, b, g));
        const Complex lhs = two_dbar_gI + i * dxb_g_ag + dta_g_bg;
        const Complex rhs = f.fx(a, g, b) + jet.dt_gI(a, b, g) - i * f.ft(b, g, a) + i * jet.dx_gR(b, a, g);
        r.residual(g, a, b) = lhs - rhs;
      }
    }
  }
  r.raw_max = r.residual.max_abs();
  return r;
}

FieldSet field_set(const MetricDefinition& m, const PhasePoint& p, const DiffConfig& cfg) {
  FieldSet s;
  s.point = p;
  s.jet = metric_jet(m, p, cfg);
  s.primary = primary_field(s.jet);
  s.secondary = secondary_field(s.jet);
  s.link = link_tensor(s.jet.sample);
  s.coefficients = projective_coefficients(s.jet);
  s.prop2 = proposition2_residual(s.jet);
  s.prop3 = proposition3_residual(s.jet);
  return s;
}

}  // namespace cxgeo
