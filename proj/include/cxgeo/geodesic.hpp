#pragma once

#include "cxgeo/calculus.hpp"
#include "cxgeo/fields.hpp"
#include "cxgeo/ode.hpp"

#include <string>
#include <vector>

namespace cxgeo {

// (z, Dz) in split form; D = d/dtau with tau the arc length.
struct ComplexGeodesicState {
  PhasePoint p;
  Vector dx;
  Vector dt;
  double tau = 0.0;
};

// Projective run: x and Dx evolve, Dt is a prescribed constant and t is
// carried along as t0 + Dt (tau - tau0) so the metric can be sampled.
struct ProjectiveGeodesicState {
  Vector x;
  Vector dx;
  Vector t;
  Vector dt;
  double tau = 0.0;
};

struct Acceleration {
  Vector d2x;
  Vector d2t;
};

// Condition estimate above which a linear solve is reported as singular.
inline constexpr double kMaxCondition = 1e12;

// g(Dz, conj Dz) = Dx^T gR Dx + Dt^T gR Dt + 2 Dx^T gI Dt.
double speed_squared(const MetricSample& s, const Vector& dx, const Vector& dt);

// Right-hand side of the complex geodesic before the solve with g:
//   (d_gbar g_ab - d_bbar g_ag) Dz^a conj(Dz^b) - d_a g_bg Dz^a Dz^b
CVector complex_force(const MetricJet& jet, const CVector& dz);

Acceleration complex_rhs(const MetricDefinition& m, const ComplexGeodesicState& s,
                         const DiffConfig& cfg = {});

// Same, from a precomputed jet (no metric evaluation).
Acceleration complex_rhs(const MetricJet& jet, const Vector& dx, const Vector& dt);

// Canonical projective route: split the complex force into its real and
// imaginary identities, contract the imaginary one with eps and solve with h.
Vector projective_rhs_direct(const MetricDefinition& m, const ProjectiveGeodesicState& s,
                             const DiffConfig& cfg = {});
Vector projective_rhs_direct(const MetricJet& jet, const Vector& dx, const Vector& dt);

// Second route through the Upsilon coefficients.
Vector projective_rhs_upsilon(const MetricDefinition& m, const ProjectiveGeodesicState& s,
                              const DiffConfig& cfg = {});
Vector projective_rhs_upsilon(const MetricJet& jet, const Vector& dx, const Vector& dt);

// Solves sum_mu h(mu, g) a^mu = force_g; throws SingularMassMatrix.
Vector solve_mass_system(const Matrix& h, const Vector& force);

struct TrajectorySample {
  double tau = 0.0;
  Vector x;
  Vector t;
  Vector dx;
  Vector dt;
  double speed = 0.0;        // sqrt(g(Dz, conj Dz))
  double h_condition = 0.0;  // condition estimate of the mass matrix h
};

struct Trajectory {
  std::string kind;  // "complex", "projective" or "classical"
  int dimension = 0;
  std::vector<TrajectorySample> samples;
};

enum class ProjectiveRoute { direct, upsilon };

// Initial velocity is rescaled to unit g-norm when `normalize` is set.
Trajectory integrate_complex(const MetricDefinition& m, ComplexGeodesicState initial,
                             const IntegratorConfig& icfg, const DiffConfig& dcfg = {},
                             bool normalize = true);

Trajectory integrate_projective(const MetricDefinition& m, const ProjectiveGeodesicState& initial,
                                const IntegratorConfig& icfg, const DiffConfig& dcfg = {},
                                ProjectiveRoute route = ProjectiveRoute::direct);

}  // namespace cxgeo
