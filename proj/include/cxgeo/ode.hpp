#pragma once

#include "cxgeo/tensor.hpp"

#include <functional>
#include <string>
#include <vector>

namespace cxgeo {

enum class IntegratorMethod { rk4, rkf45 };

IntegratorMethod parse_integrator_method(const std::string& name);
std::string to_string(IntegratorMethod method);

struct IntegratorConfig {
  IntegratorMethod method = IntegratorMethod::rk4;
  double step = 1e-3;  // fixed step for rk4, initial step for rkf45
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  double tau_begin = 0.0;
  double tau_end = 1.0;
  long max_steps = 10'000'000;
  int output_every = 1;  // rk4: keep every k-th step (the last step is always kept)

  void validate() const;
};

using OdeRhs = std::function<Vector(double tau, const Vector& y)>;

struct OdePoint {
  double tau;
  Vector y;
};

// Integrates y' = f(tau, y) over [tau_begin, tau_end]. Exceptions raised by f
// are rethrown with the failing tau attached; rkf45 throws StepFailure on step
// underflow or when max_steps is exhausted.
std::vector<OdePoint> solve_ode(const OdeRhs& f, const Vector& y0, const IntegratorConfig& cfg);

}  // namespace cxgeo
