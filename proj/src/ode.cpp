#include "cxgeo/ode.hpp"

#include "cxgeo/errors.hpp"

#include <cmath>
#include <sstream>

namespace cxgeo {

IntegratorMethod parse_integrator_method(const std::string& name) {
  if (name == "rk4") return IntegratorMethod::rk4;
  if (name == "rkf45") return IntegratorMethod::rkf45;
  throw UnknownIdentifier("integrator method '" + name + "'");
}

std::string to_string(IntegratorMethod method) {
  return method == IntegratorMethod::rk4 ? "rk4" : "rkf45";
}

void IntegratorConfig::validate() const {
  if (!(step > 0.0) || !std::isfinite(step)) throw DomainError("integrator step must be positive");
  if (!(tau_end > tau_begin)) throw DomainError("integrator span must satisfy tau_end > tau_begin");
  if (method == IntegratorMethod::rkf45 && (!(abs_tol > 0.0) || !(rel_tol > 0.0)))
    throw DomainError("rkf45 tolerances must be positive");
  if (max_steps < 1 || output_every < 1) throw DomainError("max_steps and output_every must be >= 1");
}

namespace {

std::string tau_context(double tau) {
  std::ostringstream os;
  os.precision(17);
  os << "at tau = " << tau;
  return os.str();
}

Vector eval(const OdeRhs& f, double tau, const Vector& y) {
  try {
    return f(tau, y);
  } catch (Error& e) {
    e.add_context(tau_context(tau));
    throw;
  }
}

std::vector<OdePoint> rk4(const OdeRhs& f, const Vector& y0, const IntegratorConfig& cfg) {
  const double span = cfg.tau_end - cfg.tau_begin;
  const long steps = std::max(1L, static_cast<long>(std::ceil(span / cfg.step - 1e-9)));
  if (steps > cfg.max_steps) throw StepFailure("rk4 would need more than max_steps steps");

  std::vector<OdePoint> out;
  out.reserve(static_cast<std::size_t>(steps / cfg.output_every + 2));
  out.push_back({cfg.tau_begin, y0});
  Vector y = y0;
  for (long k = 0; k < steps; ++k) {
    // tau_k computed from k rather than accumulated, so the grid is exact.
    const double tau = cfg.tau_begin + static_cast<double>(k) * cfg.step;
    const double next = (k + 1 == steps) ? cfg.tau_end : cfg.tau_begin + static_cast<double>(k + 1) * cfg.step;
    const double h = next - tau;
    const Vector k1 = eval(f, tau, y);
    const Vector k2 = eval(f, tau + 0.5 * h, y + 0.5 * h * k1);
    const Vector k3 = eval(f, tau + 0.5 * h, y + 0.5 * h * k2);
    const Vector k4 = eval(f, next, y + h * k3);
    y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if ((k + 1) % cfg.output_every == 0 || k + 1 == steps) out.push_back({next, y});
  }
  return out;
}

// Fehlberg 4(5) pair, propagating the fifth-order solution.
std::vector<OdePoint> rkf45(const OdeRhs& f, const Vector& y0, const IntegratorConfig& cfg) {
  constexpr double c2 = 1.0 / 4, c3 = 3.0 / 8, c4 = 12.0 / 13, c6 = 1.0 / 2;
  constexpr double a21 = 1.0 / 4;
  constexpr double a31 = 3.0 / 32, a32 = 9.0 / 32;
  constexpr double a41 = 1932.0 / 2197, a42 = -7200.0 / 2197, a43 = 7296.0 / 2197;
  constexpr double a51 = 439.0 / 216, a52 = -8.0, a53 = 3680.0 / 513, a54 = -845.0 / 4104;
  constexpr double a61 = -8.0 / 27, a62 = 2.0, a63 = -3544.0 / 2565, a64 = 1859.0 / 4104,
                   a65 = -11.0 / 40;
  constexpr double b1 = 16.0 / 135, b3 = 6656.0 / 12825, b4 = 28561.0 / 56430, b5 = -9.0 / 50,
                   b6 = 2.0 / 55;
  constexpr double e1 = b1 - 25.0 / 216, e3 = b3 - 1408.0 / 2565, e4 = b4 - 2197.0 / 4104,
                   e5 = b5 + 1.0 / 5, e6 = b6;

  std::vector<OdePoint> out{{cfg.tau_begin, y0}};
  Vector y = y0;
  double tau = cfg.tau_begin;
  double h = std::min(cfg.step, cfg.tau_end - cfg.tau_begin);
  long attempts = 0;
  while (tau < cfg.tau_end) {
    if (++attempts > cfg.max_steps) throw StepFailure("rkf45 exhausted max_steps " + tau_context(tau));
    const bool last = tau + h >= cfg.tau_end;
    if (last) h = cfg.tau_end - tau;
    const double min_step = 1e-13 * std::max(1.0, std::abs(tau));
    if (h < min_step) throw StepFailure("rkf45 step size underflow " + tau_context(tau));

    const Vector k1 = eval(f, tau, y);
    const Vector k2 = eval(f, tau + c2 * h, y + h * (a21 * k1));
    const Vector k3 = eval(f, tau + c3 * h, y + h * (a31 * k1 + a32 * k2));
    const Vector k4 = eval(f, tau + c4 * h, y + h * (a41 * k1 + a42 * k2 + a43 * k3));
    const Vector k5 = eval(f, tau + h, y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    const Vector k6 = eval(f, tau + c6 * h, y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    const Vector y_new = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    const Vector err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6);

    double norm = 0.0;
    for (Eigen::Index i = 0; i < y.size(); ++i) {
      const double scale = cfg.abs_tol + cfg.rel_tol * std::max(std::abs(y(i)), std::abs(y_new(i)));
      norm = std::max(norm, std::abs(err(i)) / scale);
    }
    if (!std::isfinite(norm)) throw StepFailure("rkf45 produced a non-finite state " + tau_context(tau));

    const double factor = norm == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(norm, -0.2), 0.2, 5.0);
    if (norm <= 1.0) {
      tau = last ? cfg.tau_end : tau + h;
      y = y_new;
      out.push_back({tau, y});
    }
    h *= factor;
  }
  return out;
}

}  // namespace

std::vector<OdePoint> solve_ode(const OdeRhs& f, const Vector& y0, const IntegratorConfig& cfg) {
  cfg.validate();
  return cfg.method == IntegratorMethod::rk4 ? rk4(f, y0, cfg) : rkf45(f, y0, cfg);
}

}  // namespace cxgeo
