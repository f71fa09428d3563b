#include "cxgeo/variational.hpp"

#include "cxgeo/errors.hpp"
#include "cxgeo/random.hpp"

#include <cmath>
#include <numbers>

namespace cxgeo {

namespace {

// Neumaier's variant of Kahan summation.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    comp_ += std::abs(sum_) >= std::abs(v) ? (sum_ - t) + v : (v - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

double parameter(std::size_t k, std::size_t count) {
  return count > 1 ? static_cast<double>(k) / static_cast<double>(count - 1) : 0.0;
}

std::vector<PhasePoint> displaced(const std::vector<PhasePoint>& path, const std::vector<Vector>& delta, double a) {
  std::vector<PhasePoint> out = path;
  for (std::size_t k = 0; k < out.size(); ++k) {
    const int n = out[k].dim();
    out[k].x += a * delta[k].head(n);
    out[k].t += a * delta[k].tail(n);
  }
  return out;
}

}  // namespace

double discrete_arc_length(const MetricDefinition& m, const std::vector<PhasePoint>& path) {
  CompensatedSum total;
  for (std::size_t k = 0; k + 1 < path.size(); ++k) {
    const PhasePoint mid(0.5 * (path[k].x + path[k + 1].x), 0.5 * (path[k].t + path[k + 1].t));
    const MetricSample s = evaluate_metric(m, mid);
    const Vector dx = path[k + 1].x - path[k].x;
    const Vector dt = path[k + 1].t - path[k].t;
    total.add(std::sqrt(std::max(0.0, speed_squared(s, dx, dt))));
  }
  return total.value();
}

std::vector<PhasePoint> trajectory_path(const Trajectory& traj) {
  std::vector<PhasePoint> out;
  out.reserve(traj.samples.size());
  for (const TrajectorySample& s : traj.samples) out.emplace_back(s.x, s.t);
  return out;
}

std::vector<PhasePoint> bumped_path(const std::vector<PhasePoint>& path, double amplitude, const Vector& direction) {
  std::vector<Vector> delta;
  delta.reserve(path.size());
  for (std::size_t k = 0; k < path.size(); ++k)
    delta.push_back(std::sin(std::numbers::pi * parameter(k, path.size())) * direction);
  return displaced(path, delta, amplitude);
}

VariationReport first_variation(const MetricDefinition& m, const std::vector<PhasePoint>& path,
                                const VariationOptions& o) {
  if (path.size() < 3) throw DomainError("first variation needs at least 3 path samples");
  if (o.perturbations < 1 || o.modes < 1 || !(o.amplitude > 0.0))
    throw DomainError("first variation needs positive perturbation count, modes and amplitude");
  const int n = path.front().dim();
  std::mt19937_64 rng(o.seed);
  VariationReport report;
  CompensatedSum total;
  for (int p = 0; p < o.perturbations; ++p) {
    std::vector<Vector> weights;
    double scale = 0.0;
    for (int mode = 0; mode < o.modes; ++mode) {
      weights.push_back(uniform_vector(rng, 2 * n, -1.0, 1.0));
      scale += weights.back().norm();
    }
    std::vector<Vector> delta(path.size(), Vector::Zero(2 * n));
    for (std::size_t k = 0; k < path.size(); ++k) {
      const double s = parameter(k, path.size());
      for (int mode = 0; mode < o.modes; ++mode)
        delta[k] += std::sin((mode + 1) * std::numbers::pi * s) * weights[mode] / scale;
    }
    auto quotient = [&](double a) {
      return (discrete_arc_length(m, displaced(path, delta, a)) - discrete_arc_length(m, displaced(path, delta, -a))) /
             (2.0 * a);
    };
    const double coarse = quotient(o.amplitude);
    const double fine = quotient(0.5 * o.amplitude);
    const double estimate = (4.0 * fine - coarse) / 3.0;
    report.estimates.push_back(estimate);
    report.max_abs = std::max(report.max_abs, std::abs(estimate));
    total.add(std::abs(estimate));
  }
  report.mean_abs = total.value() / o.perturbations;
  return report;
}

}  // namespace cxgeo
