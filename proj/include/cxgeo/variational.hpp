#pragma once

#include "cxgeo/geodesic.hpp"

#include <cstdint>
#include <vector>

namespace cxgeo {

// Sum over segments of sqrt(g(dz, conj dz)) with g taken at the segment
// midpoint; compensated summation.
double discrete_arc_length(const MetricDefinition& m, const std::vector<PhasePoint>& path);

std::vector<PhasePoint> trajectory_path(const Trajectory& traj);

// Adds amplitude * sin(pi s) * direction (direction = (dx, dt), length 2n) with
// s in [0, 1] the normalized sample index; endpoints stay fixed.
std::vector<PhasePoint> bumped_path(const std::vector<PhasePoint>& path, double amplitude, const Vector& direction);

struct VariationOptions {
  int perturbations = 100;
  double amplitude = 1e-3;
  int modes = 3;
  std::uint64_t seed = 1;
};

struct VariationReport {
  double max_abs = 0.0;
  double mean_abs = 0.0;
  std::vector<double> estimates;  // one signed first-variation estimate per perturbation
};

// Directional derivative of the discrete arc length along random smooth
// endpoint-fixed perturbations delta(s) = sum_m w_m sin(m pi s). Each estimate
// is a central quotient at amplitudes a and a/2 combined by Richardson.
VariationReport first_variation(const MetricDefinition& m, const std::vector<PhasePoint>& path,
                                const VariationOptions& options = {});

inline VariationReport euler_lagrange_residual(const MetricDefinition& m, const Trajectory& traj,
                                               const VariationOptions& options = {}) {
  return first_variation(m, trajectory_path(traj), options);
}

}  // namespace cxgeo
