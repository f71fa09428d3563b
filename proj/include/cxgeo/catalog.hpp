#pragma once

#include "cxgeo/geometry.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace cxgeo {

// gR = I, gI = 0.
MetricDefinition euclidean(int n = 4);

// n = 4, gR = diag(1, 1 + a sin x3, 1 + a cos x2, 1 + a sin(x2 + x3)), gI = 0.
// No dependence on x1 or on t, so the real-slice reduction applies, and g11 is
// constant so the frozen-Dt projective run is an exact classical geodesic.
MetricDefinition real_diagonal(double amplitude = 0.2);

// n = 4, gR = I, gI_{1g} = A_g with A = B x r / 2 and r = (x2, x3, x4).
MetricDefinition uniform_b(const std::array<double, 3>& b = {0.0, 0.0, 1.0});

// n = 4, gR = I, gI_{1g} = A_g(t1) = offset_g + slope_g * t1.
MetricDefinition t_dependent_potential(const std::array<double, 3>& offset = {0.0, 0.0, 0.0},
                                       const std::array<double, 3>& slope = {0.1, 0.0, 0.0});

struct RandomTrigOptions {
  std::uint64_t seed = 7;
  double amplitude = 0.05;
  int dimension = 4;
  bool t_dependent = true;
  int max_wavenumber = 2;
  int terms = 3;
};

// gR = I + a S(x, t), gI = a K(x, t) with S symmetric, K antisymmetric and every
// entry a trig polynomial bounded by 1 in absolute value. For a < 1/(2n - 1)
// the real 2n x 2n form stays positive definite (Gershgorin).
MetricDefinition random_trig(const RandomTrigOptions& options = {});

// Default-parameter instance of every catalog entry.
std::vector<MetricDefinition> catalog_metrics();

using CatalogParams = std::map<std::string, std::vector<double>>;

// Lookup by name ("euclidean", "real-diagonal", "uniform-b",
// "t-dependent-potential", "random-trig"). Throws UnknownIdentifier.
MetricDefinition catalog_metric(const std::string& name, const CatalogParams& params = {});

std::vector<std::string> catalog_names();

}  // namespace cxgeo
