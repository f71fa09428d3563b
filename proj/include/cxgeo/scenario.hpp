#pragma once

#include "cxgeo/calculus.hpp"
#include "cxgeo/catalog.hpp"
#include "cxgeo/geodesic.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cxgeo {

// Scenario files are YAML. Schema version 1:
//
//   schema: 1                      # required
//   name: uniform-b-circle         # optional, used for default output names
//   metric:                        # exactly one of `catalog` or `dimension`
//     catalog: uniform-b
//     params: {b: [0, 0, 1]}       # numbers or lists of numbers
//   # metric:
//   #   dimension: 4
//   #   gR: {"2,2": "1 + 0.1*sin(x3)"}   # 1-based upper triangle, diagonal allowed
//   #   gI: {"1,3": "0.5*x2"}            # 1-based strict upper triangle
//   mode: projective               # complex (default) | projective
//   route: direct                  # direct (default) | upsilon, projective only
//   initial:
//     x: [0, 0, -0.1, 0]           # default zeros
//     t: [0, 0, 0, 0]              # default zeros
//     dx: [0, 0.1, 0, 0]           # required
//     dt: root-first               # list | root-first (e1) | root-all (ones); default zeros
//     normalize: true              # complex runs only
//   integrator: {method: rk4, step: 1e-3, tau: [0, 1], abs_tol: 1e-10, rel_tol: 1e-10,
//                max_steps: 10000000, output_every: 1}
//   diff: {scheme: central2, step: 0, scaling: relative, analytic: true}
//   outputs: {trajectory: run.csv, format: csv, fields: fields.json}
//   points: [[x1, .., xn, t1, .., tn], ...]   # evaluation points for `fields`
//   verify: [cor2, unit-speed]
//   seed: 42                       # randomized checks; default seed of random-trig
//
// Unknown keys are rejected so typos do not silently fall back to defaults.

enum class RunMode { complex, projective };

struct ScenarioOutputs {
  std::string trajectory;  // empty: <name>.<format>
  std::string format = "csv";
  std::string fields;      // empty: <name>-fields.json
};

struct Scenario {
  int schema = 1;
  std::string name = "scenario";
  std::string origin;
  MetricDefinition metric;
  std::string metric_catalog;  // empty for inline metrics
  CatalogParams metric_params;
  RunMode mode = RunMode::complex;
  ProjectiveRoute route = ProjectiveRoute::direct;
  PhasePoint initial;
  Vector dx;
  Vector dt;
  bool normalize = true;
  IntegratorConfig integrator;
  DiffConfig diff;
  ScenarioOutputs outputs;
  std::vector<PhasePoint> points;
  std::vector<std::string> checks;
  std::uint64_t seed = 1;
  bool seed_given = false;
};

// Throws SyntaxError (with the offending line) for malformed YAML and schema
// violations, plus whatever metric construction throws.
Scenario parse_scenario(const std::string& text, const std::string& origin = "<scenario>",
                        std::optional<std::uint64_t> seed_override = std::nullopt);
Scenario load_scenario(const std::string& path, std::optional<std::uint64_t> seed_override = std::nullopt);

// Points file for `fields --points`: one point per line, 2n numbers separated
// by commas or whitespace (x then t); blank lines and '#' comments ignored.
std::vector<PhasePoint> load_points(const std::string& path, int dimension);

std::string to_string(RunMode mode);
std::string to_string(ProjectiveRoute route);

}  // namespace cxgeo
