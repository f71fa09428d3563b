#pragma once

#include "cxgeo/fields.hpp"
#include "cxgeo/geodesic.hpp"

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace cxgeo {

// Shortest text that parses back to exactly the same double.
std::string format_double(double v);

std::vector<std::string> trajectory_columns(int n);

// Columns: tau, x1..xn, t1..tn, Dx1..Dxn, Dt1..Dtn, speed, h_cond.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);
Trajectory read_trajectory_csv(std::istream& in, const std::string& origin = "<csv>");

// Run metadata stored next to the samples in the JSON format.
using RunMetadata = std::map<std::string, nlohmann::ordered_json>;

nlohmann::ordered_json trajectory_json(const Trajectory& traj, const RunMetadata& metadata);
Trajectory trajectory_from_json(const nlohmann::ordered_json& doc, const std::string& origin = "<json>");

// Reads either format, chosen by the ".json" extension. Throws IoError.
Trajectory load_trajectory(const std::string& path);

struct ComparisonOptions {
  double tau_tolerance = 1e-12;  // grids closer than this are taken as identical
};

// Max pointwise deviation overall and per state column. When the tau grids
// differ, B is linearly interpolated onto A's samples inside the common span
// and a bound on the interpolation error of B is reported. Throws
// IncompatibleDimensions.
nlohmann::ordered_json compare_runs(const Trajectory& a, const Trajectory& b, const ComparisonOptions& options = {});

nlohmann::ordered_json field_set_json(const FieldSet& fields);

}  // namespace cxgeo
