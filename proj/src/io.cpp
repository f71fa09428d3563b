#include "cxgeo/io.hpp"

#include "cxgeo/errors.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace cxgeo {

using nlohmann::ordered_json;

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::vector<std::string> trajectory_columns(int n) {
  std::vector<std::string> cols{"tau"};
  for (const char* prefix : {"x", "t", "Dx", "Dt"})
    for (int i = 1; i <= n; ++i) cols.push_back(prefix + std::to_string(i));
  cols.emplace_back("speed");
  cols.emplace_back("h_cond");
  return cols;
}

namespace {

std::vector<double> sample_row(const TrajectorySample& s) {
  std::vector<double> row{s.tau};
  for (const Vector* v : {&s.x, &s.t, &s.dx, &s.dt}) row.insert(row.end(), v->data(), v->data() + v->size());
  row.push_back(s.speed);
  row.push_back(s.h_condition);
  return row;
}

TrajectorySample sample_from_row(const std::vector<double>& row, int n) {
  TrajectorySample s;
  s.tau = row[0];
  Vector* parts[] = {&s.x, &s.t, &s.dx, &s.dt};
  for (int k = 0; k < 4; ++k) *parts[k] = Eigen::Map<const Vector>(row.data() + 1 + k * n, n);
  s.speed = row[1 + 4 * n];
  s.h_condition = row[2 + 4 * n];
  return s;
}

void check_sample_sizes(const Trajectory& traj) {
  for (const TrajectorySample& s : traj.samples)
    if (s.x.size() != traj.dimension || s.t.size() != traj.dimension || s.dx.size() != traj.dimension ||
        s.dt.size() != traj.dimension)
      throw DimensionMismatch("trajectory sample does not match the trajectory dimension");
}

int dimension_from_columns(std::size_t count, const std::string& origin) {
  if (count < 7 || (count - 3) % 4 != 0)
    throw IoError(origin + ": unexpected column count " + std::to_string(count));
  return static_cast<int>((count - 3) / 4);
}

double parse_number(std::string_view text, const std::string& where) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r')) text.remove_suffix(1);
  if (text == "inf") return INFINITY;
  if (text == "-inf") return -INFINITY;
  if (text == "nan") return NAN;
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size())
    throw IoError(where + ": cannot parse number '" + std::string(text) + "'");
  return v;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream is(line);
  while (std::getline(is, field, sep)) out.push_back(field);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

ordered_json number(double v) {
  // JSON has no infinities; the condition estimate of a singular h is the only
  // place they can appear.
  return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr);
}

ordered_json vector_json(const Vector& v) {
  ordered_json out = ordered_json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(number(v(i)));
  return out;
}

ordered_json matrix_json(const Matrix& m) {
  ordered_json out = ordered_json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) out.push_back(vector_json(m.row(i).transpose()));
  return out;
}

ordered_json tensor_json(const Tensor3& t) {
  ordered_json out = ordered_json::array();
  for (int i = 0; i < t.dim(); ++i) out.push_back(matrix_json(t.slice(i)));
  return out;
}

}  // namespace

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
  check_sample_sizes(traj);
  const std::vector<std::string> cols = trajectory_columns(traj.dimension);
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << '\n';
  for (const TrajectorySample& s : traj.samples) {
    const std::vector<double> row = sample_row(s);
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_double(row[i]);
    out << '\n';
  }
}

Trajectory read_trajectory_csv(std::istream& in, const std::string& origin) {
  std::string line;
  if (!std::getline(in, line)) throw IoError(origin + ": empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const std::vector<std::string> header = split(line, ',');
  const int n = dimension_from_columns(header.size(), origin);
  if (header != trajectory_columns(n)) throw IoError(origin + ": header is not a trajectory header");

  Trajectory traj{"csv", n, {}};
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const std::vector<std::string> fields = split(line, ',');
    const std::string where = origin + ":" + std::to_string(line_no);
    if (fields.size() != header.size()) throw IoError(where + ": expected " + std::to_string(header.size()) + " fields");
    std::vector<double> row;
    row.reserve(fields.size());
    for (const std::string& f : fields) row.push_back(parse_number(f, where));
    traj.samples.push_back(sample_from_row(row, n));
  }
  return traj;
}

ordered_json trajectory_json(const Trajectory& traj, const RunMetadata& metadata) {
  check_sample_sizes(traj);
  ordered_json doc;
  doc["kind"] = traj.kind;
  doc["dimension"] = traj.dimension;
  ordered_json meta = ordered_json::object();
  for (const auto& [key, value] : metadata) meta[key] = value;
  doc["metadata"] = meta;
  doc["columns"] = trajectory_columns(traj.dimension);
  ordered_json rows = ordered_json::array();
  for (const TrajectorySample& s : traj.samples) {
    ordered_json row = ordered_json::array();
    for (double v : sample_row(s)) row.push_back(number(v));
    rows.push_back(std::move(row));
  }
  doc["samples"] = std::move(rows);
  return doc;
}

Trajectory trajectory_from_json(const ordered_json& doc, const std::string& origin) {
  try {
    const int n = doc.at("dimension").get<int>();
    if (doc.at("columns").get<std::vector<std::string>>() != trajectory_columns(n))
      throw IoError(origin + ": columns do not match dimension " + std::to_string(n));
    Trajectory traj{doc.value("kind", std::string("json")), n, {}};
    for (const auto& row : doc.at("samples")) {
      if (row.size() != static_cast<std::size_t>(4 * n + 3)) throw IoError(origin + ": sample has wrong length");
      std::vector<double> values;
      for (const auto& v : row) values.push_back(v.is_null() ? INFINITY : v.get<double>());
      traj.samples.push_back(sample_from_row(values, n));
    }
    return traj;
  } catch (const nlohmann::json::exception& e) {
    throw IoError(origin + ": " + e.what());
  }
}

Trajectory load_trajectory(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  const bool is_json = path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0;
  if (!is_json) return read_trajectory_csv(in, path);
  try {
    return trajectory_from_json(ordered_json::parse(in), path);
  } catch (const nlohmann::json::parse_error& e) {
    throw IoError(path + ": " + e.what());
  }
}

namespace {

// State columns only (tau, speed and h_cond are not compared).
std::vector<double> state_of(const TrajectorySample& s) {
  std::vector<double> row;
  for (const Vector* v : {&s.x, &s.t, &s.dx, &s.dt}) row.insert(row.end(), v->data(), v->data() + v->size());
  return row;
}

bool same_grid(const Trajectory& a, const Trajectory& b, double tol) {
  if (a.samples.size() != b.samples.size()) return false;
  for (std::size_t k = 0; k < a.samples.size(); ++k)
    if (std::abs(a.samples[k].tau - b.samples[k].tau) > tol * std::max(1.0, std::abs(a.samples[k].tau))) return false;
  return true;
}

}  // namespace

ordered_json compare_runs(const Trajectory& a, const Trajectory& b, const ComparisonOptions& options) {
  if (a.dimension != b.dimension)
    throw IncompatibleDimensions("trajectories have dimensions " + std::to_string(a.dimension) + " and " +
                                 std::to_string(b.dimension));
  if (a.samples.empty() || b.samples.empty()) throw IncompatibleDimensions("cannot compare an empty trajectory");
  for (const Trajectory* t : {&a, &b})
    for (std::size_t k = 1; k < t->samples.size(); ++k)
      if (!(t->samples[k].tau > t->samples[k - 1].tau)) throw IncompatibleDimensions("tau is not strictly increasing");

  const int n = a.dimension;
  const std::vector<std::string> all_cols = trajectory_columns(n);
  const std::vector<std::string> cols(all_cols.begin() + 1, all_cols.end() - 2);
  std::vector<double> per(cols.size(), 0.0);
  double worst = 0.0;
  double worst_tau = a.samples.front().tau;
  std::string worst_col = cols.front();
  std::size_t compared = 0;
  double interp_error = 0.0;

  auto accumulate = [&](double tau, const std::vector<double>& va, const std::vector<double>& vb) {
    ++compared;
    for (std::size_t c = 0; c < cols.size(); ++c) {
      const double d = std::abs(va[c] - vb[c]);
      per[c] = std::max(per[c], d);
      if (d > worst) {
        worst = d;
        worst_tau = tau;
        worst_col = cols[c];
      }
    }
  };

  const bool resampled = !same_grid(a, b, options.tau_tolerance);
  double lo = a.samples.front().tau;
  double hi = a.samples.back().tau;
  if (!resampled) {
    for (std::size_t k = 0; k < a.samples.size(); ++k)
      accumulate(a.samples[k].tau, state_of(a.samples[k]), state_of(b.samples[k]));
  } else {
    if (b.samples.size() < 2) throw IncompatibleDimensions("resampling needs at least two samples in the second run");
    lo = std::max(lo, b.samples.front().tau);
    hi = std::min(hi, b.samples.back().tau);
    if (!(hi >= lo)) throw IncompatibleDimensions("tau spans do not overlap");
    // Linear interpolation error on [t_k, t_k+1] is at most h^2/8 max|f''|;
    // f'' h^2 is estimated by second differences of B.
    for (std::size_t k = 1; k + 1 < b.samples.size(); ++k) {
      const std::vector<double> f0 = state_of(b.samples[k - 1]);
      const std::vector<double> f1 = state_of(b.samples[k]);
      const std::vector<double> f2 = state_of(b.samples[k + 1]);
      const double h0 = b.samples[k].tau - b.samples[k - 1].tau;
      const double h1 = b.samples[k + 1].tau - b.samples[k].tau;
      const double h = std::max(h0, h1);
      for (std::size_t c = 0; c < f0.size(); ++c) {
        const double second = 2.0 * ((f2[c] - f1[c]) / h1 - (f1[c] - f0[c]) / h0) / (h0 + h1);
        interp_error = std::max(interp_error, std::abs(second) * h * h / 8.0);
      }
    }
    std::size_t j = 0;
    for (const TrajectorySample& s : a.samples) {
      if (s.tau < lo || s.tau > hi) continue;
      while (j + 2 < b.samples.size() && b.samples[j + 1].tau < s.tau) ++j;
      const TrajectorySample& b0 = b.samples[j];
      const TrajectorySample& b1 = b.samples[j + 1];
      const double w = (s.tau - b0.tau) / (b1.tau - b0.tau);
      std::vector<double> vb = state_of(b0);
      const std::vector<double> v1 = state_of(b1);
      for (std::size_t c = 0; c < vb.size(); ++c) vb[c] += w * (v1[c] - vb[c]);
      accumulate(s.tau, state_of(s), vb);
    }
    if (compared == 0) throw IncompatibleDimensions("no samples of the first run fall inside the common tau span");
  }

  ordered_json report;
  report["dimension"] = n;
  report["samples_compared"] = compared;
  report["resampled"] = resampled;
  report["tau_span"] = {lo, hi};
  report["max_deviation"] = worst;
  report["max_deviation_at"] = {{"column", worst_col}, {"tau", worst_tau}};
  ordered_json components = ordered_json::object();
  for (std::size_t c = 0; c < cols.size(); ++c) components[cols[c]] = per[c];
  report["per_component"] = components;
  report["interpolation_error_estimate"] = resampled ? interp_error : 0.0;
  return report;
}

ordered_json field_set_json(const FieldSet& f) {
  ordered_json doc;
  doc["point"] = {{"x", vector_json(f.point.x)}, {"t", vector_json(f.point.t)}};
  doc["phi_pp"] = tensor_json(f.primary.phi_pp);
  doc["phi_pm"] = tensor_json(f.primary.phi_pm);
  doc["phi_mp"] = tensor_json(f.primary.phi_mp);
  doc["phi_mm"] = tensor_json(f.primary.phi_mm);
  doc["fx"] = tensor_json(f.secondary.fx);
  doc["ft"] = tensor_json(f.secondary.ft);
  doc["eps"] = matrix_json(f.link.eps);
  doc["eps_norm"] = f.link.norm_estimate;
  doc["upsilon11"] = tensor_json(f.coefficients.upsilon11);
  doc["upsilon10"] = tensor_json(f.coefficients.upsilon10);
  doc["upsilon00"] = tensor_json(f.coefficients.upsilon00);
  doc["h"] = matrix_json(f.coefficients.h);
  doc["prop2_residual_max"] = f.prop2.raw_max();
  doc["prop2_symmetric_residual_max"] = f.prop2.symmetric_max();
  doc["prop3_residual_max"] = f.prop3.raw_max;
  return doc;
}

}  // namespace cxgeo
