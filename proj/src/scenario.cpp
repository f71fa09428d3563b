#include "cxgeo/scenario.hpp"

#include "cxgeo/errors.hpp"
#include "cxgeo/metric_spec.hpp"

#include <yaml-cpp/yaml.h>

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace cxgeo {

namespace {

[[noreturn]] void fail(const YAML::Node& node, const std::string& message) {
  const YAML::Mark mark = node.Mark();
  throw SyntaxError(mark.line + 1, mark.column + 1, message);
}

void allow_keys(const YAML::Node& map, const std::set<std::string>& allowed, const std::string& where) {
  if (!map.IsMap()) fail(map, where + " must be a mapping");
  for (const auto& kv : map) {
    const std::string key = kv.first.as<std::string>();
    if (!allowed.count(key)) fail(kv.first, "unknown key '" + key + "' in " + where);
  }
}

template <typename T>
T scalar(const YAML::Node& node, const std::string& what) {
  if (!node.IsScalar()) fail(node, what + " must be a scalar");
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    fail(node, what + " has an invalid value '" + node.Scalar() + "'");
  }
}

double number(const YAML::Node& node, const std::string& what) {
  const double v = scalar<double>(node, what);
  if (!std::isfinite(v)) fail(node, what + " must be finite");
  return v;
}

std::vector<double> numbers(const YAML::Node& node, const std::string& what) {
  if (node.IsScalar()) return {number(node, what)};
  if (!node.IsSequence()) fail(node, what + " must be a number or a list of numbers");
  std::vector<double> out;
  for (const auto& item : node) out.push_back(number(item, what));
  return out;
}

Vector vector_of(const YAML::Node& node, int n, const std::string& what) {
  if (!node.IsSequence()) fail(node, what + " must be a list of " + std::to_string(n) + " numbers");
  const std::vector<double> v = numbers(node, what);
  if (static_cast<int>(v.size()) != n)
    fail(node, what + " has " + std::to_string(v.size()) + " entries, expected " + std::to_string(n));
  return Eigen::Map<const Vector>(v.data(), n);
}

std::pair<int, int> component_key(const YAML::Node& key) {
  const std::string text = scalar<std::string>(key, "component key");
  const auto comma = text.find(',');
  int row = 0;
  int col = 0;
  auto parse_int = [&](std::string_view s, int& out) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
    return res.ec == std::errc() && res.ptr == s.data() + s.size();
  };
  if (comma == std::string::npos || !parse_int(std::string_view(text).substr(0, comma), row) ||
      !parse_int(std::string_view(text).substr(comma + 1), col))
    fail(key, "component key '" + text + "' must look like \"row,col\"");
  return {row, col};
}

// Re-anchors errors from the expression parser at the YAML node.
template <typename F>
void with_node_context(const YAML::Node& node, const std::string& what, F&& f) {
  try {
    f();
  } catch (const SyntaxError& e) {
    fail(node, what + ": " + e.what());
  } catch (const Error& e) {
    fail(node, what + ": " + e.what());
  }
}

void parse_metric(const YAML::Node& node, Scenario& s) {
  if (!node) throw SyntaxError(1, 1, "missing required key 'metric'");
  if (!node.IsMap()) fail(node, "'metric' must be a mapping");
  const bool has_catalog = static_cast<bool>(node["catalog"]);
  const bool has_inline = static_cast<bool>(node["dimension"]);
  if (has_catalog == has_inline) fail(node, "metric needs exactly one of 'catalog' or 'dimension'");

  if (has_catalog) {
    allow_keys(node, {"catalog", "params"}, "metric");
    s.metric_catalog = scalar<std::string>(node["catalog"], "metric.catalog");
    if (const YAML::Node params = node["params"]) {
      if (!params.IsMap()) fail(params, "metric.params must be a mapping");
      for (const auto& kv : params)
        s.metric_params[kv.first.as<std::string>()] = numbers(kv.second, "metric.params." + kv.first.as<std::string>());
    }
    CatalogParams params = s.metric_params;
    if (s.metric_catalog == "random-trig" && !params.count("seed") && s.seed_given)
      params["seed"] = {static_cast<double>(s.seed)};
    with_node_context(node, "metric", [&] { s.metric = catalog_metric(s.metric_catalog, params); });
    return;
  }

  allow_keys(node, {"dimension", "gR", "gI", "name"}, "metric");
  MetricSpec spec;
  spec.dimension = scalar<int>(node["dimension"], "metric.dimension");
  if (spec.dimension < 1) fail(node["dimension"], "metric.dimension must be >= 1");
  spec.name = node["name"] ? scalar<std::string>(node["name"], "metric.name") : s.name;
  for (const char* part : {"gR", "gI"}) {
    const YAML::Node table = node[part];
    if (!table) continue;
    if (!table.IsMap()) fail(table, std::string("metric.") + part + " must be a mapping");
    for (const auto& kv : table) {
      const auto [row, col] = component_key(kv.first);
      const std::string src = scalar<std::string>(kv.second, "component expression");
      const std::string what = std::string(part) + "[" + std::to_string(row) + "," + std::to_string(col) + "]";
      with_node_context(kv.second, what, [&] {
        if (part[1] == 'R')
          spec.set_real(row, col, src);
        else
          spec.set_imag(row, col, src);
      });
    }
  }
  s.metric = compile_metric(spec);
}

void parse_initial(const YAML::Node& node, Scenario& s) {
  const int n = s.metric.dimension;
  if (!node) throw SyntaxError(1, 1, "missing required key 'initial'");
  allow_keys(node, {"x", "t", "dx", "dt", "normalize"}, "initial");
  const Vector x = node["x"] ? vector_of(node["x"], n, "initial.x") : Vector::Zero(n);
  const Vector t = node["t"] ? vector_of(node["t"], n, "initial.t") : Vector::Zero(n);
  s.initial = PhasePoint(x, t);
  if (!node["dx"]) fail(node, "initial.dx is required");
  s.dx = vector_of(node["dx"], n, "initial.dx");
  s.dt = Vector::Zero(n);
  if (const YAML::Node dt = node["dt"]) {
    if (dt.IsScalar()) {
      const std::string mode = dt.Scalar();
      if (mode == "root-first")
        s.dt = Vector::Unit(n, 0);
      else if (mode == "root-all")
        s.dt = Vector::Ones(n);
      else
        fail(dt, "initial.dt must be a list, 'root-first' or 'root-all'");
    } else {
      s.dt = vector_of(dt, n, "initial.dt");
    }
  }
  if (node["normalize"]) s.normalize = scalar<bool>(node["normalize"], "initial.normalize");
}

void parse_integrator(const YAML::Node& node, IntegratorConfig& c) {
  if (!node) return;
  allow_keys(node, {"method", "step", "tau", "abs_tol", "rel_tol", "max_steps", "output_every"}, "integrator");
  if (node["method"])
    with_node_context(node["method"], "integrator.method",
                      [&] { c.method = parse_integrator_method(node["method"].Scalar()); });
  if (node["step"]) c.step = number(node["step"], "integrator.step");
  if (node["abs_tol"]) c.abs_tol = number(node["abs_tol"], "integrator.abs_tol");
  if (node["rel_tol"]) c.rel_tol = number(node["rel_tol"], "integrator.rel_tol");
  if (node["max_steps"]) c.max_steps = scalar<long>(node["max_steps"], "integrator.max_steps");
  if (node["output_every"]) c.output_every = scalar<int>(node["output_every"], "integrator.output_every");
  if (const YAML::Node tau = node["tau"]) {
    const std::vector<double> span = numbers(tau, "integrator.tau");
    if (span.size() != 2) fail(tau, "integrator.tau must be [begin, end]");
    c.tau_begin = span[0];
    c.tau_end = span[1];
  }
  with_node_context(node, "integrator", [&] { c.validate(); });
}

void parse_diff(const YAML::Node& node, DiffConfig& d) {
  if (!node) return;
  allow_keys(node, {"scheme", "step", "scaling", "analytic"}, "diff");
  if (node["scheme"])
    with_node_context(node["scheme"], "diff.scheme", [&] { d.scheme = parse_diff_scheme(node["scheme"].Scalar()); });
  if (node["step"]) {
    d.step = number(node["step"], "diff.step");
    if (d.step < 0.0) fail(node["step"], "diff.step must be positive (0 selects the default)");
  }
  if (const YAML::Node scaling = node["scaling"]) {
    const std::string v = scalar<std::string>(scaling, "diff.scaling");
    if (v == "relative")
      d.scaling = StepScaling::relative;
    else if (v == "absolute")
      d.scaling = StepScaling::absolute;
    else
      fail(scaling, "diff.scaling must be 'relative' or 'absolute'");
  }
  if (node["analytic"]) d.use_analytic = scalar<bool>(node["analytic"], "diff.analytic");
}

}  // namespace

std::string to_string(RunMode mode) { return mode == RunMode::complex ? "complex" : "projective"; }
std::string to_string(ProjectiveRoute route) { return route == ProjectiveRoute::direct ? "direct" : "upsilon"; }

Scenario parse_scenario(const std::string& text, const std::string& origin,
                        std::optional<std::uint64_t> seed_override) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw SyntaxError(e.mark.line + 1, e.mark.column + 1, e.msg);
  }
  if (!root.IsMap()) throw SyntaxError(1, 1, "scenario must be a YAML mapping");
  allow_keys(root, {"schema", "name", "metric", "mode", "route", "initial", "integrator", "diff", "outputs", "points",
                    "verify", "seed"},
             "scenario");

  Scenario s;
  s.origin = origin;
  if (!root["schema"]) throw SyntaxError(1, 1, "missing required key 'schema'");
  s.schema = scalar<int>(root["schema"], "schema");
  if (s.schema != 1) fail(root["schema"], "unsupported schema version " + std::to_string(s.schema));
  if (root["name"]) s.name = scalar<std::string>(root["name"], "name");
  if (root["seed"]) {
    s.seed = scalar<std::uint64_t>(root["seed"], "seed");
    s.seed_given = true;
  }
  if (seed_override) {
    s.seed = *seed_override;
    s.seed_given = true;
  }

  parse_metric(root["metric"], s);

  if (const YAML::Node mode = root["mode"]) {
    const std::string v = scalar<std::string>(mode, "mode");
    if (v == "complex")
      s.mode = RunMode::complex;
    else if (v == "projective")
      s.mode = RunMode::projective;
    else
      fail(mode, "mode must be 'complex' or 'projective'");
  }
  if (const YAML::Node route = root["route"]) {
    const std::string v = scalar<std::string>(route, "route");
    if (v == "direct")
      s.route = ProjectiveRoute::direct;
    else if (v == "upsilon")
      s.route = ProjectiveRoute::upsilon;
    else
      fail(route, "route must be 'direct' or 'upsilon'");
  }

  parse_initial(root["initial"], s);
  with_node_context(root["initial"], "initial", [&] { s.initial.validate(); });
  parse_integrator(root["integrator"], s.integrator);
  parse_diff(root["diff"], s.diff);

  if (const YAML::Node out = root["outputs"]) {
    allow_keys(out, {"trajectory", "format", "fields"}, "outputs");
    if (out["trajectory"]) s.outputs.trajectory = scalar<std::string>(out["trajectory"], "outputs.trajectory");
    if (out["fields"]) s.outputs.fields = scalar<std::string>(out["fields"], "outputs.fields");
    if (out["format"]) {
      s.outputs.format = scalar<std::string>(out["format"], "outputs.format");
      if (s.outputs.format != "csv" && s.outputs.format != "json")
        fail(out["format"], "outputs.format must be 'csv' or 'json'");
    }
  }

  if (const YAML::Node points = root["points"]) {
    if (!points.IsSequence()) fail(points, "points must be a list");
    const int n = s.metric.dimension;
    for (const auto& p : points) {
      const Vector v = vector_of(p, 2 * n, "points entry");
      s.points.emplace_back(v.head(n), v.tail(n));
    }
  }

  if (const YAML::Node checks = root["verify"]) {
    if (checks.IsScalar())
      s.checks.push_back(checks.Scalar());
    else if (checks.IsSequence())
      for (const auto& c : checks) s.checks.push_back(scalar<std::string>(c, "verify entry"));
    else
      fail(checks, "verify must be a check name or a list of check names");
  }
  return s;
}

Scenario load_scenario(const std::string& path, std::optional<std::uint64_t> seed_override) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open scenario '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  try {
    return parse_scenario(text.str(), path, seed_override);
  } catch (Error& e) {
    e.add_context(path);
    throw;
  }
}

std::vector<PhasePoint> load_points(const std::string& path, int dimension) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open points file '" + path + "'");
  std::vector<PhasePoint> out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    for (char& c : line)
      if (c == ',' || c == '\t' || c == '\r') c = ' ';
    std::vector<double> values;
    std::istringstream is(line);
    std::string token;
    while (is >> token) {
      double v = 0.0;
      const auto res = std::from_chars(token.data(), token.data() + token.size(), v);
      if (res.ec != std::errc() || res.ptr != token.data() + token.size())
        throw SyntaxError(line_no, 1, "cannot parse number '" + token + "' in points file '" + path + "'");
      values.push_back(v);
    }
    if (values.empty()) continue;
    if (static_cast<int>(values.size()) != 2 * dimension)
      throw SyntaxError(line_no, 1,
                        "expected " + std::to_string(2 * dimension) + " numbers per point in '" + path + "'");
    const Vector v = Eigen::Map<const Vector>(values.data(), 2 * dimension);
    out.emplace_back(v.head(dimension), v.tail(dimension));
  }
  if (out.empty()) throw IoError("points file '" + path + "' contains no points");
  return out;
}

}  // namespace cxgeo
