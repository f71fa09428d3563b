#include "cxgeo/cli.hpp"

#include "cxgeo/errors.hpp"
#include "cxgeo/io.hpp"
#include "cxgeo/scenario.hpp"
#include "cxgeo/verify.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>

namespace cxgeo {

namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

int exit_code_for(const Error& e) {
  switch (e.category()) {
    case ErrorCategory::parse: return kExitParse;
    case ErrorCategory::domain: return kExitDomain;
    case ErrorCategory::numerical: return kExitNumerical;
    case ErrorCategory::io: return kExitIo;
  }
  return kExitNumerical;
}

fs::path output_path(const std::string& name) {
  const fs::path p(name);
  if (p.is_absolute()) return p;
  const char* dir = std::getenv("CXGEO_OUTPUT_DIR");
  return dir && *dir ? fs::path(dir) / p : p;
}

// Writes through `emit` to `target`, or to `out` when target is "-".
template <typename Emit>
std::string write_output(const std::string& target, std::ostream& out, Emit&& emit) {
  if (target == "-") {
    emit(out);
    return "<stdout>";
  }
  const fs::path path = output_path(target);
  std::error_code ec;
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  std::ofstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot write '" + path.string() + "'");
  emit(file);
  file.flush();
  if (!file) throw IoError("write to '" + path.string() + "' failed");
  return path.string();
}

RunMetadata run_metadata(const Scenario& s) {
  RunMetadata m;
  m["scenario"] = s.name;
  m["metric"] = s.metric.name;
  m["metric_description"] = s.metric.description;
  m["metric_hash"] = metric_hash(s.metric);
  m["mode"] = to_string(s.mode);
  if (s.mode == RunMode::projective) m["route"] = to_string(s.route);
  m["integrator"] = {{"method", to_string(s.integrator.method)},
                     {"step", s.integrator.step},
                     {"abs_tol", s.integrator.abs_tol},
                     {"rel_tol", s.integrator.rel_tol},
                     {"tau", {s.integrator.tau_begin, s.integrator.tau_end}},
                     {"max_steps", s.integrator.max_steps},
                     {"output_every", s.integrator.output_every}};
  m["diff"] = {{"scheme", to_string(s.diff.scheme)},
               {"step", s.diff.step},
               {"scaling", s.diff.scaling == StepScaling::relative ? "relative" : "absolute"},
               {"analytic", s.diff.use_analytic}};
  m["seed"] = s.seed;
  return m;
}

int cmd_geodesic(const std::string& scenario_path, std::optional<std::uint64_t> seed, const std::string& output,
                 std::ostream& out, std::ostream& err) {
  const Scenario s = load_scenario(scenario_path, seed);
  Trajectory traj;
  if (s.mode == RunMode::complex) {
    traj = integrate_complex(s.metric, {s.initial, s.dx, s.dt, s.integrator.tau_begin}, s.integrator, s.diff,
                             s.normalize);
  } else {
    traj = integrate_projective(s.metric, {s.initial.x, s.dx, s.initial.t, s.dt, s.integrator.tau_begin},
                                s.integrator, s.diff, s.route);
  }
  std::string target = output;
  if (target.empty()) target = s.outputs.trajectory.empty() ? s.name + "." + s.outputs.format : s.outputs.trajectory;
  const bool json = target.size() >= 5 ? target.compare(target.size() - 5, 5, ".json") == 0 : false;
  const bool as_json = target == "-" ? s.outputs.format == "json" : json;
  const std::string where = write_output(target, out, [&](std::ostream& os) {
    if (as_json)
      os << trajectory_json(traj, run_metadata(s)).dump(1) << '\n';
    else
      write_trajectory_csv(os, traj);
  });
  if (target != "-") {
    const TrajectorySample& last = traj.samples.back();
    out << "wrote " << traj.samples.size() << " samples to " << where << " (final tau " << format_double(last.tau)
        << ", speed " << format_double(last.speed) << ")\n";
  }
  (void)err;
  return kExitOk;
}

int cmd_fields(const std::string& scenario_path, const std::string& points_path, std::optional<std::uint64_t> seed,
               const std::string& output, std::ostream& out) {
  const Scenario s = load_scenario(scenario_path, seed);
  std::vector<PhasePoint> points = s.points;
  if (!points_path.empty()) points = load_points(points_path, s.metric.dimension);
  if (points.empty()) points.push_back(s.initial);

  ordered_json doc;
  doc["scenario"] = s.name;
  doc["metric"] = s.metric.name;
  doc["metric_hash"] = metric_hash(s.metric);
  ordered_json entries = ordered_json::array();
  for (std::size_t k = 0; k < points.size(); ++k) {
    try {
      entries.push_back(field_set_json(field_set(s.metric, points[k], s.diff)));
    } catch (Error& e) {
      e.add_context("point " + std::to_string(k + 1));
      throw;
    }
  }
  doc["fields"] = std::move(entries);
  std::string target = output;
  if (target.empty()) target = s.outputs.fields.empty() ? s.name + "-fields.json" : s.outputs.fields;
  const std::string where = write_output(target, out, [&](std::ostream& os) { os << doc.dump(1) << '\n'; });
  if (target != "-") out << "wrote field diagnostics at " << points.size() << " point(s) to " << where << '\n';
  return kExitOk;
}

int cmd_verify(const std::string& target, std::optional<std::uint64_t> seed, std::ostream& out) {
  std::optional<Scenario> scenario;
  std::vector<std::string> checks;
  if (is_suite_name(target) && !fs::exists(target)) {
    checks = resolve_suite(target);
  } else {
    scenario = load_scenario(target, seed);
    for (const std::string& c : scenario->checks) {
      const std::vector<std::string> expanded = resolve_suite(c);
      checks.insert(checks.end(), expanded.begin(), expanded.end());
    }
    if (checks.empty()) throw SyntaxError(1, 1, "scenario '" + target + "' lists no checks under 'verify'");
  }
  VerifyContext ctx;
  ctx.scenario = scenario ? &*scenario : nullptr;
  ctx.seed = scenario ? scenario->seed : seed.value_or(1);
  std::vector<CheckLine> lines;
  for (const std::string& c : checks) {
    std::vector<CheckLine> part = run_check(c, ctx);
    lines.insert(lines.end(), part.begin(), part.end());
  }
  print_check_table(out, lines);
  const bool ok = all_passed(lines);
  out << (ok ? "all checks passed\n" : "some checks FAILED\n");
  return ok ? kExitOk : kExitCheckFailed;
}

int cmd_compare(const std::string& a, const std::string& b, const std::string& output, std::ostream& out) {
  const ordered_json report = compare_runs(load_trajectory(a), load_trajectory(b));
  write_output(output.empty() ? "-" : output, out, [&](std::ostream& os) { os << report.dump(1) << '\n'; });
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Complex-manifold geodesics and projective real geodesics", "cxgeo"};
  app.require_subcommand(1);

  std::string scenario;
  std::string points;
  std::string output;
  std::string other;
  std::optional<std::uint64_t> seed;

  CLI::App* geodesic = app.add_subcommand("geodesic", "Integrate the scenario's geodesic and write the trajectory");
  geodesic->add_option("scenario", scenario, "Scenario file")->required();
  geodesic->add_option("--seed", seed, "Override the scenario seed");
  geodesic->add_option("-o,--output", output, "Output file ('-' for standard output)");

  CLI::App* fields = app.add_subcommand("fields", "Dump field diagnostics (JSON) at evaluation points");
  fields->add_option("scenario", scenario, "Scenario file")->required();
  fields->add_option("--points", points, "Points file: 2n numbers per line");
  fields->add_option("--seed", seed, "Override the scenario seed");
  fields->add_option("-o,--output", output, "Output file ('-' for standard output)");

  CLI::App* verify = app.add_subcommand("verify", "Run verification checks and print a pass/fail table");
  verify->add_option("target", scenario, "Scenario file, check name or 'all'")->required();
  verify->add_option("--seed", seed, "Seed for randomized checks");

  CLI::App* compare = app.add_subcommand("compare", "Compare two trajectory files (CSV or JSON)");
  compare->add_option("a", scenario, "First trajectory")->required();
  compare->add_option("b", other, "Second trajectory")->required();
  compare->add_option("-o,--output", output, "Report file (default: standard output)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success)) {
      out << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help());
      return kExitOk;
    }
    err << "cxgeo: " << e.what() << "\n" << "run 'cxgeo --help' for usage\n";
    return kExitUsage;
  }

  try {
    if (geodesic->parsed()) return cmd_geodesic(scenario, seed, output, out, err);
    if (fields->parsed()) return cmd_fields(scenario, points, seed, output, out);
    if (verify->parsed()) return cmd_verify(scenario, seed, out);
    if (compare->parsed()) return cmd_compare(scenario, other, output, out);
  } catch (const Error& e) {
    err << "cxgeo: " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const std::exception& e) {
    err << "cxgeo: internal error: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitUsage;
}

}  // namespace cxgeo
