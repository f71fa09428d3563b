#include "cxgeo/cli.hpp"
#include "cxgeo/io.hpp"

#include "support.hpp"

#include <doctest.h>

#include <cstdlib>
#include <sstream>

using namespace cxgeo;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  args.insert(args.begin(), "cxgeo");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string scenario(const std::string& name) { return std::string(CXGEO_SCENARIO_DIR) + "/" + name; }

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("usage errors") {
  CHECK(cli({}).code == kExitUsage);
  CHECK(cli({"launch"}).code == kExitUsage);
  CHECK(cli({"geodesic"}).code == kExitUsage);
  CHECK(cli({"geodesic", "a.yaml", "--seed", "minus"}).code == kExitUsage);
  const Run help = cli({"--help"});
  CHECK(help.code == kExitOk);
  CHECK(help.out.find("geodesic") != std::string::npos);
}

TEST_CASE("geodesic to standard output") {
  const Run r = cli({"geodesic", scenario("euclidean-line.yaml"), "-o", "-"});
  REQUIRE(r.code == kExitOk);
  std::istringstream in(r.out);
  const Trajectory t = read_trajectory_csv(in);
  REQUIRE(t.samples.size() == 1001);
  const Vector x0 = (Vector(4) << 0.5, -1, 2, 0).finished();
  const Vector v = (Vector(4) << 0.3, 0.4, -0.2, 1.1).finished();
  CHECK(max_abs(t.samples.back().x - (x0 + v)) < 1e-12);
}

TEST_CASE("output directory, formats and determinism") {
  const auto dir = test::scratch_dir("cli");
  ::setenv("CXGEO_OUTPUT_DIR", dir.c_str(), 1);
  const Run a = cli({"geodesic", scenario("random-trig-complex.yaml")});
  REQUIRE(a.code == kExitOk);
  CHECK(a.out.find("wrote 1001 samples") != std::string::npos);
  const std::string first = test::read_file(dir / "random-trig-complex.json");
  CHECK(nlohmann::ordered_json::parse(first)["metadata"]["seed"] == 7);
  REQUIRE(cli({"geodesic", scenario("random-trig-complex.yaml"), "-o", "again.json"}).code == kExitOk);
  CHECK(test::read_file(dir / "again.json") == first);
  REQUIRE(cli({"geodesic", scenario("random-trig-complex.yaml"), "--seed", "8", "-o", "other.json"}).code == kExitOk);
  CHECK(test::read_file(dir / "other.json") != first);

  REQUIRE(cli({"geodesic", scenario("uniform-b-circle.yaml"), "-o", "c1.csv"}).code == kExitOk);
  REQUIRE(cli({"geodesic", scenario("uniform-b-circle.yaml"), "-o", "c2.csv"}).code == kExitOk);
  const Run cmp = cli({"compare", (dir / "c1.csv").string(), (dir / "c2.csv").string()});
  REQUIRE(cmp.code == kExitOk);
  CHECK(nlohmann::ordered_json::parse(cmp.out)["max_deviation"] == 0.0);

  REQUIRE(cli({"fields", scenario("random-trig-complex.yaml")}).code == kExitOk);
  const auto fields = nlohmann::ordered_json::parse(test::read_file(dir / "random-trig-complex-fields.json"));
  CHECK(fields["fields"].size() == 2);

  test::write_file(dir / "pts.txt", "0 0 0 0 0 0 0 0\n");
  REQUIRE(cli({"fields", scenario("random-trig-complex.yaml"), "--points", (dir / "pts.txt").string(), "-o", "f.json"})
              .code == kExitOk);
  CHECK(nlohmann::ordered_json::parse(test::read_file(dir / "f.json"))["fields"].size() == 1);
  ::unsetenv("CXGEO_OUTPUT_DIR");
  std::filesystem::remove_all(dir);
}

TEST_CASE("error exit codes") {
  const auto dir = test::scratch_dir("cli-errors");
  CHECK(cli({"geodesic", (dir / "missing.yaml").string()}).code == kExitIo);

  test::write_file(dir / "broken.yaml", "schema: 1\nmetric: {catalog: euclidean\n");
  const Run parse = cli({"geodesic", (dir / "broken.yaml").string()});
  CHECK(parse.code == kExitParse);
  CHECK(parse.err.find("line") != std::string::npos);

  test::write_file(dir / "log.yaml", "schema: 1\nmetric:\n  dimension: 2\n  gR: {\"1,1\": \"log(x1)\"}\n"
                                      "initial: {x: [-1, 0], dx: [1, 0]}\n");
  CHECK(cli({"geodesic", (dir / "log.yaml").string(), "-o", "-"}).code == kExitDomain);

  test::write_file(dir / "neg.yaml", "schema: 1\nmetric:\n  dimension: 2\n  gR: {\"1,1\": \"1 - x1\"}\n"
                                      "initial: {x: [0.9, 0], dx: [1, 0]}\nintegrator: {tau: [0, 1]}\n");
  const Run num = cli({"geodesic", (dir / "neg.yaml").string(), "-o", "-"});
  CHECK(num.code == kExitNumerical);
  CHECK(num.err.find("tau") != std::string::npos);

  std::ostringstream csv2;
  Trajectory small;
  small.dimension = 2;
  small.samples.push_back({0.0, Vector::Zero(2), Vector::Zero(2), Vector::Zero(2), Vector::Zero(2), 1.0, 1.0});
  write_trajectory_csv(csv2, small);
  test::write_file(dir / "two.csv", csv2.str());
  REQUIRE(cli({"geodesic", scenario("euclidean-line.yaml"), "-o", (dir / "four.csv").string()}).code == kExitOk);
  CHECK(cli({"compare", (dir / "four.csv").string(), (dir / "two.csv").string()}).code == kExitDomain);
  std::filesystem::remove_all(dir);
}

TEST_CASE("verify") {
  const Run single = cli({"verify", "neumann"});
  CHECK(single.code == kExitOk);
  CHECK(single.out.find("PASS") != std::string::npos);
  CHECK(cli({"verify", scenario("uniform-b-circle.yaml")}).code == kExitOk);
  CHECK(cli({"verify", scenario("real-diagonal-cor1.yaml")}).code == kExitOk);
  CHECK(cli({"verify", "no-such-check"}).code == kExitIo);
  CHECK(cli({"verify", scenario("euclidean-line.yaml")}).code == kExitParse);
}

}
