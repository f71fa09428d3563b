#pragma once

#include "cxgeo/scenario.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace cxgeo {

enum class CheckStatus { pass, fail, info };

struct CheckLine {
  std::string check;
  std::string item;
  CheckStatus status = CheckStatus::info;
  double value = 0.0;
  double threshold = 0.0;  // meaningless for info lines
  std::string detail;
};

struct VerifyContext {
  const Scenario* scenario = nullptr;  // metric and initial data override the defaults when set
  std::uint64_t seed = 1;
};

// cor1, cor2, unit-speed, route-equivalence, neumann, prop-residuals
const std::vector<std::string>& check_names();

// A single check name, or "all".
std::vector<std::string> resolve_suite(const std::string& name);
bool is_suite_name(const std::string& name);

// Throws UnknownIdentifier for an unknown check. Numerical failures inside a
// check are reported as failed lines rather than thrown.
std::vector<CheckLine> run_check(const std::string& name, const VerifyContext& ctx);

std::string to_string(CheckStatus status);
void print_check_table(std::ostream& out, const std::vector<CheckLine>& lines);
bool all_passed(const std::vector<CheckLine>& lines);

}  // namespace cxgeo
