#pragma once

#include <string>
#include <vector>

#include "kobalt/json_io.hpp"

namespace kobalt::cli {

/// One expected-value comparison inside a report.  `source` names where the
/// expected value comes from: "constant" for a fixed reference number,
/// "closed-form" for an independently evaluated expression, "identity" for a
/// structural identity, "oracle" for an independent numerical route.
struct Check {
  enum class Kind { AbsoluteError, AtLeast };

  std::string name;
  double expected = 0.0;
  double actual = 0.0;
  double tolerance = 0.0;
  std::string source;
  Kind kind = Kind::AbsoluteError;

  bool passed() const {
    if (kind == Kind::AtLeast) return actual >= expected;
    return std::abs(actual - expected) <= tolerance;
  }

  Json to_json() const {
    return Json{{"name", name},
                {"expected", expected},
                {"actual", actual},
                {"tolerance", tolerance},
                {"source", source},
                {"kind", kind == Kind::AtLeast ? "at_least" : "absolute_error"},
                {"pass", passed()}};
  }
};

struct ReportDocument {
  std::string experiment;
  Json inputs = Json::object();
  Json results = Json::object();
  Json residuals = Json::object();
  std::vector<Check> checks;

  void add_check(std::string name, double expected, double actual, double tolerance,
                 std::string source, Check::Kind kind = Check::Kind::AbsoluteError) {
    checks.push_back(
        {std::move(name), expected, actual, tolerance, std::move(source), kind});
  }

  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.passed()) return false;
    return true;
  }

  Json to_json() const {
    Json jchecks = Json::array();
    for (const auto& c : checks) jchecks.push_back(c.to_json());
    return Json{{"experiment", experiment}, {"inputs", inputs},   {"results", results},
                {"residuals", residuals},   {"checks", jchecks},  {"pass", all_pass()}};
  }
};

}  // namespace kobalt::cli
