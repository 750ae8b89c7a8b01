#include "gstab/report.hpp"

#include <cmath>

namespace gstab {

namespace {

Check make(std::string name, double observed, std::string relation, double bound, bool passed, double tol = 0.0) {
  return Check{std::move(name), observed, std::move(relation), bound, tol, passed && std::isfinite(observed)};
}

nlohmann::ordered_json number(std::optional<double> v) {
  if (!v || !std::isfinite(*v)) return nullptr;
  return *v;
}

}  // namespace

Check check_at_most(std::string name, double observed, double bound) {
  return make(std::move(name), observed, "<=", bound, observed <= bound);
}
Check check_at_least(std::string name, double observed, double bound) {
  return make(std::move(name), observed, ">=", bound, observed >= bound);
}
Check check_below(std::string name, double observed, double bound) {
  return make(std::move(name), observed, "<", bound, observed < bound);
}
Check check_above(std::string name, double observed, double bound) {
  return make(std::move(name), observed, ">", bound, observed > bound);
}
Check check_abs_at_most(std::string name, double observed, double bound) {
  return make(std::move(name), observed, "abs<=", bound, std::abs(observed) <= bound);
}
Check check_within(std::string name, double observed, double target, double tolerance) {
  return make(std::move(name), observed, "within", target, std::abs(observed - target) <= tolerance, tolerance);
}

nlohmann::ordered_json to_json(const Report& report) {
  nlohmann::ordered_json j;
  j["tool_version"] = kToolVersion;
  j["command"] = report.command;
  j["seed"] = report.seed;
  j["params"] = report.params;
  auto& results = j["results"] = nlohmann::ordered_json::array();
  for (const auto& r : report.results) {
    nlohmann::ordered_json e;
    e["metric"] = r.metric;
    e["value"] = number(r.value);
    if (r.ci) e["ci"] = {{"low", number(r.ci->low)}, {"high", number(r.ci->high)}, {"iterations", r.ci->iterations}};
    if (r.per_split) e["per_split"] = *r.per_split;
    if (!r.aux.empty()) e["aux"] = r.aux;
    results.push_back(std::move(e));
  }
  if (!report.checks.empty()) {
    auto& checks = j["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : report.checks) {
      nlohmann::ordered_json e;
      e["name"] = c.name;
      e["observed"] = number(c.observed);
      e["relation"] = c.relation;
      e["bound"] = c.bound;
      if (c.relation == "within") e["tolerance"] = c.tolerance;
      e["passed"] = c.passed;
      checks.push_back(std::move(e));
    }
  }
  if (!report.tables.empty()) j["tables"] = report.tables;
  j["warnings"] = report.warnings;
  if (report.elapsed_seconds) j["elapsed_seconds"] = *report.elapsed_seconds;
  return j;
}

std::string render(const Report& report) { return to_json(report).dump(2) + "\n"; }

}  // namespace gstab
