#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace gstab {

inline constexpr std::string_view kToolVersion = "0.1.0";

struct ConfidenceInterval {
  double low = 0.0;
  double high = 0.0;
  int iterations = 0;
};

struct MetricResult {
  std::string metric;
  std::optional<double> value;
  std::optional<ConfidenceInterval> ci;
  std::optional<std::vector<double>> per_split;
  nlohmann::ordered_json aux = nlohmann::ordered_json::object();
};

// One pass/fail comparison of an observed value against a bound.
struct Check {
  std::string name;
  double observed = 0.0;
  std::string relation;  // "<=", ">=", "<", ">", "abs<=", "within"
  double bound = 0.0;
  double tolerance = 0.0;  // only for "within"
  bool passed = false;
};

Check check_at_most(std::string name, double observed, double bound);
Check check_at_least(std::string name, double observed, double bound);
Check check_below(std::string name, double observed, double bound);
Check check_above(std::string name, double observed, double bound);
Check check_abs_at_most(std::string name, double observed, double bound);
Check check_within(std::string name, double observed, double target, double tolerance);

struct Report {
  std::string command;
  std::uint64_t seed = 320;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  std::vector<MetricResult> results;
  std::vector<Check> checks;
  nlohmann::ordered_json tables = nlohmann::ordered_json::object();
  std::vector<std::string> warnings;
  std::optional<double> elapsed_seconds;
};

nlohmann::ordered_json to_json(const Report& report);
std::string render(const Report& report);

}  // namespace gstab
