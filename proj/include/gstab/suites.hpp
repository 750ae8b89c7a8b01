#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "gstab/report.hpp"

namespace gstab {

struct SuiteResult {
  std::string name;
  std::vector<Check> checks;
  std::vector<MetricResult> results;
  nlohmann::ordered_json tables = nlohmann::ordered_json::object();

  bool passed() const;
};

const std::vector<std::string>& suite_names();
SuiteResult run_suite(std::string_view name, std::uint64_t seed = 320);

}  // namespace gstab
