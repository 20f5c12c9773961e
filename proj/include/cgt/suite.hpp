#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace cgt {

enum class Outcome { Pass, Fail, Unknown };

std::string_view to_string(Outcome o);

struct CheckRecord {
  std::string id;
  std::string ref;  // short tag naming the property checked
  nlohmann::json inputs = nlohmann::json::object();
  Outcome outcome = Outcome::Unknown;
  std::string witness;  // nonempty on failure
};

struct RunReport {
  std::string suite;
  uint64_t seed = 0;
  std::vector<CheckRecord> records;  // sorted by id
  std::vector<std::pair<std::string, double>> timing_ms;  // only when requested

  size_t count(Outcome o) const;
  bool ok() const { return count(Outcome::Fail) == 0; }
  nlohmann::json to_json() const;
};

struct SuiteConfig {
  uint64_t seed = 1;
  bool timing = false;
  std::vector<size_t> radii{2, 4, 6, 8};
  uint64_t index_bound = 64;
  size_t random_samples = 200;
};

std::vector<std::string> suite_names();
// Throws ContractError for an unknown suite name.
RunReport run_suite(std::string_view name, const SuiteConfig& config = {});

}  // namespace cgt
