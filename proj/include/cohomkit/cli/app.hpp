#pragma once
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

namespace cohomkit::cli {

inline constexpr const char* kToolVersion = "1.0.0";

// Exit statuses.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitCapacity = 3;

// Parses argv and runs catalog, cohom, rhat, bounds or verify.
int run_command(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

struct CriterionResult {
  int id = 0;
  std::string title;  // the property checked
  bool passed = false;
  size_t instances = 0;
  size_t skipped = 0;  // instances above the order limit
  std::string detail;
  double seconds = 0;
};

struct SuiteOptions {
  uint64_t max_order = 0;  // 0: no limit
  uint64_t seed = 1;
  std::vector<int> only;  // empty: all criteria
  std::function<void(const CriterionResult&)> on_result;
};

std::vector<CriterionResult> run_paper_suite(const SuiteOptions& opts);
std::string format_result(const CriterionResult& r);
nlohmann::json to_json(const CriterionResult& r);

}  // namespace cohomkit::cli
