#pragma once
#include <cstddef>
#include <cstdint>
#include <string>

namespace cohomkit {

struct Caps {
  uint64_t table_cap = 5000;
  uint64_t closure_cap = 200000;
  uint64_t oracle_cap = 120;
  uint64_t memory_budget = 1000000000;
  uint32_t retry_budget = 200;
  uint32_t exhaustive_cap = 12;
  uint64_t regular_chop_cap = 200;
  // Largest top resolution term extended by one more term; above it the top
  // degree is computed against the span of the top boundary.
  uint64_t top_extend_cap = 16000;
  uint64_t seed = 20240601;
};

Caps& caps();

// Overrides fields present in a JSON object file; unknown keys are an input error.
void load_caps_file(const std::string& path);

}  // namespace cohomkit
