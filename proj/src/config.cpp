#include "cohomkit/config.hpp"

#include <fstream>
#include <json.hpp>

#include "cohomkit/errors.hpp"

namespace cohomkit {

Caps& caps() {
  static Caps c;
  return c;
}

void load_caps_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InputError("config file " + path + ": " + e.what());
  }
  if (!j.is_object()) throw InputError("config file must hold a JSON object");
  Caps& c = caps();
  for (auto& [key, val] : j.items()) {
    if (!val.is_number_unsigned()) throw InputError("config key " + key + " must be a nonnegative integer");
    uint64_t v = val.get<uint64_t>();
    if (key == "table_cap") c.table_cap = v;
    else if (key == "closure_cap") c.closure_cap = v;
    else if (key == "oracle_cap") c.oracle_cap = v;
    else if (key == "memory_budget") c.memory_budget = v;
    else if (key == "retry_budget") c.retry_budget = uint32_t(v);
    else if (key == "exhaustive_cap") c.exhaustive_cap = uint32_t(v);
    else if (key == "regular_chop_cap") c.regular_chop_cap = v;
    else if (key == "top_extend_cap") c.top_extend_cap = v;
    else if (key == "seed") c.seed = v;
    else throw InputError("unknown config key " + key);
  }
}

}  // namespace cohomkit
