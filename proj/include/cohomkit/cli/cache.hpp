#pragma once
#include <optional>
#include <ostream>
#include <string>

#include <json.hpp>

namespace cohomkit::cli {

std::string sha256_hex(const std::string& data);

// On-disk result store. Each entry is one file named by the SHA-256 of its key;
// writes go to a temporary file that is renamed into place.
class ResultCache {
 public:
  // An empty directory disables the cache.
  ResultCache(std::string dir, std::ostream* warnings = nullptr);
  // COHOMTOOL_STORE, else $XDG_CACHE_HOME/cohomtool, else $HOME/.cache/cohomtool.
  static std::string default_dir();

  bool enabled() const { return !dir_.empty(); }
  const std::string& dir() const { return dir_; }
  static std::string key_hash(const nlohmann::json& key);
  // A missing entry is a miss; an unreadable or mismatched entry is a miss with a warning.
  std::optional<nlohmann::json> get(const nlohmann::json& key) const;
  void put(const nlohmann::json& key, const nlohmann::json& payload) const;

 private:
  std::string path_for(const std::string& hash) const;
  std::string dir_;
  std::ostream* warn_;
};

}  // namespace cohomkit::cli
