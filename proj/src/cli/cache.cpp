#include "cohomkit/cli/cache.hpp"

#include <openssl/evp.h>
#include <unistd.h>

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "cohomkit/errors.hpp"

namespace cohomkit::cli {

namespace fs = std::filesystem;

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr))
    throw InternalError("SHA-256 digest failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

ResultCache::ResultCache(std::string dir, std::ostream* warnings) : dir_(std::move(dir)), warn_(warnings) {
  if (dir_.empty()) return;
  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (ec || !fs::is_directory(dir_)) throw InputError("cannot create store directory " + dir_);
}

std::string ResultCache::default_dir() {
  if (const char* s = std::getenv("COHOMTOOL_STORE")) return s;
  if (const char* x = std::getenv("XDG_CACHE_HOME"); x && *x) return std::string(x) + "/cohomtool";
  if (const char* h = std::getenv("HOME"); h && *h) return std::string(h) + "/.cache/cohomtool";
  return "";
}

std::string ResultCache::key_hash(const nlohmann::json& key) { return sha256_hex(key.dump()); }

std::string ResultCache::path_for(const std::string& hash) const { return dir_ + "/" + hash + ".json"; }

std::optional<nlohmann::json> ResultCache::get(const nlohmann::json& key) const {
  if (!enabled()) return std::nullopt;
  std::string path = path_for(key_hash(key));
  std::ifstream in(path);
  if (!in) return std::nullopt;
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    auto j = nlohmann::json::parse(ss.str());
    if (!j.is_object() || !j.contains("key") || !j.contains("payload") || j["key"] != key)
      throw std::runtime_error("key mismatch");
    return j["payload"];
  } catch (const std::exception& e) {
    if (warn_) *warn_ << "warning: ignoring corrupt cache entry " << path << " (" << e.what() << ")\n";
    return std::nullopt;
  }
}

void ResultCache::put(const nlohmann::json& key, const nlohmann::json& payload) const {
  if (!enabled()) return;
  static std::atomic<uint64_t> counter{0};
  std::string hash = key_hash(key);
  std::random_device rd;
  std::string tmp = path_for(hash) + ".tmp." + std::to_string(::getpid()) + "." + std::to_string(counter++) + "." +
                    std::to_string(rd());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      if (warn_) *warn_ << "warning: cannot write cache entry in " << dir_ << "\n";
      return;
    }
    out << nlohmann::json{{"key", key}, {"payload", payload}}.dump();
    out.flush();
    if (!out) {
      std::error_code ec;
      fs::remove(tmp, ec);
      if (warn_) *warn_ << "warning: failed writing cache entry " << tmp << "\n";
      return;
    }
  }
  std::error_code ec;
  fs::rename(tmp, path_for(hash), ec);
  if (ec) {
    fs::remove(tmp, ec);
    if (warn_) *warn_ << "warning: cannot install cache entry " << path_for(hash) << "\n";
  }
}

}  // namespace cohomkit::cli
