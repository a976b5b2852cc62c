#pragma once
#include <cstdint>
#include <stdexcept>
#include <string>

namespace cohomkit {

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CapacityError : public std::runtime_error {
 public:
  CapacityError(std::string cap, uint64_t limit, const std::string& detail = "")
      : std::runtime_error("capacity exceeded: " + cap + " (limit " + std::to_string(limit) + ")" +
                           (detail.empty() ? "" : ": " + detail)),
        cap_(std::move(cap)),
        limit_(limit) {}
  const std::string& cap() const { return cap_; }
  uint64_t limit() const { return limit_; }

 private:
  std::string cap_;
  uint64_t limit_;
};

class InternalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Randomized search exhausted its budget without a conclusion.
class Undecided : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cohomkit
