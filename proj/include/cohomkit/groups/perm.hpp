#pragma once
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace cohomkit::groups {

using Point = uint32_t;

// Permutation as an image array on points 0..n-1.
// Composition follows function notation: (a * b)(i) = a(b(i)).
class Perm {
 public:
  Perm() = default;
  explicit Perm(size_t n);
  explicit Perm(std::vector<Point> images);
  static Perm from_cycles(size_t degree, const std::vector<std::vector<Point>>& cycles);

  size_t degree() const { return img_.size(); }
  Point operator[](Point i) const { return img_[i]; }
  const std::vector<Point>& images() const { return img_; }
  bool is_identity() const;
  Perm inverse() const;
  uint64_t order() const;
  Perm pow(int64_t k) const;
  // Cycle notation with 1-based points; "()" for the identity.
  std::string to_cycles() const;
  std::vector<std::vector<Point>> cycles() const;

  friend Perm operator*(const Perm& a, const Perm& b);
  bool operator==(const Perm& o) const { return img_ == o.img_; }
  bool operator<(const Perm& o) const { return img_ < o.img_; }

 private:
  std::vector<Point> img_;
};

struct PermHash {
  size_t operator()(const Perm& g) const;
};

uint64_t lcm_u64(uint64_t a, uint64_t b);

}  // namespace cohomkit::groups
