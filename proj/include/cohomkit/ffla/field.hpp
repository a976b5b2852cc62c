#pragma once
#include <cstddef>
#include <cstdint>
#include <vector>

namespace cohomkit::ffla {

bool is_prime(uint64_t n);

// Arithmetic and vector kernels for GF(p), p < 256.
class PrimeField {
 public:
  explicit PrimeField(uint32_t p);
  static const PrimeField& get(uint32_t p);

  uint32_t p() const { return p_; }
  uint8_t add(uint8_t a, uint8_t b) const {
    uint32_t s = uint32_t(a) + b;
    return uint8_t(s >= p_ ? s - p_ : s);
  }
  uint8_t sub(uint8_t a, uint8_t b) const { return uint8_t(a >= b ? a - b : a + p_ - b); }
  uint8_t neg(uint8_t a) const { return uint8_t(a ? p_ - a : 0); }
  uint8_t mul(uint8_t a, uint8_t b) const { return mul_[size_t(a) * p_ + b]; }
  uint8_t inv(uint8_t a) const { return inv_[a]; }
  uint8_t reduce(int64_t v) const {
    int64_t r = v % int64_t(p_);
    return uint8_t(r < 0 ? r + p_ : r);
  }

  // y += c * x
  void axpy(uint8_t* y, const uint8_t* x, uint8_t c, size_t n) const;
  // y *= c
  void scale(uint8_t* y, uint8_t c, size_t n) const;

 private:
  uint32_t p_;
  std::vector<uint8_t> mul_;
  std::vector<uint8_t> inv_;
};

}  // namespace cohomkit::ffla
