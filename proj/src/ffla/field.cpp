#include "cohomkit/ffla/field.hpp"

#include <array>
#include <memory>
#include <mutex>

#include "cohomkit/errors.hpp"

#if defined(__AVX2__)
#include <immintrin.h>
#endif

namespace cohomkit::ffla {

bool is_prime(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

PrimeField::PrimeField(uint32_t p) : p_(p) {
  if (p >= 256 || !is_prime(p)) throw InputError("unsupported field characteristic " + std::to_string(p));
  mul_.resize(size_t(p) * p);
  inv_.assign(p, 0);
  for (uint32_t a = 0; a < p; ++a)
    for (uint32_t b = 0; b < p; ++b) {
      mul_[size_t(a) * p + b] = uint8_t(a * b % p);
      if (a * b % p == 1) inv_[a] = uint8_t(b);
    }
}

const PrimeField& PrimeField::get(uint32_t p) {
  static std::array<std::unique_ptr<PrimeField>, 256> cache;
  static std::mutex mu;
  if (p >= 256) throw InputError("unsupported field characteristic " + std::to_string(p));
  std::lock_guard<std::mutex> lock(mu);
  if (!cache[p]) cache[p] = std::make_unique<PrimeField>(p);
  return *cache[p];
}

namespace {

void axpy_gf2(uint8_t* y, const uint8_t* x, size_t n) {
  size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    uint64_t a, b;
    __builtin_memcpy(&a, y + i, 8);
    __builtin_memcpy(&b, x + i, 8);
    a ^= b;
    __builtin_memcpy(y + i, &a, 8);
  }
  for (; i < n; ++i) y[i] ^= x[i];
}

#if defined(__AVX2__)
// Valid for p < 16: lookup c*x mod p by pshufb, add, then fold with min(s, s - p).
void axpy_small_avx2(uint32_t p, const uint8_t* row, uint8_t* y, const uint8_t* x, size_t n) {
  alignas(16) uint8_t tab[16] = {0};
  for (uint32_t v = 0; v < p; ++v) tab[v] = row[v];
  __m128i t128 = _mm_load_si128(reinterpret_cast<const __m128i*>(tab));
  __m256i t = _mm256_broadcastsi128_si256(t128);
  __m256i pv = _mm256_set1_epi8(char(p));
  size_t i = 0;
  for (; i + 32 <= n; i += 32) {
    __m256i xv = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(x + i));
    __m256i yv = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(y + i));
    __m256i s = _mm256_add_epi8(yv, _mm256_shuffle_epi8(t, xv));
    s = _mm256_min_epu8(s, _mm256_sub_epi8(s, pv));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(y + i), s);
  }
  for (; i < n; ++i) {
    uint32_t s = uint32_t(y[i]) + row[x[i]];
    y[i] = uint8_t(s >= p ? s - p : s);
  }
}
#endif

}  // namespace

void PrimeField::axpy(uint8_t* y, const uint8_t* x, uint8_t c, size_t n) const {
  if (c == 0 || n == 0) return;
  if (p_ == 2) {
    axpy_gf2(y, x, n);
    return;
  }
  const uint8_t* row = &mul_[size_t(c) * p_];
#if defined(__AVX2__)
  if (p_ < 16) {
    axpy_small_avx2(p_, row, y, x, n);
    return;
  }
#endif
  for (size_t i = 0; i < n; ++i) {
    uint32_t s = uint32_t(y[i]) + row[x[i]];
    y[i] = uint8_t(s >= p_ ? s - p_ : s);
  }
}

void PrimeField::scale(uint8_t* y, uint8_t c, size_t n) const {
  if (c == 1) return;
  const uint8_t* row = &mul_[size_t(c) * p_];
  for (size_t i = 0; i < n; ++i) y[i] = row[y[i]];
}

}  // namespace cohomkit::ffla
