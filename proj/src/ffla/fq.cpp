#include "cohomkit/ffla/fq.hpp"

#include <map>
#include <mutex>

#include "cohomkit/errors.hpp"

namespace cohomkit::ffla {

namespace {
constexpr uint32_t kTableLimit = 1024;
}

FqField::FqField(uint32_t p, const Poly& f) : p_(p), e_(uint32_t(poly_degree(f))), poly_(f) {
  q_ = 1;
  for (uint32_t i = 0; i < e_; ++i) q_ *= p_;
  if (q_ <= kTableLimit) {
    mul_.resize(size_t(q_) * q_);
    for (uint32_t a = 0; a < q_; ++a)
      for (uint32_t b = a; b < q_; ++b) mul_[size_t(a) * q_ + b] = mul_[size_t(b) * q_ + a] = uint16_t(mul_slow(a, b));
  }
  inv_.assign(q_, 0);
  for (uint32_t a = 1; a < q_; ++a) {
    if (inv_[a]) continue;
    uint32_t b = pow(a, q_ - 2);
    inv_[a] = b;
    inv_[b] = a;
  }
  auto prime_divs = prime_factors(q_ - 1);
  for (uint32_t g = 1; g < q_; ++g) {
    bool ok = true;
    for (uint64_t r : prime_divs)
      if (pow(g, (q_ - 1) / r) == 1) {
        ok = false;
        break;
      }
    if (ok) {
      prim_ = g;
      break;
    }
  }
}

std::shared_ptr<const FqField> FqField::standard(uint32_t p, uint32_t e) {
  static std::map<std::pair<uint32_t, uint32_t>, std::shared_ptr<const FqField>> cache;
  static std::mutex mu;
  if (!is_prime(p) || p >= 256) throw InputError("field characteristic must be a prime below 256");
  if (e < 1 || e > 16) throw InputError("unsupported extension degree " + std::to_string(e));
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(p, e);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  uint64_t count = 1;
  for (uint32_t i = 0; i < e; ++i) count *= p;
  if (count > (uint64_t(1) << 24)) throw InputError("field too large");
  Poly chosen;
  if (e == 1) {
    chosen = Poly{0, 1};
  } else {
    for (uint64_t code = 0; code < count; ++code) {
      Poly f = monic_from_code(p, int(e), code);
      if (poly_is_primitive(p, f)) {
        chosen = f;
        break;
      }
    }
  }
  auto F = std::shared_ptr<const FqField>(new FqField(p, chosen));
  cache.emplace(key, F);
  return F;
}

std::shared_ptr<const FqField> FqField::with_poly(uint32_t p, const Poly& f0) {
  if (!is_prime(p) || p >= 256) throw InputError("field characteristic must be a prime below 256");
  Poly f = f0;
  poly_trim(f);
  if (f.empty() || f.back() != 1) throw InputError("defining polynomial must be monic");
  if (!poly_is_irreducible(p, f)) throw InputError("defining polynomial is reducible over GF(" + std::to_string(p) + ")");
  return std::shared_ptr<const FqField>(new FqField(p, f));
}

std::vector<uint8_t> FqField::coeffs(uint32_t a) const {
  std::vector<uint8_t> c(e_);
  for (uint32_t i = 0; i < e_; ++i) {
    c[i] = uint8_t(a % p_);
    a /= p_;
  }
  return c;
}

uint32_t FqField::from_coeffs(const std::vector<uint8_t>& c) const {
  uint32_t a = 0;
  for (size_t i = c.size(); i-- > 0;) a = a * p_ + c[i] % p_;
  return a;
}

uint32_t FqField::add(uint32_t a, uint32_t b) const {
  uint32_t r = 0, m = 1;
  for (uint32_t i = 0; i < e_; ++i) {
    r += ((a % p_ + b % p_) % p_) * m;
    a /= p_;
    b /= p_;
    m *= p_;
  }
  return r;
}

uint32_t FqField::neg(uint32_t a) const {
  uint32_t r = 0, m = 1;
  for (uint32_t i = 0; i < e_; ++i) {
    r += ((p_ - a % p_) % p_) * m;
    a /= p_;
    m *= p_;
  }
  return r;
}

uint32_t FqField::mul_slow(uint32_t a, uint32_t b) const {
  if (e_ == 1) return uint32_t(uint64_t(a) * b % p_);
  Poly pa = coeffs(a), pb = coeffs(b);
  poly_trim(pa);
  poly_trim(pb);
  Poly r = poly_mod(p_, poly_mul(p_, pa, pb), poly_);
  r.resize(e_, 0);
  return from_coeffs(r);
}

uint32_t FqField::mul(uint32_t a, uint32_t b) const {
  if (!mul_.empty()) return mul_[size_t(a) * q_ + b];
  return mul_slow(a, b);
}

uint32_t FqField::inv(uint32_t a) const {
  if (a == 0 || a >= q_) throw InputError("inverse of zero in GF(" + std::to_string(q_) + ")");
  return inv_[a];
}

uint32_t FqField::pow(uint32_t a, uint64_t k) const {
  uint32_t r = 1;
  while (k) {
    if (k & 1) r = mul(r, a);
    k >>= 1;
    if (k) a = mul(a, a);
  }
  return r;
}

FpMatrix FqField::mult_matrix(uint32_t a) const {
  FpMatrix M(p_, e_, e_);
  uint32_t basis = 1;
  for (uint32_t j = 0; j < e_; ++j) {
    auto c = coeffs(mul(a, basis));
    for (uint32_t i = 0; i < e_; ++i) M(i, j) = c[i];
    basis = mul(basis, e_ == 1 ? 1 : p_);
  }
  return M;
}

std::string FqField::to_string(uint32_t a) const {
  if (e_ == 1) return std::to_string(a);
  auto c = coeffs(a);
  std::string s;
  for (uint32_t i = 0; i < e_; ++i) {
    if (!c[i]) continue;
    if (!s.empty()) s += "+";
    if (i == 0) s += std::to_string(c[i]);
    else {
      if (c[i] != 1) s += std::to_string(c[i]) + "*";
      s += i == 1 ? "x" : "x^" + std::to_string(i);
    }
  }
  return s.empty() ? "0" : s;
}

}  // namespace cohomkit::ffla
