#include "cohomkit/ffla/poly.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "cohomkit/errors.hpp"

namespace cohomkit::ffla {

void poly_trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

int poly_degree(const Poly& f) { return int(f.size()) - 1; }

Poly poly_mul(uint32_t p, const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  const PrimeField& F = PrimeField::get(p);
  Poly c(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i]) F.axpy(c.data() + i, b.data(), a[i], b.size());
  poly_trim(c);
  return c;
}

Poly poly_add(uint32_t p, const Poly& a, const Poly& b) {
  const PrimeField& F = PrimeField::get(p);
  Poly c(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < c.size(); ++i)
    c[i] = F.add(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
  poly_trim(c);
  return c;
}

std::pair<Poly, Poly> poly_divmod(uint32_t p, const Poly& a, const Poly& b) {
  if (b.empty()) throw InputError("polynomial division by zero");
  const PrimeField& F = PrimeField::get(p);
  Poly r = a;
  poly_trim(r);
  int db = poly_degree(b);
  if (poly_degree(r) < db) return {{}, r};
  Poly q(r.size() - b.size() + 1, 0);
  uint8_t lead_inv = F.inv(b.back());
  for (int d = poly_degree(r); d >= db; --d) {
    uint8_t c = F.mul(r[d], lead_inv);
    if (!c) continue;
    q[d - db] = c;
    F.axpy(r.data() + (d - db), b.data(), F.neg(c), b.size());
  }
  r.resize(db);
  poly_trim(r);
  poly_trim(q);
  return {q, r};
}

Poly poly_mod(uint32_t p, const Poly& a, const Poly& b) { return poly_divmod(p, a, b).second; }

Poly poly_gcd(uint32_t p, Poly a, Poly b) {
  poly_trim(a);
  poly_trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(p, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const PrimeField& F = PrimeField::get(p);
    F.scale(a.data(), F.inv(a.back()), a.size());
  }
  return a;
}

Poly poly_powmod(uint32_t p, const Poly& base, uint64_t e, const Poly& mod) {
  Poly r{1}, b = poly_mod(p, base, mod);
  r = poly_mod(p, r, mod);
  while (e) {
    if (e & 1) r = poly_mod(p, poly_mul(p, r, b), mod);
    e >>= 1;
    if (e) b = poly_mod(p, poly_mul(p, b, b), mod);
  }
  return r;
}

bool poly_divides(uint32_t p, const Poly& d, const Poly& a) { return poly_mod(p, a, d).empty(); }

Poly monic_from_code(uint32_t p, int degree, uint64_t code) {
  Poly f(degree + 1, 0);
  for (int i = 0; i < degree; ++i) {
    f[i] = uint8_t(code % p);
    code /= p;
  }
  f[degree] = 1;
  return f;
}

bool poly_is_irreducible(uint32_t p, const Poly& f0) {
  Poly f = f0;
  poly_trim(f);
  int d = poly_degree(f);
  if (d < 1) return false;
  for (int k = 1; 2 * k <= d; ++k) {
    uint64_t count = 1;
    for (int i = 0; i < k; ++i) count *= p;
    for (uint64_t code = 0; code < count; ++code)
      if (poly_divides(p, monic_from_code(p, k, code), f)) return false;
  }
  return true;
}

std::vector<uint64_t> prime_factors(uint64_t n) {
  std::vector<uint64_t> out;
  for (uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  if (n > 1) out.push_back(n);
  return out;
}

bool poly_is_primitive(uint32_t p, const Poly& f) {
  if (!poly_is_irreducible(p, f)) return false;
  int e = poly_degree(f);
  uint64_t q1 = 1;
  for (int i = 0; i < e; ++i) q1 *= p;
  q1 -= 1;
  Poly x{0, 1};
  for (uint64_t r : prime_factors(q1)) {
    Poly t = poly_powmod(p, x, q1 / r, f);
    if (t == Poly{1}) return false;
  }
  return true;
}

const std::vector<Poly>& monic_irreducibles(uint32_t p, int degree) {
  static std::map<std::pair<uint32_t, int>, std::vector<Poly>> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(p, degree);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::vector<Poly> out;
  uint64_t count = 1;
  for (int i = 0; i < degree; ++i) count *= p;
  for (uint64_t code = 0; code < count; ++code) {
    Poly f = monic_from_code(p, degree, code);
    if (poly_is_irreducible(p, f)) out.push_back(std::move(f));
  }
  return cache.emplace(key, std::move(out)).first->second;
}

FpMatrix poly_eval(const Poly& f, const FpMatrix& A) {
  size_t n = A.rows;
  FpMatrix R(A.p, n, n);
  for (int d = poly_degree(f); d >= 0; --d) {
    R = multiply(R, A);
    for (size_t i = 0; i < n; ++i) R(i, i) = PrimeField::get(A.p).add(R(i, i), f[d]);
  }
  return R;
}

// Krylov spaces relative to the span of earlier ones; the product of the
// relative minimal polynomials is the characteristic polynomial.
Poly charpoly(const FpMatrix& A) {
  if (A.rows != A.cols) throw InputError("charpoly of non-square matrix");
  size_t n = A.rows;
  uint32_t p = A.p;
  const PrimeField& F = PrimeField::get(p);
  Poly result{1};
  Echelon global(p, n);
  for (size_t seed = 0; seed < n && global.dim() < n; ++seed) {
    FpVector w(n, 0);
    w[seed] = 1;
    if (global.contains(w)) continue;
    Echelon local(p, 2 * n + 1, n);
    std::vector<FpVector> chain;
    for (size_t k = 0;; ++k) {
      FpVector red = w;
      global.reduce(red);
      FpVector aug(2 * n + 1, 0);
      std::copy(red.begin(), red.end(), aug.begin());
      aug[n + k] = 1;
      if (local.reduce(aug)) {
        Poly f(k + 1);
        for (size_t j = 0; j <= k; ++j) f[j] = aug[n + j];
        F.scale(f.data(), F.inv(f[k]), f.size());
        result = poly_mul(p, result, f);
        break;
      }
      local.add(aug);
      chain.push_back(red);
      w = vecmat(w, A);
    }
    for (auto& v : chain) global.add(v);
  }
  return result;
}

}  // namespace cohomkit::ffla
