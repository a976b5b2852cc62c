#include "cohomkit/groups/perm.hpp"

#include <numeric>

#include "cohomkit/errors.hpp"

namespace cohomkit::groups {

Perm::Perm(size_t n) : img_(n) { std::iota(img_.begin(), img_.end(), Point(0)); }

Perm::Perm(std::vector<Point> images) : img_(std::move(images)) {
  std::vector<bool> seen(img_.size(), false);
  for (Point x : img_) {
    if (x >= img_.size() || seen[x]) throw InputError("image array is not a bijection");
    seen[x] = true;
  }
}

Perm Perm::from_cycles(size_t degree, const std::vector<std::vector<Point>>& cycles) {
  std::vector<Point> img(degree);
  std::iota(img.begin(), img.end(), Point(0));
  std::vector<bool> used(degree, false);
  for (const auto& cyc : cycles) {
    for (Point x : cyc) {
      if (x >= degree) throw InputError("cycle point " + std::to_string(x + 1) + " exceeds degree " + std::to_string(degree));
      if (used[x]) throw InputError("point " + std::to_string(x + 1) + " repeated in cycles");
      used[x] = true;
    }
    for (size_t i = 0; i < cyc.size(); ++i) img[cyc[i]] = cyc[(i + 1) % cyc.size()];
  }
  return Perm(std::move(img));
}

bool Perm::is_identity() const {
  for (size_t i = 0; i < img_.size(); ++i)
    if (img_[i] != i) return false;
  return true;
}

Perm Perm::inverse() const {
  Perm r(img_.size());
  for (size_t i = 0; i < img_.size(); ++i) r.img_[img_[i]] = Point(i);
  return r;
}

uint64_t lcm_u64(uint64_t a, uint64_t b) { return a / std::gcd(a, b) * b; }

uint64_t Perm::order() const {
  uint64_t o = 1;
  for (const auto& c : cycles()) o = lcm_u64(o, c.size());
  return o;
}

Perm Perm::pow(int64_t k) const {
  Perm base = k < 0 ? inverse() : *this;
  uint64_t e = uint64_t(k < 0 ? -k : k);
  Perm r(img_.size());
  while (e) {
    if (e & 1) r = r * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return r;
}

std::vector<std::vector<Point>> Perm::cycles() const {
  std::vector<std::vector<Point>> out;
  std::vector<bool> seen(img_.size(), false);
  for (Point i = 0; i < img_.size(); ++i) {
    if (seen[i]) continue;
    std::vector<Point> c;
    for (Point x = i; !seen[x]; x = img_[x]) {
      seen[x] = true;
      c.push_back(x);
    }
    out.push_back(std::move(c));
  }
  return out;
}

std::string Perm::to_cycles() const {
  std::string s;
  for (const auto& c : cycles()) {
    if (c.size() < 2) continue;
    s += "(";
    for (size_t i = 0; i < c.size(); ++i) s += (i ? " " : "") + std::to_string(c[i] + 1);
    s += ")";
  }
  return s.empty() ? "()" : s;
}

Perm operator*(const Perm& a, const Perm& b) {
  if (a.degree() != b.degree()) throw InputError("degree mismatch in permutation product");
  Perm r;
  r.img_.resize(a.degree());
  for (size_t i = 0; i < a.degree(); ++i) r.img_[i] = a.img_[b.img_[i]];
  return r;
}

size_t PermHash::operator()(const Perm& g) const {
  uint64_t h = 1469598103934665603ull;
  for (Point x : g.images()) {
    h ^= x;
    h *= 1099511628211ull;
  }
  return size_t(h);
}

}  // namespace cohomkit::groups
