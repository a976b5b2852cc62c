#pragma once
#include <string>
#include <vector>

#include "cohomkit/ffla/fq.hpp"
#include "cohomkit/groups/group.hpp"

namespace testutil {

using cohomkit::groups::GroupPtr;
using cohomkit::groups::Group;
using cohomkit::groups::Perm;
using cohomkit::groups::Point;

inline Perm cyc(size_t n, std::vector<std::vector<Point>> cycles) {
  for (auto& c : cycles)
    for (auto& x : c) --x;
  return Perm::from_cycles(n, cycles);
}

inline GroupPtr alt(size_t n) {
  std::vector<Point> c;
  for (size_t i = (n % 2) ? 1 : 2; i <= n; ++i) c.push_back(Point(i));
  return Group::from_perms(n, {cyc(n, {c}), cyc(n, {{1, 2, 3}})}, "A" + std::to_string(n));
}

inline GroupPtr sym(size_t n) {
  std::vector<Point> c(n);
  for (size_t i = 0; i < n; ++i) c[i] = Point(i + 1);
  return Group::from_perms(n, {cyc(n, {c}), cyc(n, {{1, 2}})}, "S" + std::to_string(n));
}

inline GroupPtr cyclic(size_t n) {
  std::vector<Point> c(n);
  for (size_t i = 0; i < n; ++i) c[i] = Point(i + 1);
  return Group::from_perms(n, {cyc(n, {c})}, "C" + std::to_string(n));
}

inline GroupPtr elem_abelian(size_t p, size_t d) {
  GroupPtr G = cyclic(p);
  for (size_t i = 1; i < d; ++i) G = cohomkit::groups::direct_product(G, cyclic(p));
  return G;
}

inline std::vector<uint32_t> mat(std::initializer_list<uint32_t> l) { return std::vector<uint32_t>(l); }

// SL(2,q) for q = 4, 8, 9 from a diagonal element of order q-1 and an element of order 3.
inline GroupPtr sl2_ext(uint32_t p, uint32_t e) {
  auto F = cohomkit::ffla::FqField::standard(p, e);
  uint32_t g = F->primitive_element();
  uint32_t m = F->neg(1);
  return Group::from_matrices(F, 2, {mat({g, 0, 0, F->inv(g)}), mat({m, 1, m, 0})}, "SL(2," + std::to_string(F->q()) + ")");
}

inline GroupPtr sl2_prime(uint32_t p) {
  auto F = cohomkit::ffla::FqField::standard(p, 1);
  return Group::from_matrices(F, 2, {mat({1, 1, 0, 1}), mat({0, p - 1, 1, 0})}, "SL(2," + std::to_string(p) + ")");
}

inline GroupPtr sl32() {
  auto F = cohomkit::ffla::FqField::standard(2, 1);
  return Group::from_matrices(F, 3, {mat({1, 1, 0, 0, 1, 0, 0, 0, 1}), mat({0, 0, 1, 1, 0, 0, 0, 1, 0})}, "SL(3,2)");
}

}  // namespace testutil
