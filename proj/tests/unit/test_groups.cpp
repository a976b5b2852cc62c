#include <doctest.h>

#include <set>

#include "cohomkit/config.hpp"
#include "cohomkit/errors.hpp"
#include "cohomkit/groups/group.hpp"
#include "helpers.hpp"

using namespace cohomkit;
using namespace cohomkit::groups;
using namespace testutil;

namespace {

// Independent oracle: closure of the generators by brute force.
std::set<std::vector<Point>> brute_closure(size_t n, const std::vector<Perm>& gens) {
  std::set<std::vector<Point>> seen{Perm(n).images()};
  std::vector<Perm> queue{Perm(n)};
  for (size_t k = 0; k < queue.size(); ++k)
    for (auto& g : gens) {
      Perm h = queue[k] * g;
      if (seen.insert(h.images()).second) queue.push_back(h);
    }
  return seen;
}

}  // namespace

TEST_CASE("orders of permutation groups") {
  CHECK(alt(5)->order() == 60);
  CHECK(Group::from_perms(4, {}, "1")->order() == 1);
  CHECK(sym(6)->order() == 720);
  CHECK(alt(8)->order() == 20160);
  CHECK(sym(8)->order() == 40320);
  std::mt19937_64 rng(1);
  for (int t = 0; t < 20; ++t) {
    size_t n = 3 + rng() % 5;
    std::vector<Perm> gens;
    for (int k = 0; k < 2; ++k) {
      std::vector<Point> img(n);
      for (size_t i = 0; i < n; ++i) img[i] = Point(i);
      std::shuffle(img.begin(), img.end(), rng);
      if (t % 4 == 0) std::sort(img.begin() + 2, img.end());
      gens.emplace_back(img);
    }
    auto G = Group::from_perms(n, gens);
    auto brute = brute_closure(n, gens);
    CHECK(G->order() == brute.size());
    for (auto& img : brute) CHECK(G->contains(Perm(img)));
    for (int k = 0; k < 5; ++k) {
      Perm g = G->random_element(rng);
      auto w = G->factor(g);
      Perm prod(n);
      for (int32_t node : w) prod = prod * G->bsgs().slp().evaluate(node, G->gens());
      CHECK(prod == g);
    }
  }
}

TEST_CASE("membership rejects non-members") {
  auto A5 = alt(5);
  CHECK_FALSE(A5->contains(cyc(5, {{1, 2}})));
  CHECK(A5->contains(cyc(5, {{1, 2}, {3, 4}})));
  CHECK_THROWS_AS(A5->factor(cyc(5, {{1, 2}})), InputError);
  CHECK_THROWS_AS(Perm::from_cycles(3, {{0, 1}, {1, 2}}), InputError);
}

TEST_CASE("matrix groups") {
  auto F4 = ffla::FqField::standard(2, 2);
  uint32_t w = F4->gen(), wi = F4->inv(w);
  // The upper unitriangular and diagonal pair only generate the Borel subgroup.
  CHECK(Group::from_matrices(F4, 2, {mat({1, 1, 0, 1}), mat({w, 0, 0, wi})})->order() == 12);
  auto minus1 = [](const ffla::FieldPtr& F) { return F->neg(1); };
  for (auto [p, e, order] : std::vector<std::tuple<uint32_t, uint32_t, uint64_t>>{{2, 2, 60}, {2, 3, 504}, {3, 2, 720}}) {
    auto F = ffla::FqField::standard(p, e);
    uint32_t g = F->primitive_element();
    uint32_t m = minus1(F);
    auto G = Group::from_matrices(F, 2, {mat({g, 0, 0, F->inv(g)}), mat({m, 1, m, 0})});
    CHECK(G->order() == order);
  }
  for (auto [p, order] : std::vector<std::pair<uint32_t, uint64_t>>{{5, 120}, {7, 336}}) {
    auto F = ffla::FqField::standard(p, 1);
    auto G = Group::from_matrices(F, 2, {mat({1, 1, 0, 1}), mat({0, p - 1, 1, 0})});
    CHECK(G->order() == order);
  }
  auto F2 = ffla::FqField::standard(2, 1);
  auto SL32 = Group::from_matrices(F2, 3, {mat({1, 1, 0, 0, 1, 0, 0, 0, 1}), mat({0, 0, 1, 1, 0, 0, 0, 1, 0})});
  CHECK(SL32->order() == 168);
  CHECK(SL32->degree() == 7);
  CHECK_THROWS_AS(Group::from_matrices(F2, 2, {mat({1, 1, 1, 1})}), InputError);
  uint64_t saved = caps().closure_cap;
  caps().closure_cap = 100;
  CHECK_THROWS_AS(Group::from_matrices(F2, 3, {mat({1, 1, 0, 0, 1, 0, 0, 0, 1}), mat({0, 0, 1, 1, 0, 0, 0, 1, 0})}), CapacityError);
  caps().closure_cap = saved;
}

TEST_CASE("element enumeration") {
  CHECK(cyclic(2)->table().size() == 2);
  auto A5 = alt(5);
  const auto& T = A5->table();
  CHECK(T.size() == 60);
  CHECK(T.element(0).is_identity());
  std::set<std::vector<Point>> distinct;
  for (auto& g : T.elements()) distinct.insert(g.images());
  CHECK(distinct.size() == 60);
  auto S3 = sym(3);
  int order3 = 0;
  for (size_t i = 0; i < S3->table().size(); ++i) order3 += S3->table().element_order(i) == 3;
  CHECK(order3 == 2);
  for (size_t i = 0; i < 60; i += 7)
    for (size_t j = 0; j < 60; j += 5) CHECK(T.element(T.mul(i, j)) == T.element(i) * T.element(j));
  uint64_t saved = caps().table_cap;
  caps().table_cap = 10;
  CHECK_THROWS_AS(alt(5)->table(), CapacityError);
  caps().table_cap = saved;
}

TEST_CASE("conjugacy classes and counts of irreducibles") {
  auto A5 = alt(5);
  auto sizes = A5->classes().sizes;
  std::sort(sizes.begin(), sizes.end());
  CHECK(sizes == std::vector<uint32_t>{1, 12, 12, 15, 20});
  CHECK(irreducible_count(cyclic(3), 2) == 2);
  CHECK(irreducible_count(A5, 2) == 3);
  CHECK(irreducible_count(A5, 5) == 3);
  CHECK(irreducible_count(cyclic(2), 2) == 1);
  CHECK(irreducible_count(sym(4), 3) == 4);
}

TEST_CASE("Sylow subgroups") {
  auto A5 = alt(5);
  CHECK(sylow_subgroup(A5, 5, 1).order() == 5);
  CHECK(sylow_subgroup(A5, 2, 1).order() == 4);
  CHECK(sylow_subgroup(A5, 7, 1).order() == 1);
  CHECK(sylow_subgroup(sym(4), 2, 3).order() == 8);
  CHECK(sylow_subgroup(sym(6), 3, 3).order() == 9);
  auto P = sylow_subgroup(alt(8), 2, 5);
  CHECK(P.order() == 64);
  for (auto& g : P.group->gens()) CHECK(alt(8)->contains(g));
  for (uint64_t s = 0; s < 5; ++s) {
    auto Q = sylow_subgroup(sym(5), 2, s);
    CHECK(Q.order() == 8);
    CHECK((120 / Q.order()) % 2 == 1);
  }
}

TEST_CASE("coset representatives") {
  auto A5 = alt(5);
  auto all = coset_representatives(A5, whole_group(A5));
  REQUIRE(all.size() == 1);
  CHECK(all[0].is_identity());
  CHECK(coset_representatives(cyclic(3), trivial_subgroup(cyclic(3))).size() == 3);
  auto A4 = make_subgroup(A5, {cyc(5, {{1, 2, 3}}), cyc(5, {{1, 2}, {3, 4}})});
  CHECK(A4.order() == 12);
  auto reps = coset_representatives(A5, A4);
  CHECK(reps.size() == 5);
  CHECK(reps[0].is_identity());
  for (size_t i = 0; i < reps.size(); ++i)
    for (size_t j = 0; j < i; ++j) CHECK_FALSE(A4.group->contains(reps[i].inverse() * reps[j]));
  CHECK_THROWS_AS(make_subgroup(A5, {cyc(5, {{1, 2}})}), InputError);
}

TEST_CASE("regular representation and products") {
  auto C2r = regular_representation(cyclic(2));
  CHECK(C2r->degree() == 2);
  CHECK(C2r->gens()[0] == cyc(2, {{1, 2}}));
  auto S3r = regular_representation(sym(3));
  CHECK(S3r->degree() == 6);
  CHECK(S3r->order() == 6);
  int fixed_identity = 0;
  for (auto& g : S3r->table().elements()) fixed_identity += g.is_identity();
  CHECK(fixed_identity == 1);
  CHECK(direct_product(cyclic(2), cyclic(2))->order() == 4);
  CHECK(direct_product(alt(5), alt(5))->order() == 3600);
  CHECK(wreath_product(sym(5), 2)->order() == 28800);
  CHECK(Group::from_perms(10, wreath_product(sym(5), 2)->gens())->order() == 28800);
}

TEST_CASE("minimal generator counts") {
  CHECK(min_generators_probe(cyclic(6), 4, 1).d == 1);
  CHECK(min_generators_probe(direct_product(cyclic(2), cyclic(2)), 4, 1).d == 2);
  auto r = min_generators_probe(alt(5), 4, 1);
  CHECK(r.d == 2);
  CHECK(order_of_generated(5, r.witness) == 60);
  CHECK(min_generators_probe(elem_abelian(2, 3), 4, 1).d == 3);
  CHECK(min_generators_probe(elem_abelian(2, 4), 4, 1).d == 4);
  CHECK(min_generators_probe(elem_abelian(3, 3), 4, 1).d == 3);
  CHECK(min_generators_probe(elem_abelian(3, 4), 4, 1).d == 4);
  CHECK(min_generators_probe(alt(8), 4, 1).d == 2);
  CHECK_FALSE(min_generators_probe(elem_abelian(2, 3), 2, 1).d.has_value());
}

TEST_CASE("normal structure") {
  CHECK(is_simple(alt(5)));
  CHECK_FALSE(is_simple(alt(4)));
  CHECK(is_perfect(alt(5)));
  CHECK_FALSE(is_perfect(sym(5)));
  CHECK(derived_subgroup(sym(4))->order() == 12);
  auto F5 = ffla::FqField::standard(5, 1);
  auto SL25 = Group::from_matrices(F5, 2, {mat({1, 1, 0, 1}), mat({0, 4, 1, 0})});
  CHECK(is_perfect(SL25));
  CHECK(center(SL25).size() == 2);
}
