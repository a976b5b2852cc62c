#include <doctest.h>

#include "cohomkit/cohom/cohomology.hpp"
#include "cohomkit/config.hpp"
#include "cohomkit/errors.hpp"
#include "cohomkit/gmod/catalog.hpp"
#include "helpers.hpp"

using namespace cohomkit;
using namespace cohomkit::cohom;
using namespace cohomkit::gmod;
using namespace testutil;

namespace {

// Oracle for tiny groups: normalized cochains on all of G \ {1}, no gauge.
std::vector<size_t> naive_cocycles(const GModule& M) {
  const auto& T = M.group()->table();
  const auto& rho = M.table_matrices();
  const auto& F = ffla::PrimeField::get(M.p());
  uint32_t p = M.p();
  size_t n = T.size(), d = M.dim();
  auto idx1 = [&](size_t g) { return (g - 1) * d; };
  auto idx2 = [&](size_t g, size_t h) { return ((g - 1) * (n - 1) + (h - 1)) * d; };
  size_t U1 = (n - 1) * d, U2 = (n - 1) * (n - 1) * d;
  // delta0: M -> C^1, delta1: C^1 -> C^2, delta2: C^2 -> C^3 as explicit matrices.
  FpMatrix D0(p, U1, d), D1(p, U2, U1), D2(p, (n - 1) * (n - 1) * (n - 1) * d, U2);
  auto addm = [&](FpMatrix& D, size_t row, size_t col, const FpMatrix& A, uint8_t sc) {
    for (size_t r = 0; r < d; ++r)
      for (size_t c = 0; c < d; ++c) D(row + r, col + c) = F.add(D(row + r, col + c), F.mul(A(r, c), sc));
  };
  FpMatrix I = FpMatrix::identity(p, d);
  uint8_t m1 = uint8_t(p - 1);
  for (size_t g = 1; g < n; ++g) {
    addm(D0, idx1(g), 0, rho[g], 1);
    addm(D0, idx1(g), 0, I, m1);
  }
  for (size_t g = 1; g < n; ++g)
    for (size_t h = 1; h < n; ++h) {
      size_t row = idx2(g, h);
      addm(D1, row, idx1(h), rho[g], 1);
      if (size_t gh = T.mul(g, h); gh) addm(D1, row, idx1(gh), I, m1);
      addm(D1, row, idx1(g), I, 1);
    }
  for (size_t g = 1; g < n; ++g)
    for (size_t h = 1; h < n; ++h)
      for (size_t k = 1; k < n; ++k) {
        size_t row = (((g - 1) * (n - 1) + (h - 1)) * (n - 1) + (k - 1)) * d;
        addm(D2, row, idx2(h, k), rho[g], 1);
        if (size_t gh = T.mul(g, h); gh) addm(D2, row, idx2(gh, k), I, m1);
        if (size_t hk = T.mul(h, k); hk) addm(D2, row, idx2(g, hk), I, 1);
        addm(D2, row, idx2(g, h), I, m1);
      }
  size_t r0 = ffla::rank(D0), r1 = ffla::rank(D1), r2 = ffla::rank(D2);
  return {d - r0, U1 - r1 - r0, U2 - r2 - r1};
}

std::vector<size_t> h_of(const GModule& M, size_t k, ResolutionOptions o = {}) { return cohomology_dims(M, k, 1, o).h; }

}  // namespace

TEST_CASE("periodic resolution of C2") {
  auto C2 = cyclic(2);
  auto R = build_resolution(C2, 2, 3, 1, {true});
  CHECK(R->ranks() == std::vector<size_t>{1, 1, 1, 1});
  for (size_t i = 1; i <= 3; ++i) {
    const auto& D = R->images[i];
    REQUIRE(D.rows == 1);
    REQUIRE(D.cols == 2);
    for (uint8_t x : D.data) CHECK(x == 1);
  }
  CHECK(h_of(trivial_module(C2, 2), 2) == std::vector<size_t>{1, 1, 1});
  // Relative resolution coincides for a p-group.
  CHECK(build_resolution(C2, 2, 3, 1)->ranks() == std::vector<size_t>{1, 1, 1, 1});
}

TEST_CASE("cyclic and elementary abelian trivial coefficients") {
  for (uint32_t p : {2u, 3u, 5u, 7u}) CHECK(h_of(trivial_module(cyclic(p), p), 2) == std::vector<size_t>{1, 1, 1});
  for (uint32_t p : {2u, 3u})
    for (size_t d = 1; d <= 3; ++d) {
      auto G = elem_abelian(p, d);
      auto h = h_of(trivial_module(G, p), 2);
      CHECK(h[1] == d);
      CHECK(h[2] == d * (d + 1) / 2);
    }
}

TEST_CASE("cocycle oracle agrees with full normalized cochains on tiny groups") {
  std::vector<GModule> mods;
  for (auto G : {cyclic(2), cyclic(3), cyclic(4), elem_abelian(2, 2), sym(3), cyclic(6)})
    for (uint32_t p : {2u, 3u}) {
      for (auto& e : irreducible_catalog(G, p, 1).entries) mods.push_back(e.module);
      mods.push_back(regular_module(G, p));
    }
  for (auto& M : mods) {
    if (M.dim() > 3 && M.group()->order() > 4) continue;
    auto naive = naive_cocycles(M);
    CHECK(bar_oracle(M, 2).h == naive);
    CHECK(h_of(M, 2) == naive);
  }
}

TEST_CASE("resolution agrees with the cocycle oracle") {
  std::vector<GroupPtr> groups{elem_abelian(2, 2), sym(3), alt(4), sym(4), cyclic(6), alt(5), sl2_prime(3)};
  for (auto& G : groups)
    for (uint32_t p : {2u, 3u, 5u}) {
      auto cat = irreducible_catalog(G, p, 1);
      for (auto& e : cat.entries) {
        auto o = bar_oracle(e.module, 2).h;
        CHECK(h_of(e.module, 2) == o);
        if (G->order() <= 24) CHECK(h_of(e.module, 2, {true}) == o);
      }
    }
}

TEST_CASE("top degree from the boundary image agrees with one more term") {
  struct Case {
    GroupPtr G;
    uint32_t p;
  };
  for (auto [G, p] : {Case{alt(4), 2}, Case{alt(5), 2}, Case{alt(5), 3}, Case{sym(4), 3}, Case{sl2_prime(3), 2},
                      Case{sl2_prime(5), 5}, Case{elem_abelian(3, 2), 3}})
    for (size_t k = 1; k <= 3; ++k) {
      auto shortR = build_resolution(G, p, k, 3);
      auto S = std::make_shared<Resolution>(*shortR);
      S->terms.resize(k + 1);
      S->images.resize(k + 1);
      S->boundary_t.resize(k + 1);
      S->kernel_dims.resize(k);
      auto longR = build_resolution(G, p, k + 1, 3);
      for (const auto& e : irreducible_catalog(G, p, 1).entries) {
        CAPTURE(G->name());
        CAPTURE(p);
        CAPTURE(k);
        CHECK(cohomology_dims(*S, e.module, k).h == cohomology_dims(*longR, e.module, k).h);
      }
    }
}

TEST_CASE("documented values") {
  CHECK(bar_oracle(trivial_module(elem_abelian(2, 2), 2), 2).h[2] == 3);
  CHECK(bar_oracle(trivial_module(sym(3), 3), 2).h[1] == 0);
  auto SL24 = sl2_ext(2, 2);
  auto N = natural_module(SL24);
  CHECK(bar_oracle(N, 1).h[1] == 2);
  CHECK(h_of(N, 1)[1] == 2);
  CHECK(endo_field_degree(N) == 2);
  auto A5 = alt(5);
  auto h = h_of(trivial_module(A5, 2), 2);
  CHECK(h == std::vector<size_t>{1, 0, 1});
  auto R = build_resolution(A5, 2, 3, 1, {true});
  CHECK(R->length() == 3);
}

TEST_CASE("Schur multipliers of perfect groups") {
  // p-ranks of the multipliers: A5 -> 2, A6 -> 6, SL(3,2) -> 2, SL(2,5) -> 1.
  struct Case {
    GroupPtr G;
    uint32_t p;
    size_t h2;
  };
  for (auto& c : std::vector<Case>{{alt(5), 2, 1}, {alt(5), 3, 0}, {alt(5), 5, 0}, {alt(6), 2, 1}, {alt(6), 3, 1},
                                   {alt(6), 5, 0}, {sl32(), 2, 1}, {sl32(), 3, 0}, {sl32(), 7, 0}, {sl2_prime(5), 2, 0},
                                   {sl2_prime(5), 5, 0}}) {
    auto h = h_of(trivial_module(c.G, c.p), 2);
    CHECK(h[1] == 0);
    CHECK(h[2] == c.h2);
  }
}

TEST_CASE("coprime vanishing and Sylow restriction bounds") {
  auto S3 = sym(3);
  for (auto& e : irreducible_catalog(S3, 5, 1).entries) {
    auto h = h_of(e.module, 3);
    for (size_t i = 1; i <= 3; ++i) CHECK(h[i] == 0);
  }
  for (auto G : {alt(5), sym(4), sl2_prime(5)})
    for (uint32_t p : {2u, 3u}) {
      for (auto& e : irreducible_catalog(G, p, 1).entries) {
        auto exact = h_of(e.module, 2);
        auto bound = sylow_upper_bound(e.module, 2, 1).h;
        for (size_t i = 0; i <= 2; ++i) CHECK(exact[i] <= bound[i]);
      }
    }
  CHECK(sylow_upper_bound(trivial_module(alt(5), 7), 2, 1).h == std::vector<size_t>{1, 0, 0});
}

TEST_CASE("free modules are acyclic") {
  for (auto G : {alt(4), sym(3)})
    for (uint32_t p : {2u, 3u}) {
      auto h = h_of(regular_module(G, p), 2);
      CHECK(h == std::vector<size_t>{1, 0, 0});
    }
}

TEST_CASE("Shapiro equality") {
  auto A5 = alt(5);
  auto A4 = make_subgroup(A5, {cyc(5, {{1, 2, 3}}), cyc(5, {{2, 3, 4}})});
  auto r = shapiro_check(A4, trivial_module(A4.group, 2), 2, 1);
  CHECK(r.equal);
  CHECK(r.subgroup == h_of(trivial_module(A4.group, 2), 2));
  auto one = groups::trivial_subgroup(A5);
  auto t = shapiro_check(one, trivial_module(one.group, 3), 2, 1);
  CHECK(t.equal);
  CHECK(t.induced == std::vector<size_t>{1, 0, 0});
  auto whole = groups::whole_group(A5);
  CHECK(shapiro_check(whole, permutation_module(A5, 2), 2, 1).equal);
}

TEST_CASE("Kunneth expansion against direct products") {
  CHECK(kunneth_dim({{1, 1, 1}, {1, 1, 1}}, 2) == 3);
  CHECK(kunneth_dim({{0, 2, 5}, {0, 3, 7}}, 1) == 0);
  CHECK(kunneth_dim({{0, 2, 5}, {0, 3, 7}}, 2) == 6);
  CHECK_THROWS_AS(kunneth_dim({{1, 1}}, 2), InputError);
  for (auto [A, B, p] : std::vector<std::tuple<GroupPtr, GroupPtr, uint32_t>>{
           {cyclic(2), cyclic(2), 2}, {sym(3), cyclic(2), 2}, {sym(3), cyclic(2), 3}, {alt(4), cyclic(2), 2}}) {
    auto AxB = groups::direct_product(A, B);
    auto ca = irreducible_catalog(A, p, 1), cb = irreducible_catalog(B, p, 1);
    for (auto& ea : ca.entries)
      for (auto& eb : cb.entries) {
        auto X = outer_tensor(AxB, ea.module, eb.module);
        auto direct = h_of(X, 2);
        auto ha = h_of(ea.module, 2), hb = h_of(eb.module, 2);
        for (size_t r = 0; r <= 2; ++r) CHECK(direct[r] == kunneth_dim({ha, hb}, r));
      }
  }
}

TEST_CASE("long exact sequence subadditivity") {
  for (auto G : {alt(4), sym(4), alt(5)})
    for (uint32_t p : {2u, 3u}) {
      auto P = permutation_module(G, p);
      for (auto Y : {P, tensor(P, P)}) {
        auto r = is_irreducible(Y, 1);
        if (r.status != IrrStatus::Reducible) continue;
        auto sq = split(Y, r.submodule);
        auto hy = h_of(Y, 2), hx = h_of(sq.sub, 2), hz = h_of(sq.quotient, 2);
        for (size_t j = 0; j <= 2; ++j) CHECK(hy[j] <= hx[j] + hz[j]);
      }
    }
}

TEST_CASE("oracle capacity") {
  CHECK_THROWS_AS(bar_oracle(trivial_module(alt(6), 2), 2), CapacityError);
}

TEST_CASE("oracle ignores repeated and identity generators") {
  auto c = cyc(3, {{1, 2, 3}});
  auto G = Group::from_perms(3, {c, c, Perm(3), c * c}, "C3");
  auto h = bar_oracle(trivial_module(G, 3), 2).h;
  CHECK(h == std::vector<size_t>{1, 1, 1});
  auto S3 = Group::from_perms(3, {cyc(3, {{1, 2}}), cyc(3, {{1, 2}}), cyc(3, {{1, 2, 3}})}, "S3");
  for (uint32_t p : {2u, 3u}) CHECK(bar_oracle(trivial_module(S3, p), 2).h == h_of(trivial_module(S3, p), 2));
}
