#include <doctest.h>

#include <algorithm>

#include "cohomkit/config.hpp"
#include "cohomkit/errors.hpp"
#include "cohomkit/gmod/catalog.hpp"
#include "cohomkit/gmod/hom.hpp"
#include "helpers.hpp"

using namespace cohomkit;
using namespace cohomkit::gmod;
using namespace testutil;

namespace {

// Oracle: Hom_G(M, N) as the nullspace of the Kronecker-form intertwining system.
size_t kron_hom_dim(const GModule& M, const GModule& N) {
  size_t m = M.dim(), n = N.dim();
  FpMatrix sys(M.p(), 0, m * n);
  for (size_t s = 0; s < M.ngens(); ++s) {
    // vec(X A) = (A^T kron I) vec(X), vec(B X) = (I kron B) vec(X), column stacking.
    FpMatrix L = ffla::kron(ffla::transpose(M.gen(s)), FpMatrix::identity(M.p(), n));
    FpMatrix R = ffla::kron(FpMatrix::identity(M.p(), m), N.gen(s));
    FpMatrix D = ffla::sub(L, R);
    sys = ffla::vstack(sys, D);
  }
  return m * n - ffla::rank(sys);
}

// Oracle: enumerate all vectors of F_p^n.
size_t brute_fixed_dim(const GModule& M) {
  size_t n = M.dim(), p = M.p(), count = 0, total = 1;
  for (size_t i = 0; i < n; ++i) total *= p;
  for (size_t code = 0; code < total; ++code) {
    FpVector v(n);
    for (size_t i = 0, c = code; i < n; ++i, c /= p) v[i] = uint8_t(c % p);
    bool fixed = true;
    for (size_t s = 0; s < M.ngens() && fixed; ++s) fixed = ffla::matvec(M.gen(s), v) == v;
    count += fixed;
  }
  size_t d = 0;
  while (count > 1) count /= p, ++d;
  return d;
}

// Oracle: orbit closure of span{v} under the generators by repeated rank growth.
size_t naive_spin_dim(const GModule& M, const FpVector& v) {
  std::vector<FpVector> vecs{v};
  size_t r = ffla::rank(FpMatrix::from_vectors(M.p(), M.dim(), vecs));
  for (size_t k = 0; k < vecs.size(); ++k)
    for (size_t s = 0; s < M.ngens(); ++s) {
      vecs.push_back(ffla::matvec(M.gen(s), vecs[k]));
      size_t r2 = ffla::rank(FpMatrix::from_vectors(M.p(), M.dim(), vecs));
      if (r2 == r)
        vecs.pop_back();
      else
        r = r2;
    }
  return r;
}

bool brute_irreducible(const GModule& M) {
  size_t n = M.dim(), p = M.p(), total = 1;
  for (size_t i = 0; i < n; ++i) total *= p;
  for (size_t code = 1; code < total; ++code) {
    FpVector v(n);
    for (size_t i = 0, c = code; i < n; ++i, c /= p) v[i] = uint8_t(c % p);
    if (naive_spin_dim(M, v) != n) return false;
  }
  return true;
}

std::vector<size_t> dims_of(const std::vector<CompositionFactor>& f) {
  std::vector<size_t> d;
  for (auto& x : f)
    for (size_t i = 0; i < x.multiplicity; ++i) d.push_back(x.module.dim());
  std::sort(d.begin(), d.end());
  return d;
}

std::vector<size_t> catalog_dims(const IrreducibleCatalog& c) {
  std::vector<size_t> d;
  for (auto& e : c.entries) d.push_back(e.module.dim());
  std::sort(d.begin(), d.end());
  return d;
}

GModule cyclic_field_module(const GroupPtr& T, uint32_t p, uint32_t e) {
  auto F = ffla::FqField::standard(p, e);
  return GModule(T, p, {F->mult_matrix(F->primitive_element())});
}

}  // namespace

TEST_CASE("module constructors satisfy the action axioms") {
  auto S3 = sym(3);
  auto A5 = alt(5);
  regular_module(S3, 2).verify_action();
  permutation_module(A5, 2).verify_action();
  auto SL24 = sl2_ext(2, 2);
  auto N = natural_module(SL24);
  CHECK(N.dim() == 4);
  N.verify_action();
  dual(N).verify_action();
  wedge2(N).verify_action();
  CHECK(wedge2(N).dim() == 6);
  tensor(N, dual(N)).verify_action();
  CHECK(tensor(N, N).dim() == 16);
  auto C2 = regular_module(cyclic(2), 2);
  CHECK(C2.dim() == 2);
  CHECK(C2.gen(0)(0, 1) == 1);
  CHECK(C2.gen(0)(0, 0) == 0);
  CHECK(wedge2(C2).dim() == 1);
  CHECK_THROWS_AS(tensor(C2, trivial_module(cyclic(2), 3)), InputError);
}

TEST_CASE("fixed points and commutators") {
  auto C2 = cyclic(2);
  auto R = regular_module(C2, 2);
  CHECK(fixed_points(R).rows == 1);
  CHECK(commutator_submodule(R, whole_group(C2)).rows == 1);
  auto A5 = alt(5);
  auto T = trivial_module(A5, 2);
  CHECK(fixed_points(T).rows == 1);
  CHECK(commutator_submodule(T, whole_group(A5)).rows == 0);
  auto A4 = alt(4);
  for (auto M : {permutation_module(sym(4), 2), permutation_module(sym(4), 3), regular_module(cyclic(4), 3),
                 natural_module(sl2_prime(3)), tensor(permutation_module(A4, 2), permutation_module(A4, 2))}) {
    if (M.dim() > 16) continue;
    CHECK(fixed_points(M).rows == brute_fixed_dim(M));
  }
  auto G = sym(4);
  auto M = permutation_module(G, 5);
  CHECK(fixed_points(M).rows + commutator_submodule(M, whole_group(G)).rows == M.dim());
  CHECK(fixed_points(regular_module(alt(5), 3)).rows == 1);
}

TEST_CASE("restriction and induction") {
  auto C4 = cyclic(4);
  auto H = make_subgroup(C4, {C4->gens()[0] * C4->gens()[0]});
  auto sign = GModule(H.group, 3, {FpMatrix::from_rows(3, {{2}})});
  auto V = induce(sign, H);
  V.verify_action();
  CHECK(V.dim() == 2);
  CHECK(fixed_points(V).rows == 0);
  auto A5 = alt(5);
  auto A4 = make_subgroup(A5, {cyc(5, {{1, 2, 3}}), cyc(5, {{2, 3, 4}})});
  auto P = induce(trivial_module(A4.group, 2), A4);
  CHECK(P.dim() == 5);
  CHECK(kron_hom_dim(P, permutation_module(A5, 2)) == 2);
  auto M = natural_module(sl2_ext(2, 2));
  CHECK(restrict(M, whole_group(M.group())).dim() == 4);
}

TEST_CASE("hom spaces agree with the Kronecker oracle") {
  std::vector<GModule> mods;
  auto S4 = sym(4);
  for (uint32_t p : {2u, 3u}) {
    auto P = permutation_module(S4, p);
    mods = {P, trivial_module(S4, p), dual(P), tensor(P, P), wedge2(P)};
    for (auto& a : mods)
      for (auto& b : mods) {
        if (a.dim() * b.dim() > 300) continue;
        CHECK(hom_dim(a, b) == kron_hom_dim(a, b));
        auto H = hom_space(a, b);
        for (auto& X : H.basis)
          for (size_t s = 0; s < a.ngens(); ++s) CHECK(ffla::multiply(X, a.gen(s)) == ffla::multiply(b.gen(s), X));
        CHECK(hom_nonzero(a, b) == (H.dim() > 0));
      }
  }
  auto A5 = alt(5);
  CHECK(hom_dim(trivial_module(A5, 2), regular_module(A5, 2)) == 1);
  auto M = natural_module(sl2_ext(2, 2));
  CHECK(hom_dim(tensor(M, trivial_module(M.group(), 2)), M) == hom_dim(M, M));
  CHECK(hom_dim(dual(dual(M)), M) >= 1);
}

TEST_CASE("irreducibility test against brute force") {
  std::vector<GModule> mods{trivial_module(alt(4), 2),
                            permutation_module(alt(4), 3),
                            permutation_module(alt(5), 2),
                            natural_module(sl2_ext(2, 2)),
                            natural_module(sl32()),
                            wedge2(natural_module(sl32())),
                            natural_module(sl2_prime(3)),
                            wedge2(regular_module(cyclic(3), 2)),
                            cyclic_field_module(cyclic(7), 2, 3),
                            regular_module(cyclic(3), 2)};
  for (auto& M : mods) {
    auto r = is_irreducible(M, 7);
    REQUIRE(r.status != IrrStatus::Undecided);
    CHECK((r.status == IrrStatus::Irreducible) == brute_irreducible(M));
    if (r.status == IrrStatus::Reducible) {
      size_t d = r.submodule.rows;
      CHECK(d > 0);
      CHECK(d < M.dim());
      CHECK(spin(M, r.submodule).rows == d);
    }
  }
  auto A5 = alt(5);
  auto r = is_irreducible(direct_sum(trivial_module(A5, 2), trivial_module(A5, 2)), 1);
  CHECK(r.status == IrrStatus::Reducible);
  CHECK(is_irreducible(regular_module(A5, 2), 3).status == IrrStatus::Reducible);
}

TEST_CASE("composition factors") {
  auto A5 = alt(5);
  CHECK(dims_of(composition_factors(permutation_module(A5, 2), 1)) == std::vector<size_t>{1, 4});
  auto reg = composition_factors(regular_module(A5, 2), 1);
  size_t total = 0;
  for (auto& f : reg) total += f.multiplicity * f.module.dim();
  CHECK(total == 60);
  auto a = permutation_module(sym(4), 2);
  auto ds = dims_of(composition_factors(direct_sum(a, wedge2(a)), 2));
  auto da = dims_of(composition_factors(a, 3));
  auto dw = dims_of(composition_factors(wedge2(a), 4));
  da.insert(da.end(), dw.begin(), dw.end());
  std::sort(da.begin(), da.end());
  CHECK(ds == da);
  auto N = natural_module(sl2_ext(2, 2));
  auto M = tensor(N, N);
  auto ref = dims_of(composition_factors(M, 1));
  for (uint64_t seed = 2; seed <= 6; ++seed) CHECK(dims_of(composition_factors(M, seed)) == ref);
  for (auto& f : composition_factors(M, 1))
    if (f.module.dim() <= 8) CHECK(brute_irreducible(f.module));
}

TEST_CASE("irreducible catalogs") {
  auto c3 = irreducible_catalog(cyclic(3), 2, 1);
  REQUIRE(c3.entries.size() == 2);
  CHECK(catalog_dims(c3) == std::vector<size_t>{1, 2});
  CHECK(c3.entries[0].module.is_trivial());
  CHECK(c3.entries[1].endo_degree == 2);
  auto c2 = irreducible_catalog(cyclic(2), 2, 1);
  REQUIRE(c2.entries.size() == 1);
  CHECK(c2.entries[0].module.is_trivial());
  CHECK(c2.entries[0].multiplicity == 2);
  auto a5 = irreducible_catalog(alt(5), 2, 1);
  CHECK(catalog_dims(a5) == std::vector<size_t>{1, 4, 4});
  size_t total = 0;
  for (auto& e : a5.entries) {
    total += e.multiplicity * e.module.dim();
    CHECK(e.module.dim() % e.endo_degree == 0);
    CHECK(brute_irreducible(e.module));
  }
  CHECK(total == 60);
  std::vector<size_t> endo;
  for (auto& e : a5.entries) endo.push_back(e.endo_degree);
  std::sort(endo.begin(), endo.end());
  CHECK(endo == std::vector<size_t>{1, 1, 2});
  for (size_t i = 0; i < a5.entries.size(); ++i)
    for (size_t j = 0; j < a5.entries.size(); ++j)
      CHECK((hom_dim(a5.entries[i].module, a5.entries[j].module) == 0) == (i != j));
  CHECK(irreducible_catalog(alt(5), 3, 1).entries.back().endo_degree == 2);
  CHECK(catalog_dims(irreducible_catalog(alt(5), 5, 1)) == std::vector<size_t>{1, 3, 5});
  CHECK(catalog_dims(irreducible_catalog(alt(5), 3, 1)) == std::vector<size_t>{1, 4, 6});
  CHECK(catalog_dims(irreducible_catalog(alt(5), 2, 9)) == catalog_dims(a5));
}

TEST_CASE("seeded catalog matches the regular chop") {
  for (auto [G, p] : std::vector<std::pair<GroupPtr, uint32_t>>{{alt(5), 2}, {alt(5), 3}, {sym(4), 3}, {sl32(), 2}}) {
    auto chop = irreducible_catalog(G, p, 1);
    CHECK(chop.method == "regular-chop");
    auto saved = caps().regular_chop_cap;
    caps().regular_chop_cap = 1;
    auto seeded = irreducible_catalog(G, p, 2);
    caps().regular_chop_cap = saved;
    CHECK(seeded.method == "seeded");
    REQUIRE(seeded.entries.size() == chop.entries.size());
    for (auto& e : chop.entries) {
      size_t matches = 0;
      for (auto& f : seeded.entries)
        if (f.module.dim() == e.module.dim() && isomorphic_irreducibles(e.module, f.module)) {
          ++matches;
          CHECK(f.multiplicity == e.multiplicity);
          CHECK(f.endo_degree == e.endo_degree);
        }
      CHECK(matches == 1);
    }
  }
}

TEST_CASE("Maschke splitting in coprime characteristic") {
  auto G = sym(4);
  auto cat = irreducible_catalog(G, 5, 1);
  std::mt19937_64 rng(3);
  auto P = permutation_module(G, 5);
  for (auto M : {P, tensor(P, P), wedge2(P), regular_module(G, 5)}) {
    size_t from_hom = 0;
    auto factors = composition_factors(M, 1);
    for (auto& e : cat.entries) {
      size_t h = hom_dim(M, e.module);
      from_hom += h / e.endo_degree * e.module.dim();
      for (auto& f : factors)
        if (isomorphic_irreducibles(f.module, e.module)) CHECK(f.multiplicity == h / e.endo_degree);
    }
    CHECK(from_hom == M.dim());
  }
}

TEST_CASE("Frobenius reciprocity dimensions") {
  auto A5 = alt(5);
  auto A4 = make_subgroup(A5, {cyc(5, {{1, 2, 3}}), cyc(5, {{2, 3, 4}})});
  auto D10 = make_subgroup(A5, {cyc(5, {{1, 2, 3, 4, 5}}), cyc(5, {{2, 5}, {3, 4}})});
  for (uint32_t p : {2u, 3u, 5u}) {
    auto catG = irreducible_catalog(A5, p, 1);
    for (const auto& H : {A4, D10}) {
      auto catH = irreducible_catalog(H.group, p, 1);
      for (auto& v : catH.entries)
        for (auto& w : catG.entries)
          CHECK(hom_dim(induce(v.module, H), w.module) == hom_dim(v.module, restrict(w.module, H)));
    }
  }
}

TEST_CASE("multiplicity-free exterior squares for cyclic field actions") {
  for (auto [p, e] : std::vector<std::pair<uint32_t, uint32_t>>{{3, 2}, {5, 2}, {2, 3}}) {
    uint32_t q = 1;
    for (uint32_t i = 0; i < e; ++i) q *= p;
    auto T = cyclic(q - 1);
    auto X = cyclic_field_module(T, p, e);
    REQUIRE(brute_irreducible(X));
    auto factors = composition_factors(wedge2(X), 1);
    for (auto& f : factors) {
      CHECK(f.multiplicity == 1);
      CHECK_FALSE(isomorphic_irreducibles(f.module, X));
    }
  }
}

TEST_CASE("endomorphism degrees") {
  CHECK(endo_field_degree(trivial_module(alt(5), 2)) == 1);
  auto c3 = irreducible_catalog(cyclic(3), 2, 1);
  CHECK(endo_field_degree(c3.entries[1].module) == 2);
  CHECK(endo_field_degree(cyclic_field_module(cyclic(7), 2, 3)) == 3);
  CHECK(endo_field_degree(natural_module(sl2_ext(2, 2))) == 2);
}

TEST_CASE("module generator counts") {
  auto A5 = alt(5);
  auto cat = irreducible_catalog(A5, 2, 1);
  for (auto& e : cat.entries) CHECK(min_module_generators(e.module, cat, 1).count == 1);
  auto R = regular_module(A5, 2);
  auto g = min_module_generators(R, cat, 1);
  CHECK(g.count == 1);
  CHECK(g.certified);
  CHECK(min_module_generators(direct_sum(R, R), cat, 1).count == 2);
  auto T = trivial_module(A5, 2);
  CHECK(min_module_generators(direct_sum(T, T), cat, 1).count == 2);
  auto C2 = cyclic(2);
  auto c2 = irreducible_catalog(C2, 2, 1);
  auto t2 = trivial_module(C2, 2);
  CHECK(min_module_generators(direct_sum(t2, t2), c2, 1).count == 2);
  for (auto& e : cat.entries) {
    if (e.module.dim() < 2) continue;
    auto w = min_module_generators(wedge2(e.module), cat, 1);
    CHECK(w.certified);
    CHECK(w.count <= e.module.dim() - 1);
  }
  auto SL32 = sl32();
  auto c = irreducible_catalog(SL32, 2, 1);
  auto N = natural_module(SL32);
  CHECK(min_module_generators(wedge2(N), c, 1).count <= 2);
}

TEST_CASE("trivial composition factors and fixed points") {
  auto A5 = alt(5);
  auto J = make_subgroup(A5, {cyc(5, {{1, 2, 3}})});
  CHECK(trivial_cf_count(trivial_module(A5, 2), J, 1).count == 1);
  auto C6 = cyclic(6);
  auto S2 = sylow_subgroup(C6, 2, 1);
  auto R = regular_module(C6, 3);
  auto r = trivial_cf_count(R, S2, 1);
  CHECK(r.coprime);
  CHECK(r.count == 3);
  CHECK(r.fixed_dim == brute_fixed_dim(restrict(R, S2)));
  CHECK(r.count == r.fixed_dim);
  auto cat = irreducible_catalog(A5, 2, 1);
  for (auto& e : cat.entries) {
    if (e.module.is_trivial()) continue;
    auto t = trivial_cf_count(e.module, J, 1);
    CHECK(t.bound_holds);
    CHECK(2 * t.fixed_dim <= e.module.dim());
  }
}
