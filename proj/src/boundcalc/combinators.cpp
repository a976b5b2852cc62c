#include "cohomkit/boundcalc/combinators.hpp"

#include <functional>

#include "cohomkit/cohom/cohomology.hpp"
#include "cohomkit/config.hpp"
#include "cohomkit/errors.hpp"
#include "cohomkit/gmod/catalog.hpp"
#include "cohomkit/gmod/hom.hpp"
#include "cohomkit/gmod/meataxe.hpp"

namespace cohomkit::boundcalc {

using ffla::FpMatrix;
using groups::Perm;

Subject cohom_subject(const GModule& M, size_t degree) {
  return Subject{M.group()->name(), M.p(), M.label(), degree, ""};
}

Subject input_subject(const GModule& M, const std::string& quantity) {
  return Subject{M.group()->name(), M.p(), M.label(), 0, quantity};
}

namespace {

Rational rat(uint64_t v) { return Rational(int64_t(v)); }

void require(bool ok, const std::string& what) {
  if (!ok) throw InputError("hypothesis fails: " + what);
}

bool is_identity(const FpMatrix& A) {
  for (size_t i = 0; i < A.rows; ++i)
    for (size_t j = 0; j < A.cols; ++j)
      if (A(i, j) != (i == j ? 1 : 0)) return false;
  return true;
}

bool acts_trivially(const GModule& M, const Subgroup& N) {
  for (const Perm& g : N.group->gens())
    if (!is_identity(M.element_matrix(g))) return false;
  return true;
}

bool irreducible(const GModule& M, uint64_t seed) {
  return gmod::is_irreducible(M, seed).status == gmod::IrrStatus::Irreducible;
}

bool sylow_cyclic(const GroupPtr& G, uint32_t p, uint64_t seed) {
  Subgroup P = groups::sylow_subgroup(G, p, seed);
  if (P.order() == 1) return true;
  const auto& T = P.group->table();
  for (size_t i = 0; i < T.size(); ++i)
    if (T.element_order(i) == P.order()) return true;
  return false;
}

FactId exact_fact(FactStore& store, const GModule& M, size_t degree, uint64_t seed, const std::string& note) {
  if (M.dim() == 0) return store.add_exact(cohom_subject(M, degree), 0, note.empty() ? "zero module" : note);
  auto h = cohom::cohomology_dims(M, degree, seed).h;
  return store.add_exact(cohom_subject(M, degree), h[degree], note);
}

}  // namespace

std::vector<FactId> record_exact(FactStore& store, const GModule& M, size_t maxdeg, uint64_t seed) {
  auto h = cohom::cohomology_dims(M, maxdeg, seed).h;
  std::vector<FactId> ids;
  for (size_t j = 0; j <= maxdeg; ++j) ids.push_back(store.add_exact(cohom_subject(M, j), h[j]));
  return ids;
}

bool is_faithful(const GModule& M) {
  const GroupPtr& G = M.group();
  if (G->order() == 1) return true;
  const auto& T = G->table();
  const auto& C = G->classes();
  for (uint32_t r : C.reps)
    if (r != 0 && is_identity(M.element_matrix(T.element(r)))) return false;
  return true;
}

FactId apply_restriction(FactStore& store, const GModule& M, size_t degree, uint64_t seed) {
  Subgroup P = groups::sylow_subgroup(M.group(), M.p(), seed);
  GModule MP = gmod::restrict(M, P);
  MP.set_label(M.label());
  FactId base = exact_fact(store, MP, degree, seed, "restriction to a Sylow " + std::to_string(M.p()) + "-subgroup");
  return store.derive(cohom_subject(M, degree), Lemma::Restriction, {base}, "restriction to " + P.group->name());
}

FactId apply_vanishing(FactStore& store, const GModule& M, const Subgroup& N, size_t degree) {
  require(N.order() % M.p() != 0, "p does not divide |N|");
  require(gmod::fixed_points(M, N).rows == 0, "M^N = 0");
  return store.derive(cohom_subject(M, degree), Lemma::Vanishing, {}, "N = " + N.group->name());
}

GModule quotient_module(const GModule& M, const Subgroup& N, const groups::Quotient& Q) {
  FpMatrix U = gmod::fixed_points(M, N);
  std::vector<FpMatrix> gens;
  if (U.rows == 0) {
    gens.assign(M.ngens(), FpMatrix(M.p(), 0, 0));
  } else {
    GModule sub = gmod::split(M, U).sub;
    gens = sub.gens();
  }
  return GModule(Q.group, M.p(), gens, M.label() + "^N");
}

FactId apply_inflation(FactStore& store, const GModule& M, const Subgroup& N, const groups::Quotient& Q,
                       size_t degree, FactId quotient_fact) {
  require(N.order() % M.p() != 0, "p does not divide |N|");
  require(acts_trivially(M, N), "N acts trivially on M");
  const Fact& f = store.get(quotient_fact);
  require(f.subject.group == Q.group->name() && f.subject.degree == degree && f.subject.quantity.empty(),
          "premise is a degree " + std::to_string(degree) + " fact on " + Q.group->name());
  return store.derive(cohom_subject(M, degree), Lemma::Inflation, {quotient_fact}, "N = " + N.group->name());
}

FactId apply_cyclic(FactStore& store, const GModule& M, size_t degree, uint64_t seed) {
  require(sylow_cyclic(M.group(), M.p(), seed), "Sylow p-subgroup is cyclic");
  if (irreducible(M, seed))
    return store.derive(cohom_subject(M, degree), Lemma::Cyclic, {}, "M irreducible, hence indecomposable");
  FactId dim = store.add_axiom(input_subject(M, "dim"), rat(M.dim()));
  return store.derive(cohom_subject(M, degree), Lemma::Cyclic, {dim}, "at most dim M indecomposable summands");
}

GModule frattini_quotient_module(const GroupPtr& G, const Subgroup& L, uint32_t p) {
  require(L.parent == G, "L is a subgroup of G");
  require(L.group->is_abelian(), "L is abelian");
  require(groups::p_part(L.order(), p) == L.order(), "L is a p-group");
  require(groups::is_normal(G, L.group), "L is normal");
  size_t deg = G->degree();
  std::vector<Perm> pw;
  for (const Perm& g : L.group->gens()) pw.push_back(g.pow(p));
  auto Lp = groups::Group::from_perms(deg, pw);
  // Basis of L/L^p chosen greedily from the elements of L.
  std::vector<Perm> basis, cur = pw;
  auto span = groups::Group::from_perms(deg, cur);
  const auto& T = L.group->table();
  for (size_t i = 0; i < T.size() && span->order() < L.order(); ++i)
    if (!span->contains(T.element(i))) {
      basis.push_back(T.element(i));
      cur.push_back(T.element(i));
      span = groups::Group::from_perms(deg, cur);
    }
  size_t d = basis.size();
  uint64_t combos = 1;
  for (size_t i = 0; i < d; ++i) combos *= p;
  if (combos > 4096) throw CapacityError("exhaustive_cap", 4096, "L/pL of order " + std::to_string(combos));
  std::vector<Perm> elems(combos, Perm(deg));
  for (uint64_t c = 0; c < combos; ++c) {
    uint64_t x = c;
    for (size_t i = 0; i < d; ++i, x /= p) elems[c] = elems[c] * basis[i].pow(int64_t(x % p));
  }
  auto coords = [&](const Perm& y) {
    for (uint64_t c = 0; c < combos; ++c)
      if (Lp->contains(y * elems[c].inverse())) return c;
    throw InternalError("element outside L");
  };
  std::vector<FpMatrix> mats;
  for (const Perm& g : G->gens()) {
    FpMatrix A(p, d, d);
    for (size_t j = 0; j < d; ++j) {
      uint64_t c = coords(g * basis[j] * g.inverse());
      for (size_t i = 0; i < d; ++i, c /= p) A(i, j) = uint8_t(c % p);
    }
    mats.push_back(std::move(A));
  }
  return GModule(G, p, mats, "L/pL");
}

FactId apply_abelian(FactStore& store, const GModule& V, const Subgroup& L, uint64_t seed) {
  const GroupPtr& G = V.group();
  require(acts_trivially(V, L), "L acts trivially on V");
  require(irreducible(V, seed), "V is irreducible");
  GModule Q = frattini_quotient_module(G, L, V.p());
  FactId h1 = store.add_axiom(input_subject(V, "dim Hom_G(L/pL, V)"), rat(gmod::hom_dim(Q, V)),
                              "L = " + L.group->name());
  size_t w = Q.dim() < 2 ? 0 : gmod::hom_dim(gmod::wedge2(Q), V);
  FactId h2 = store.add_axiom(input_subject(V, "dim Hom_G(wedge2(L/pL), V)"), rat(w), "L = " + L.group->name());
  Subject s = L.order() == G->order() ? cohom_subject(V, 2)
                                      : Subject{L.group->name(), V.p(), V.label(), 2, "H^2 fixed by " + G->name()};
  return store.derive(s, Lemma::Abelian, {h1, h2});
}

FactId apply_holt(FactStore& store, const GModule& M, uint64_t seed) {
  require(irreducible(M, seed), "M is irreducible");
  require(is_faithful(M), "M is faithful");
  uint32_t e = groups::log_p(groups::p_part(M.group()->order(), M.p()), M.p());
  FactId fe = store.add_axiom(input_subject(M, "e_p"), rat(e), "Sylow order p^e");
  FactId fd = store.add_axiom(input_subject(M, "dim"), rat(M.dim()));
  return store.derive(cohom_subject(M, 2), Lemma::Holt, {fe, fd});
}

Rational h_p1(const GroupPtr& G, uint32_t p, uint64_t seed) {
  Rational best = 1;
  for (const auto& e : gmod::irreducible_catalog(G, p, seed).entries) {
    auto h = cohom::cohomology_dims(e.module, 1, seed).h;
    best = std::max(best, Rational(1) + Rational(int64_t(h[1]), int64_t(e.module.dim())));
  }
  return best;
}

FactId apply_general(FactStore& store, const GModule& V, const ChiefData& c) {
  FactId s = store.add_axiom(input_subject(V, "s_p"), c.s_p, c.source);
  FactId h = store.add_axiom(input_subject(V, "h_p1"), c.h_p1, c.source);
  FactId l = store.add_axiom(input_subject(V, "l_p"), c.l_p, c.source);
  FactId d = store.add_axiom(input_subject(V, "dim"), rat(V.dim()));
  return store.derive(cohom_subject(V, 2), Lemma::General, {s, h, l, d});
}

FactId apply_derivations(FactStore& store, const Subject& target, size_t d, FactId dim_w) {
  FactId fd = store.add_axiom(Subject{target.group, target.p, "", 0, "generators"}, rat(d));
  return store.derive(target, Lemma::Derivations, {fd, dim_w}, "derivations are fixed by generator values");
}

FactId apply_usual(FactStore& store, const Subject& target, size_t degree, std::optional<FactId> quotient_term,
                   std::optional<FactId> normal_term, std::optional<FactId> h1_term) {
  if (degree != 1 && degree != 2) throw InputError("the extension inequality covers degrees 1 and 2");
  std::string gaps;
  if (!quotient_term) gaps += " H^j(H/N, M^N)";
  if (!normal_term) gaps += " H^j(N, M)^H";
  if (degree == 2 && !h1_term) gaps += " H^1(H/N, H^1(N, M))";
  if (!gaps.empty()) throw InputError("missing premises:" + gaps);
  std::vector<FactId> prem{*quotient_term, *normal_term};
  if (degree == 2) prem.push_back(*h1_term);
  return store.derive(target, Lemma::Usual, prem);
}

FactId derive_usual(FactStore& store, const GModule& M, const Subgroup& N, size_t degree, uint64_t seed) {
  auto Q = groups::quotient_group(M.group(), N);
  GModule MN = quotient_module(M, N, Q);
  FactId q = exact_fact(store, MN, degree, seed, "");
  GModule MR = gmod::restrict(M, N);
  MR.set_label(M.label());
  FactId n = exact_fact(store, MR, degree, seed, "whole group in place of its H-fixed part");
  std::optional<FactId> t;
  if (degree == 2) {
    FactId h1 = exact_fact(store, MR, 1, seed, "");
    auto mg = groups::min_generators_probe(Q.group, std::max<size_t>(Q.group->ngens(), 1), seed);
    size_t d = mg.d ? *mg.d : Q.group->ngens();
    Subject target{Q.group->name(), M.p(), "H^1(" + N.group->name() + ", " + M.label() + ")", 1, ""};
    t = apply_derivations(store, target, d, h1);
  }
  return apply_usual(store, cohom_subject(M, degree), degree, q, n, t);
}

Population populate(FactStore& store, const GModule& M, size_t degree, uint64_t seed, bool include_exact) {
  Population pop;
  pop.subject = cohom_subject(M, degree);
  auto attempt = [&](const std::string& name, const std::function<void()>& f) {
    try {
      f();
    } catch (const InputError& e) {
      pop.refused.push_back(name + ": " + e.what());
    } catch (const CapacityError& e) {
      pop.refused.push_back(name + ": " + e.what());
    } catch (const Undecided& e) {
      pop.refused.push_back(name + ": " + e.what());
    }
  };
  const GroupPtr& G = M.group();
  if (include_exact) attempt("exact", [&] { exact_fact(store, M, degree, seed, ""); });
  attempt("restriction", [&] { apply_restriction(store, M, degree, seed); });
  attempt("cyclic", [&] { apply_cyclic(store, M, degree, seed); });
  if (degree == 2) attempt("holt", [&] { apply_holt(store, M, seed); });
  attempt("vanishing", [&] { apply_vanishing(store, M, groups::whole_group(G), degree); });
  if (degree == 1 || degree == 2)
    attempt("usual", [&] {
      auto D = groups::derived_subgroup(G);
      require(D->order() > 1 && D->order() < G->order(), "derived subgroup is proper and nontrivial");
      derive_usual(store, M, groups::make_subgroup(G, D->gens(), "[" + G->name() + "," + G->name() + "]"), degree,
                   seed);
    });
  return pop;
}

}  // namespace cohomkit::boundcalc
