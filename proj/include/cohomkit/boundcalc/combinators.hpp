#pragma once
#include <optional>
#include <string>
#include <vector>

#include "cohomkit/boundcalc/facts.hpp"
#include "cohomkit/gmod/module.hpp"
#include "cohomkit/groups/group.hpp"

// Each combinator verifies its hypotheses on the given group and module and
// throws InputError naming the failed hypothesis instead of assuming it.
namespace cohomkit::boundcalc {

using gmod::GModule;
using groups::GroupPtr;
using groups::Subgroup;

Subject cohom_subject(const GModule& M, size_t degree);
Subject input_subject(const GModule& M, const std::string& quantity);

// Exact facts for degrees 0..maxdeg from a resolution computation.
std::vector<FactId> record_exact(FactStore& store, const GModule& M, size_t maxdeg, uint64_t seed);

// Kernel of the action is trivial; needs the element table.
bool is_faithful(const GModule& M);

// dim H^j(G,M) <= dim H^j(P, M|P) for a Sylow p-subgroup P.
FactId apply_restriction(FactStore& store, const GModule& M, size_t degree, uint64_t seed);

// p does not divide |N| and M^N = 0: H^j(G,M) = 0.
FactId apply_vanishing(FactStore& store, const GModule& M, const Subgroup& N, size_t degree);

// M^N as a module for G/N.
GModule quotient_module(const GModule& M, const Subgroup& N, const groups::Quotient& Q);

// p does not divide |N| and N acts trivially: H^j(G,M) = H^j(G/N,M), given
// a fact on the quotient side.
FactId apply_inflation(FactStore& store, const GModule& M, const Subgroup& N, const groups::Quotient& Q,
                       size_t degree, FactId quotient_fact);

// Cyclic Sylow p-subgroup: at most 1 for irreducible M, else at most dim M.
FactId apply_cyclic(FactStore& store, const GModule& M, size_t degree, uint64_t seed);

// L a normal abelian p-subgroup acting trivially on the irreducible V:
// dim H^2(L,V)^G <= dim Hom_G(L/pL, V) + dim Hom_G(wedge2(L/pL), V).
FactId apply_abelian(FactStore& store, const GModule& V, const Subgroup& L, uint64_t seed);
// L/pL with G acting by conjugation.
GModule frattini_quotient_module(const GroupPtr& G, const Subgroup& L, uint32_t p);

// Faithful irreducible M: dim H^2(G,M) <= 2 e_p(G) dim M.
FactId apply_holt(FactStore& store, const GModule& M, uint64_t seed);

struct ChiefData {
  Rational s_p, h_p1, l_p;
  std::string source;
};
// max over irreducibles V of 1 + dim H^1(G,V)/dim V.
Rational h_p1(const GroupPtr& G, uint32_t p, uint64_t seed);
// dim H^2(G,V) <= (C + s_p + h_{p,1} l_p) dim V.
FactId apply_general(FactStore& store, const GModule& V, const ChiefData& c);

// dim H^1(Q, W) <= d * dim W for Q generated by d elements.
FactId apply_derivations(FactStore& store, const Subject& target, size_t d, FactId dim_w);

// Sum of the terms of the extension inequality for N normal in H. A missing
// term is an input error listing the gaps.
FactId apply_usual(FactStore& store, const Subject& target, size_t degree, std::optional<FactId> quotient_term,
                   std::optional<FactId> normal_term, std::optional<FactId> h1_term);
// Computes every premise exactly where possible: H^j(H/N, M^N), H^j(N,M) in
// place of its H-fixed part, and for j = 2 the derivation bound on
// H^1(H/N, H^1(N,M)).
FactId derive_usual(FactStore& store, const GModule& M, const Subgroup& N, size_t degree, uint64_t seed);

struct Population {
  Subject subject;
  std::vector<std::string> refused;  // combinators whose hypotheses failed, with reasons
};
// Applies every combinator whose hypotheses hold to dim H^degree(G,M).
Population populate(FactStore& store, const GModule& M, size_t degree, uint64_t seed, bool include_exact);

}  // namespace cohomkit::boundcalc
