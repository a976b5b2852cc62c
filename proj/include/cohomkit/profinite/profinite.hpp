#pragma once
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cohomkit/boundcalc/facts.hpp"
#include "cohomkit/gmod/catalog.hpp"
#include "cohomkit/groups/group.hpp"

namespace cohomkit::profinite {

using boundcalc::Rational;
using gmod::GModule;
using groups::GroupPtr;

// Smallest integer >= r.
int64_t ceil_rational(const Rational& r);

struct ModuleRow {
  size_t index = 0;
  std::string label;
  size_t dim = 0, endo_degree = 0;
  size_t h0 = 0, h1 = 0, h2 = 0;
  int xi = 1;  // 0 for the trivial module
  // ceil((h2 - h1) / dim) - xi, the d-independent part of the relation term
  int64_t offset = 0;
  std::optional<size_t> dual_index;
};

struct PrimeTable {
  uint32_t p = 0;
  bool divides = true;  // p does not divide |G|: no rows, contributes 0
  std::vector<ModuleRow> rows;
  Rational h_prime{0};   // max h2/dim over nontrivial rows
  Rational h_catalog{0};  // same including the trivial module
};

// Tables for every prime dividing |G| and for each extra prime listed.
std::vector<PrimeTable> prime_tables(const GroupPtr& G, uint64_t seed, const std::vector<uint32_t>& extra_primes = {});

struct HInvariants {
  std::vector<std::pair<uint32_t, Rational>> h_prime_p;
  Rational h_prime{0};
  // Catalog maximum; a certified lower bound for the maximum over all modules.
  Rational h_catalog{0};
  bool h_caveat = true;
};
// Throws InputError if a prime dividing |G| has no table.
HInvariants h_invariants(const GroupPtr& G, const std::vector<PrimeTable>& tables);

struct RhatResult {
  int64_t lo = 0, hi = 0;
  size_t d_lo = 0, d_hi = 0;
  std::string provenance;
  bool exact() const { return lo == hi; }
};
// Maximum of the relation term over all primes and catalog irreducibles. When
// d(G) is only bounded the result is an interval.
RhatResult rhat_exact(const GroupPtr& G, const std::vector<PrimeTable>& tables, uint64_t seed);

struct ProfiniteReport {
  std::string group;
  uint64_t order = 0;
  std::vector<PrimeTable> tables;
  HInvariants h;
  RhatResult rhat;
  std::vector<std::string> dual_mismatches;
};
ProfiniteReport profinite_report(const GroupPtr& G, uint64_t seed);
nlohmann::json to_json(const ProfiniteReport& r);

struct SandwichResult {
  int64_t lower = 0, upper = 0;
  RhatResult rhat;
  Rational h_prime{0};
  bool holds = false;
};
// max{2, ceil(h' + 1/2)} <= rhat <= max{4, ceil(h' + 1)} for quasisimple G.
// Refuses unless G is quasisimple, d(G) = 2 is certified and
// dim H^2(G, F_p) <= 2 for each p.
SandwichResult rhat_sandwich_check(const GroupPtr& G, const ProfiniteReport& report, uint64_t seed);
bool is_quasisimple(const GroupPtr& G);

struct WreathResult {
  std::string module;   // label of V
  size_t dim_v = 0, t = 0, k = 0;
  std::vector<size_t> hv, hf;  // dim H^j(L, V), dim H^j(L, F_p), j <= k
  size_t hk_n = 0;             // dim H^k(N, X) = dim H^k(G, M)
  size_t binomial_bound = 0;   // h1(L,V) * C(t-1, k-1)
  std::optional<size_t> k2_identity;  // h2(L,V) + (t-1) h1(L,V) when k = 2
  Rational growth_constant{0};        // h1(L,V) / (2 dim V) when k = 2
  bool m_irreducible = false;
  bool passed = false;
  std::vector<std::string> scanned;
};
// G = L wr C_t, N = L^t, X = V (x) F_p (x) ... (x) F_p, M = X induced to G.
// dim H^k(G, M) = dim H^k(N, X) by induction and the Kunneth sum over L.
// V is the first faithful irreducible F_pL-module with h1(L,V) >= 1.
WreathResult wreath_growth_check(const GroupPtr& L, uint32_t p, size_t t, size_t k, uint64_t seed);

struct EnvelopeResult {
  bool applicable = false;
  bool solvable = false;  // no component; the bound then forces H^2 = 0
  std::string component;
  Rational h2_component{0};  // h'(L / Z(L)) over all primes
  Rational envelope{0};      // max{7/4, h2_component + 1}
  Rational ratio{0};
  bool holds = false;
  std::string reason;
};
// Faithful irreducible M: if H^2(G,M) != 0 then h2/dim <= envelope for the
// component L. Applicable when G is solvable or its solvable residual is
// quasisimple.
EnvelopeResult faithful_envelope_check(const GModule& M, size_t h2, uint64_t seed);
// h' over all primes of a nonabelian simple group, cached per name and order.
Rational h_prime_simple(const GroupPtr& S, uint64_t seed);

}  // namespace cohomkit::profinite
