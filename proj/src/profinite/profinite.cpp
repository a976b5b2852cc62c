#include "cohomkit/profinite/profinite.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "cohomkit/boundcalc/combinators.hpp"
#include "cohomkit/cohom/cohomology.hpp"
#include "cohomkit/config.hpp"
#include "cohomkit/errors.hpp"
#include "cohomkit/ffla/poly.hpp"
#include "cohomkit/gmod/meataxe.hpp"

namespace cohomkit::profinite {

namespace {

Rational rat(size_t a, size_t b = 1) { return Rational(int64_t(a), int64_t(b)); }

std::vector<uint32_t> prime_divisors(uint64_t n) {
  std::vector<uint32_t> out;
  for (uint64_t q : ffla::prime_factors(n)) out.push_back(uint32_t(q));
  return out;
}

uint64_t binomial(uint64_t n, uint64_t r) {
  if (r > n) return 0;
  uint64_t b = 1;
  for (uint64_t i = 1; i <= r; ++i) b = b * (n - r + i) / i;
  return b;
}

size_t ilog2(uint64_t n) {
  size_t l = 0;
  while (n > 1) {
    n >>= 1;
    ++l;
  }
  return l;
}

}  // namespace

int64_t ceil_rational(const Rational& r) {
  int64_t n = r.numerator(), d = r.denominator();
  return n >= 0 ? (n + d - 1) / d : -((-n) / d);
}

std::vector<PrimeTable> prime_tables(const GroupPtr& G, uint64_t seed, const std::vector<uint32_t>& extra_primes) {
  std::vector<uint32_t> primes = prime_divisors(G->order());
  for (uint32_t q : extra_primes) {
    if (!ffla::is_prime(q)) throw InputError(std::to_string(q) + " is not prime");
    if (std::find(primes.begin(), primes.end(), q) == primes.end()) primes.push_back(q);
  }
  std::vector<PrimeTable> out;
  for (uint32_t p : primes) {
    PrimeTable T;
    T.p = p;
    T.divides = G->order() % p == 0;
    if (!T.divides) {
      out.push_back(std::move(T));
      continue;
    }
    auto cat = gmod::irreducible_catalog(G, p, seed);
    for (size_t i = 0; i < cat.entries.size(); ++i) {
      const auto& e = cat.entries[i];
      auto h = cohom::cohomology_dims(e.module, 2, seed).h;
      ModuleRow r;
      r.index = i;
      r.label = e.module.label();
      r.dim = e.module.dim();
      r.endo_degree = e.endo_degree;
      r.h0 = h[0];
      r.h1 = h[1];
      r.h2 = h[2];
      r.xi = e.module.dim() == 1 && e.module.is_trivial() ? 0 : 1;
      r.offset = ceil_rational(Rational(int64_t(r.h2) - int64_t(r.h1), int64_t(r.dim))) - r.xi;
      Rational ratio = rat(r.h2, r.dim);
      T.h_catalog = std::max(T.h_catalog, ratio);
      if (r.xi) T.h_prime = std::max(T.h_prime, ratio);
      GModule D = gmod::dual(e.module);
      for (size_t j = 0; j < cat.entries.size(); ++j)
        if (cat.entries[j].module.dim() == r.dim && gmod::isomorphic_irreducibles(D, cat.entries[j].module)) {
          r.dual_index = j;
          break;
        }
      T.rows.push_back(std::move(r));
    }
    out.push_back(std::move(T));
  }
  return out;
}

HInvariants h_invariants(const GroupPtr& G, const std::vector<PrimeTable>& tables) {
  HInvariants h;
  for (uint32_t p : prime_divisors(G->order())) {
    bool found = false;
    for (const auto& T : tables) found |= T.p == p && T.divides;
    if (!found) throw InputError("missing prime " + std::to_string(p) + " for " + G->name());
  }
  for (const auto& T : tables) {
    h.h_prime_p.emplace_back(T.p, T.h_prime);
    h.h_prime = std::max(h.h_prime, T.h_prime);
    h.h_catalog = std::max(h.h_catalog, T.h_catalog);
  }
  return h;
}

RhatResult rhat_exact(const GroupPtr& G, const std::vector<PrimeTable>& tables, uint64_t seed) {
  h_invariants(G, tables);
  RhatResult r;
  // d(G) >= dim H^1(G, F_p) = rank of the elementary abelian p-quotient.
  size_t d_lower = G->order() > 1 ? 1 : 0;
  for (const auto& T : tables)
    for (const auto& row : T.rows)
      if (row.xi == 0) d_lower = std::max(d_lower, row.h1);
  auto probe = groups::min_generators_probe(G, caps().exhaustive_cap, seed);
  if (probe.d) {
    r.d_lo = r.d_hi = *probe.d;
    r.provenance = "d(G) exact by generator search";
  } else {
    r.d_lo = d_lower;
    r.d_hi = std::max(r.d_lo, ilog2(G->order()));
    r.provenance = "d(G) bounded by H^1(G, F_p) below and log2 |G| above";
  }
  // Primes not dividing |G| contribute d(G) through the trivial module.
  int64_t off = 0;
  for (const auto& T : tables)
    for (const auto& row : T.rows) off = std::max(off, row.offset);
  r.lo = off + int64_t(r.d_lo);
  r.hi = off + int64_t(r.d_hi);
  return r;
}

ProfiniteReport profinite_report(const GroupPtr& G, uint64_t seed) {
  ProfiniteReport R;
  R.group = G->name();
  R.order = G->order();
  R.tables = prime_tables(G, seed);
  R.h = h_invariants(G, R.tables);
  R.rhat = rhat_exact(G, R.tables, seed);
  for (const auto& T : R.tables)
    for (const auto& row : T.rows) {
      if (!row.dual_index) {
        R.dual_mismatches.push_back("p=" + std::to_string(T.p) + " module " + std::to_string(row.index) +
                                    ": dual not found in catalog");
        continue;
      }
      const auto& d = T.rows[*row.dual_index];
      if (d.h1 != row.h1 || d.h2 != row.h2)
        R.dual_mismatches.push_back("p=" + std::to_string(T.p) + " module " + std::to_string(row.index) +
                                    " and its dual " + std::to_string(d.index) + " differ");
    }
  return R;
}

nlohmann::json to_json(const ProfiniteReport& r) {
  using nlohmann::json;
  json j;
  j["group"] = r.group;
  j["order"] = r.order;
  j["d"] = {{"lower", r.rhat.d_lo}, {"upper", r.rhat.d_hi}};
  json primes = json::array();
  for (const auto& T : r.tables) {
    json t;
    t["p"] = T.p;
    t["divides_order"] = T.divides;
    t["h_prime_p"] = boundcalc::rational_str(T.h_prime);
    t["modules"] = json::array();
    for (const auto& row : T.rows) {
      json m{{"module", row.index},       {"label", row.label}, {"dim", row.dim}, {"endo_degree", row.endo_degree},
             {"h0", row.h0},              {"h1", row.h1},       {"h2", row.h2},   {"xi", row.xi},
             {"term", row.offset + int64_t(r.rhat.d_lo)}};
      if (row.dual_index) m["dual"] = *row.dual_index;
      t["modules"].push_back(std::move(m));
    }
    primes.push_back(std::move(t));
  }
  j["primes"] = std::move(primes);
  if (r.rhat.exact())
    j["rhat"] = r.rhat.lo;
  else
    j["rhat"] = {r.rhat.lo, r.rhat.hi};
  j["rhat_provenance"] = r.rhat.provenance;
  j["h_prime"] = boundcalc::rational_str(r.h.h_prime);
  j["h"] = boundcalc::rational_str(r.h.h_catalog);
  j["h_caveat"] = "catalog maximum; a lower bound for the maximum over all modules";
  j["dual_mismatches"] = r.dual_mismatches;
  return j;
}

bool is_quasisimple(const GroupPtr& G) {
  if (G->order() == 1 || !groups::is_perfect(G)) return false;
  auto z = groups::center(G);
  if (z.size() == 1) return groups::is_simple(G);
  auto Q = groups::quotient_group(G, groups::make_subgroup(G, z, "Z"));
  return groups::is_simple(Q.group);
}

SandwichResult rhat_sandwich_check(const GroupPtr& G, const ProfiniteReport& report, uint64_t seed) {
  if (!is_quasisimple(G)) throw InputError(G->name() + " is not quasisimple");
  auto probe = groups::min_generators_probe(G, 2, seed);
  if (!probe.d || *probe.d != 2) throw InputError("d(" + G->name() + ") = 2 is not certified");
  for (const auto& T : report.tables)
    for (const auto& row : T.rows)
      if (row.xi == 0 && row.h2 > 2)
        throw InputError("dim H^2(G, F_" + std::to_string(T.p) + ") exceeds 2");
  SandwichResult s;
  s.rhat = report.rhat;
  s.h_prime = report.h.h_prime;
  s.lower = std::max<int64_t>(2, ceil_rational(s.h_prime + Rational(1, 2)));
  s.upper = std::max<int64_t>(4, ceil_rational(s.h_prime + Rational(1)));
  s.holds = s.lower <= s.rhat.lo && s.rhat.hi <= s.upper;
  return s;
}

WreathResult wreath_growth_check(const GroupPtr& L, uint32_t p, size_t t, size_t k, uint64_t seed) {
  if (t < 1 || t > 4) throw InputError("t must lie in 1..4");
  if (k < 1 || k > 3) throw InputError("k must lie in 1..3");
  if (L->order() % p) throw InputError("p does not divide |L|");
  WreathResult w;
  w.t = t;
  w.k = k;
  auto cat = gmod::irreducible_catalog(L, p, seed);
  const GModule* V = nullptr;
  for (const auto& e : cat.entries) {
    if (e.module.is_trivial()) {
      w.hf = cohom::cohomology_dims(e.module, k, seed).h;
      continue;
    }
    bool faithful = boundcalc::is_faithful(e.module);
    auto h = cohom::cohomology_dims(e.module, k, seed).h;
    w.scanned.push_back(e.module.label() + " dim " + std::to_string(e.module.dim()) +
                        (faithful ? " faithful" : " not faithful") + " h1 " + std::to_string(h[1]));
    if (!V && faithful && h[1] >= 1) {
      V = &e.module;
      w.hv = h;
    }
  }
  if (!V) {
    std::string s;
    for (auto& x : w.scanned) s += "; " + x;
    throw InputError("no faithful irreducible with nonzero H^1 found" + s);
  }
  w.module = V->label();
  w.dim_v = V->dim();
  std::vector<std::vector<size_t>> factors{w.hv};
  for (size_t i = 1; i < t; ++i) factors.push_back(w.hf);
  w.hk_n = cohom::kunneth_dim(factors, k);
  w.binomial_bound = w.hv[1] * binomial(t - 1, k - 1);
  bool ok = w.hf[1] >= 1 && w.hk_n >= w.binomial_bound;
  if (k == 2) {
    w.k2_identity = w.hv[2] + (t - 1) * w.hv[1];
    ok = ok && w.hk_n == *w.k2_identity;
    w.growth_constant = rat(w.hv[1], 2 * w.dim_v);
    // dim H^2(G, M) >= c dim M with dim M = t dim V, for t >= 2.
    if (t >= 2) ok = ok && rat(w.hk_n) >= w.growth_constant * rat(t * w.dim_v);
  }
  if (t == 1) ok = ok && w.hk_n == w.hv[k];
  // M = X induced from N = L^t to L wr C_t; irreducible for t >= 1.
  GroupPtr G = groups::wreath_product(L, t);
  size_t n = L->degree();
  std::vector<groups::Perm> ngens;
  std::vector<ffla::FpMatrix> xgens;
  for (size_t c = 0; c < t; ++c)
    for (size_t s = 0; s < L->ngens(); ++s) {
      std::vector<groups::Point> img(n * t);
      for (size_t i = 0; i < n * t; ++i)
        img[i] = i / n == c ? groups::Point(c * n + L->gens()[s][groups::Point(i % n)]) : groups::Point(i);
      ngens.emplace_back(std::move(img));
      xgens.push_back(c == 0 ? V->gen(s) : ffla::FpMatrix::identity(p, V->dim()));
    }
  auto N = groups::make_subgroup(G, ngens, L->name() + "^" + std::to_string(t));
  GModule X(N.group, p, xgens, "X", V->dim());
  GModule M = gmod::induce(X, N);
  w.m_irreducible = M.dim() == t * V->dim() && (gmod::is_irreducible(M, seed).status == gmod::IrrStatus::Irreducible);
  w.passed = ok && w.m_irreducible;
  return w;
}

Rational h_prime_simple(const GroupPtr& S, uint64_t seed) {
  static std::mutex mu;
  static std::map<std::pair<std::string, uint64_t>, Rational> cache;
  auto key = std::make_pair(S->name(), S->order());
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  Rational h = h_invariants(S, prime_tables(S, seed)).h_prime;
  std::lock_guard<std::mutex> lock(mu);
  cache[key] = h;
  return h;
}

EnvelopeResult faithful_envelope_check(const GModule& M, size_t h2, uint64_t seed) {
  EnvelopeResult r;
  const GroupPtr& G = M.group();
  if (!boundcalc::is_faithful(M)) {
    r.reason = "module is not faithful";
    return r;
  }
  if (!(gmod::is_irreducible(M, seed).status == gmod::IrrStatus::Irreducible)) {
    r.reason = "module is not irreducible";
    return r;
  }
  r.ratio = rat(h2, M.dim());
  GroupPtr D = G;
  while (true) {
    GroupPtr E = groups::derived_subgroup(D);
    if (E->order() == D->order()) break;
    D = E;
  }
  if (D->order() == 1) {
    // No component: the bound requires H^2 = 0.
    r.applicable = r.solvable = true;
    r.holds = h2 == 0;
    r.reason = "solvable";
    return r;
  }
  if (!is_quasisimple(D)) {
    r.reason = "solvable residual is not quasisimple";
    return r;
  }
  r.applicable = true;
  r.component = D->name();
  auto z = groups::center(D);
  GroupPtr S = D;
  if (z.size() > 1) S = groups::quotient_group(D, groups::make_subgroup(D, z, "Z"), D->name() + "/Z").group;
  r.h2_component = h_prime_simple(S, seed);
  r.envelope = std::max(Rational(7, 4), r.h2_component + 1);
  r.holds = h2 == 0 || r.ratio <= r.envelope;
  return r;
}

}  // namespace cohomkit::profinite
