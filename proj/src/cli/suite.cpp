#include <chrono>
#include <map>
#include <sstream>

#include "cohomkit/boundcalc/combinators.hpp"
#include "cohomkit/cli/app.hpp"
#include "cohomkit/cli/groupspec.hpp"
#include "cohomkit/cohom/cohomology.hpp"
#include "cohomkit/config.hpp"
#include "cohomkit/errors.hpp"
#include "cohomkit/ffla/poly.hpp"
#include "cohomkit/gmod/catalog.hpp"
#include "cohomkit/profinite/profinite.hpp"

namespace cohomkit::cli {

namespace {

using boundcalc::Rational;
using gmod::GModule;
using groups::GroupPtr;

// Groups swept by the corpus-wide property checks.
const std::vector<std::string> kCorpus = {"c2",  "c3",  "c5",  "c7",  "c2_2",  "c2_3",  "c2_4",  "c3_2",  "c3_3",  "c3_4",
                                          "d8",  "d10", "d12", "a3",  "a4",    "s3",    "s4",    "a5",    "s5",    "a6",
                                          "s6",  "a7",  "sl2_4", "sl2_5", "sl2_7", "sl2_8", "sl2_9", "sl3_2"};

std::vector<uint32_t> primes_of(uint64_t n) {
  std::vector<uint32_t> out;
  for (uint64_t q : ffla::prime_factors(n)) out.push_back(uint32_t(q));
  return out;
}

struct Instance {
  GroupPtr G;
  uint32_t p = 2;
  std::vector<GModule> modules;
  std::vector<std::vector<size_t>> h;  // h[i][j] = dim H^j(G, module i), j <= 2
};

class Corpus {
 public:
  explicit Corpus(uint64_t seed) : seed_(seed) {}
  uint64_t seed() const { return seed_; }

  GroupPtr group(const std::string& file) {
    auto it = groups_.find(file);
    if (it != groups_.end()) return it->second;
    GroupPtr G = build_group(load_group_spec(file));
    groups_[file] = G;
    return G;
  }

  const Instance& inst(const std::string& file, uint32_t p) {
    auto key = std::make_pair(file, p);
    auto it = insts_.find(key);
    if (it != insts_.end()) return it->second;
    Instance I;
    I.G = group(file);
    I.p = p;
    for (const auto& e : gmod::irreducible_catalog(I.G, p, seed_).entries) {
      I.modules.push_back(e.module);
      I.h.push_back(cohom::cohomology_dims(e.module, 2, seed_).h);
    }
    return insts_.emplace(key, std::move(I)).first->second;
  }

 private:
  uint64_t seed_;
  std::map<std::string, GroupPtr> groups_;
  std::map<std::pair<std::string, uint32_t>, Instance> insts_;
};

// Collects instance counts and the first few violations.
class Check {
 public:
  Check(int id, std::string title, const SuiteOptions& o) : opts_(o), start_(std::chrono::steady_clock::now()) {
    r_.id = id;
    r_.title = std::move(title);
  }
  bool within(const GroupPtr& G) {
    if (opts_.max_order && G->order() > opts_.max_order) {
      ++r_.skipped;
      return false;
    }
    return true;
  }
  void skip() { ++r_.skipped; }
  void count(size_t n = 1) { r_.instances += n; }
  void expect(bool ok, const std::string& what) {
    ++r_.instances;
    if (!ok) fail(what);
  }
  void fail(const std::string& what) {
    if (failures_++ < 6) notes_.push_back(what);
  }
  void note(const std::string& s) { info_.push_back(s); }
  CriterionResult finish() {
    r_.passed = failures_ == 0;
    std::string d;
    auto join = [&](const std::vector<std::string>& v) {
      for (const auto& s : v) d += (d.empty() ? "" : "; ") + s;
    };
    join(notes_);
    if (failures_ > notes_.size()) d += "; " + std::to_string(failures_ - notes_.size()) + " more";
    join(info_);
    r_.detail = d;
    r_.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    return r_;
  }

 private:
  const SuiteOptions& opts_;
  std::chrono::steady_clock::time_point start_;
  CriterionResult r_;
  size_t failures_ = 0;
  std::vector<std::string> notes_, info_;
};

std::string where(const GroupPtr& G, uint32_t p, const GModule& M) {
  return G->name() + " p=" + std::to_string(p) + " " + M.label() + " (dim " + std::to_string(M.dim()) + ")";
}

std::string rs(const Rational& r) { return boundcalc::rational_str(r); }

CriterionResult abelian_h2(Corpus& C, const SuiteOptions& o) {
  Check ck(1, "H^2 of elementary abelian p-groups with trivial coefficients is d(d+1)/2", o);
  for (uint32_t p : {2u, 3u})
    for (size_t d = 1; d <= 4; ++d) {
      std::string f = d == 1 ? "c" + std::to_string(p) : "c" + std::to_string(p) + "_" + std::to_string(d);
      GroupPtr G = C.group(f);
      if (!ck.within(G)) continue;
      size_t h = cohom::cohomology_dims(gmod::trivial_module(G, p), 2, C.seed()).h[2];
      ck.expect(h == d * (d + 1) / 2,
                G->name() + ": " + std::to_string(h) + " != " + std::to_string(d * (d + 1) / 2));
    }
  return ck.finish();
}

CriterionResult alt_sym_trivial(Corpus& C, const SuiteOptions& o) {
  Check ck(2, "H^2(A_n, F_2) = 1 and H^2(S_n, F_2) = 2 for 5 <= n <= 8; H^2(A_n, F_3) = 1 for n in {3,4,6,7}, 0 for n = 5",
           o);
  for (size_t n = 5; n <= 8; ++n)
    for (const char* fam : {"a", "s"}) {
      GroupPtr G = C.group(fam + std::to_string(n));
      if (!ck.within(G)) continue;
      GModule T = gmod::trivial_module(G, 2);
      size_t h = cohom::cohomology_dims(T, 2, C.seed()).h[2];
      size_t want = fam[0] == 'a' ? 1 : 2;
      ck.expect(h == want, G->name() + " p=2: " + std::to_string(h) + " != " + std::to_string(want));
      if (n >= 7) {
        // Cross-check against restriction to a Sylow 2-subgroup.
        size_t bound = cohom::sylow_upper_bound(T, 2, C.seed()).h[2];
        ck.expect(h <= bound, G->name() + ": exceeds the Sylow bound " + std::to_string(bound));
      }
    }
  for (size_t n = 3; n <= 7; ++n) {
    GroupPtr G = C.group("a" + std::to_string(n));
    if (!ck.within(G)) continue;
    size_t h = cohom::cohomology_dims(gmod::trivial_module(G, 3), 2, C.seed()).h[2];
    size_t want = n == 5 ? 0 : 1;
    ck.expect(h == want, G->name() + " p=3: " + std::to_string(h) + " != " + std::to_string(want));
  }
  return ck.finish();
}

CriterionResult alt_bounds(Corpus& C, const SuiteOptions& o) {
  Check ck(3, "A_n, n <= 7: dim H^2 < 3 dim M, and dim H^1 <= dim M/(p-2) for p > 3, on every catalog irreducible", o);
  for (size_t n = 3; n <= 7; ++n) {
    std::string f = "a" + std::to_string(n);
    GroupPtr G = C.group(f);
    if (!ck.within(G)) continue;
    for (uint32_t p : primes_of(G->order())) {
      const Instance& I = C.inst(f, p);
      for (size_t i = 0; i < I.modules.size(); ++i) {
        size_t d = I.modules[i].dim();
        ck.expect(I.h[i][2] < 3 * d, where(G, p, I.modules[i]) + ": h2 = " + std::to_string(I.h[i][2]));
        if (p > 3)
          ck.expect(I.h[i][1] * (p - 2) <= d, where(G, p, I.modules[i]) + ": h1 = " + std::to_string(I.h[i][1]));
      }
    }
  }
  return ck.finish();
}

bool sylow_cyclic(const GroupPtr& G, uint32_t r, uint64_t seed) {
  auto P = groups::sylow_subgroup(G, r, seed);
  return groups::min_generators_probe(P.group, 1, seed).d.value_or(2) <= 1;
}

CriterionResult sl2_bounds(Corpus& C, const SuiteOptions& o) {
  Check ck(4,
           "SL(2,q), q in {4,5,7,8,9}: dim H^2 <= dim M/2 at the defining prime except SL(2,4) on F_2; "
           "dim H^2 <= 1 at primes with cyclic Sylow subgroups",
           o);
  const std::vector<std::pair<std::string, uint32_t>> qs = {
      {"sl2_4", 2}, {"sl2_5", 5}, {"sl2_7", 7}, {"sl2_8", 2}, {"sl2_9", 3}};
  for (const auto& [f, def] : qs) {
    GroupPtr G = C.group(f);
    if (!ck.within(G)) continue;
    for (uint32_t r : primes_of(G->order())) {
      const Instance& I = C.inst(f, r);
      bool cyclic = r != def && sylow_cyclic(G, r, C.seed());
      for (size_t i = 0; i < I.modules.size(); ++i) {
        const GModule& M = I.modules[i];
        size_t h2 = I.h[i][2];
        if (r == def) {
          if (f == "sl2_4" && M.is_trivial())
            ck.expect(h2 >= 1, where(G, r, M) + ": expected the exceptional class, h2 = " + std::to_string(h2));
          else
            ck.expect(2 * h2 <= M.dim(), where(G, r, M) + ": h2 = " + std::to_string(h2) + " > dim/2");
        } else if (cyclic) {
          ck.expect(h2 <= 1, where(G, r, M) + ": h2 = " + std::to_string(h2) + " with cyclic Sylow");
        }
      }
    }
  }
  return ck.finish();
}

CriterionResult envelope(Corpus& C, const SuiteOptions& o) {
  Check ck(5, "dim H^2 <= 17.5 dim M on the corpus; faithful irreducibles obey max{7/4, h_2(L)+1} dim M", o);
  size_t applicable = 0;
  for (const auto& f : kCorpus) {
    GroupPtr G = C.group(f);
    if (!ck.within(G)) continue;
    for (uint32_t p : primes_of(G->order())) {
      const Instance& I = C.inst(f, p);
      for (size_t i = 0; i < I.modules.size(); ++i) {
        const GModule& M = I.modules[i];
        ck.expect(Rational(int64_t(I.h[i][2])) <= boundcalc::kConstantQuasisimple * Rational(int64_t(M.dim())),
                  where(G, p, M) + ": h2 = " + std::to_string(I.h[i][2]));
        auto e = profinite::faithful_envelope_check(M, I.h[i][2], C.seed());
        if (!e.applicable) continue;
        ++applicable;
        ck.expect(e.holds, where(G, p, M) + ": ratio " + rs(e.ratio) + " > " + rs(e.envelope));
      }
    }
  }
  ck.note(std::to_string(applicable) + " faithful instances");
  return ck.finish();
}

struct SubgroupCase {
  std::string file;
  std::vector<std::string> gens;  // cycle notation, 1-based
  std::vector<uint32_t> primes;
};

groups::Subgroup subgroup_from(const GroupPtr& G, const std::vector<std::string>& gens, const std::string& name) {
  std::string text = "group " + name + "\ndegree " + std::to_string(G->degree()) + "\n";
  for (const auto& g : gens) text += "perm " + g + "\n";
  return groups::make_subgroup(G, build_group(parse_group_spec(text))->gens(), name);
}

CriterionResult structural(Corpus& C, const SuiteOptions& o) {
  Check ck(6, "Shapiro equality, Kunneth expansion, Sylow restriction monotonicity, coprime vanishing", o);
  uint64_t seed = C.seed();
  // Shapiro: H^j(H, V) = H^j(G, V induced), j <= 2.
  const std::vector<SubgroupCase> cases = {
      {"s3", {"(1 2 3)"}, {2, 3}},
      {"s3", {"(1 2)"}, {2, 3}},
      {"a4", {"(1 2)(3 4)", "(1 3)(2 4)"}, {2, 3}},
      {"a4", {"(1 2 3)"}, {2, 3}},
      {"s4", {"(1 2 3)", "(1 2)(3 4)"}, {2, 3}},
      {"s4", {"(1 2 3 4)", "(1 3)"}, {2}},
      {"s4", {"(1 2 3)", "(1 2)"}, {2, 3}},
      {"a5", {"(1 2 3)", "(1 2)(3 4)"}, {2, 3}},
      {"a5", {"(1 2 3 4 5)", "(2 5)(3 4)"}, {2, 5}},
  };
  size_t shapiro = 0;
  for (const auto& c : cases) {
    GroupPtr G = C.group(c.file);
    if (!ck.within(G)) continue;
    auto H = subgroup_from(G, c.gens, "H");
    for (uint32_t p : c.primes)
      for (const auto& e : gmod::irreducible_catalog(H.group, p, seed).entries) {
        auto r = cohom::shapiro_check(H, e.module, 2, seed);
        ++shapiro;
        ck.expect(r.equal, "Shapiro " + G->name() + " p=" + std::to_string(p) + " " + e.module.label());
      }
  }
  if (!o.max_order) ck.expect(shapiro >= 20, "only " + std::to_string(shapiro) + " Shapiro instances");
  // Kunneth: direct cohomology of A x B on outer tensor products.
  const std::vector<std::tuple<std::string, std::string, uint32_t>> prods = {
      {"c2", "c2", 2}, {"s3", "c2", 2}, {"s3", "c2", 3}, {"a4", "c2", 2}, {"a4", "c2", 3}};
  size_t kunneth = 0;
  for (const auto& [fa, fb, p] : prods) {
    GroupPtr A = C.group(fa), B = C.group(fb);
    GroupPtr AB = groups::direct_product(A, B);
    if (!ck.within(AB)) continue;
    for (const auto& ea : gmod::irreducible_catalog(A, p, seed).entries)
      for (const auto& eb : gmod::irreducible_catalog(B, p, seed).entries) {
        auto ha = cohom::cohomology_dims(ea.module, 2, seed).h;
        auto hb = cohom::cohomology_dims(eb.module, 2, seed).h;
        auto hab = cohom::cohomology_dims(gmod::outer_tensor(AB, ea.module, eb.module), 2, seed).h;
        for (size_t r = 0; r <= 2; ++r) {
          ++kunneth;
          ck.expect(hab[r] == cohom::kunneth_dim({ha, hb}, r),
                    "Kunneth " + A->name() + "x" + B->name() + " p=" + std::to_string(p) + " degree " + std::to_string(r));
        }
      }
  }
  // Restriction to a Sylow subgroup is injective.
  size_t restr = 0;
  for (const auto& f : kCorpus) {
    GroupPtr G = C.group(f);
    if (!ck.within(G)) continue;
    for (uint32_t p : primes_of(G->order())) {
      const Instance& I = C.inst(f, p);
      for (size_t i = 0; i < I.modules.size(); ++i) {
        auto b = cohom::sylow_upper_bound(I.modules[i], 2, seed).h;
        for (size_t j = 0; j <= 2; ++j) {
          ++restr;
          ck.expect(I.h[i][j] <= b[j], "restriction " + where(G, p, I.modules[i]) + " degree " + std::to_string(j));
        }
      }
    }
  }
  // Coprime vanishing: smallest prime not dividing |G|, groups of order <= 200.
  size_t coprime = 0;
  for (const auto& f : kCorpus) {
    GroupPtr G = C.group(f);
    if (G->order() > 200 || !ck.within(G)) continue;
    uint32_t p = 2;
    while (G->order() % p == 0 || !ffla::is_prime(p)) ++p;
    const Instance& I = C.inst(f, p);
    for (size_t i = 0; i < I.modules.size(); ++i) {
      bool triv = I.modules[i].is_trivial();
      ++coprime;
      ck.expect(I.h[i][0] == (triv ? 1u : 0u) && I.h[i][1] == 0 && I.h[i][2] == 0,
                "coprime " + where(G, p, I.modules[i]));
    }
  }
  ck.note(std::to_string(shapiro) + " Shapiro, " + std::to_string(kunneth) + " Kunneth, " + std::to_string(restr) +
          " restriction, " + std::to_string(coprime) + " coprime instances");
  return ck.finish();
}

CriterionResult oracle(Corpus& C, const SuiteOptions& o) {
  Check ck(7, "Resolution cohomology equals the cocycle oracle for every corpus group of order <= 120, degrees <= 2", o);
  for (const auto& f : kCorpus) {
    GroupPtr G = C.group(f);
    if (G->order() > 120 || !ck.within(G)) continue;
    for (uint32_t p : primes_of(G->order())) {
      const Instance& I = C.inst(f, p);
      for (size_t i = 0; i < I.modules.size(); ++i) {
        auto b = cohom::bar_oracle(I.modules[i], 2).h;
        ck.expect(b == I.h[i], "oracle " + where(G, p, I.modules[i]));
      }
    }
  }
  return ck.finish();
}

CriterionResult rhat(Corpus& C, const SuiteOptions& o) {
  Check ck(8, "rhat(C_p) = 1, rhat(C2xC2) = 3, rhat(A5), rhat(A6) in [3,4], sandwich for A5, A6, SL(2,5), SL(2,7), SL(2,9)",
           o);
  auto report = [&](const std::string& f) { return profinite::profinite_report(C.group(f), C.seed()); };
  for (const char* f : {"c2", "c3", "c5", "c7"}) {
    if (!ck.within(C.group(f))) continue;
    auto R = report(f);
    ck.expect(R.rhat.exact() && R.rhat.lo == 1, R.group + ": rhat " + std::to_string(R.rhat.lo));
  }
  if (ck.within(C.group("c2c2"))) {
    auto R = report("c2c2");
    ck.expect(R.rhat.exact() && R.rhat.lo == 3, "C2xC2: rhat " + std::to_string(R.rhat.lo));
  }
  std::vector<std::string> notes;
  for (const char* f : {"a5", "a6", "sl2_5", "sl2_7", "sl2_9"}) {
    GroupPtr G = C.group(f);
    if (!ck.within(G)) continue;
    auto R = report(f);
    if (std::string(f) == "a5" || std::string(f) == "a6")
      ck.expect(R.rhat.lo >= 3 && R.rhat.hi <= 4,
                R.group + ": rhat in [" + std::to_string(R.rhat.lo) + "," + std::to_string(R.rhat.hi) + "]");
    auto s = profinite::rhat_sandwich_check(G, R, C.seed());
    ck.expect(s.holds, R.group + ": sandwich " + std::to_string(s.lower) + " <= " + std::to_string(R.rhat.lo) +
                           " <= " + std::to_string(s.upper) + " fails");
    notes.push_back(R.group + " rhat=" + std::to_string(R.rhat.lo) + " h'=" + rs(R.h.h_prime));
  }
  for (const auto& n : notes) ck.note(n);
  return ck.finish();
}

CriterionResult wreath(Corpus& C, const SuiteOptions& o) {
  Check ck(9, "L wr C_t growth for L = S5, p = 2, t in {2,3}, k in {2,3}, with dim H^2(N,X) = h2(L,V) + (t-1) h1(L,V)",
           o);
  GroupPtr L = C.group("s5");
  for (size_t t : {2, 3})
    for (size_t k : {2, 3}) {
      uint64_t order = t;
      for (size_t i = 0; i < t; ++i) order *= L->order();
      if (o.max_order && order > o.max_order) {
        ck.skip();
        continue;
      }
      auto w = profinite::wreath_growth_check(L, 2, t, k, C.seed());
      std::string tag = "t=" + std::to_string(t) + " k=" + std::to_string(k);
      ck.expect(w.passed, tag + " failed: H^k(N,X) = " + std::to_string(w.hk_n));
      if (k == 2) ck.expect(w.k2_identity && w.hk_n == *w.k2_identity, tag + ": identity fails");
      ck.note(tag + " V=" + w.module + " H^k=" + std::to_string(w.hk_n));
    }
  return ck.finish();
}

CriterionResult soundness(Corpus& C, const SuiteOptions& o) {
  Check ck(10, "Every derived upper bound is at least the exact value; Holt's bound 2 e_p dim M holds", o);
  size_t facts = 0, holt = 0;
  for (const auto& f : kCorpus) {
    GroupPtr G = C.group(f);
    if (!ck.within(G)) continue;
    for (uint32_t p : primes_of(G->order())) {
      const Instance& I = C.inst(f, p);
      for (size_t i = 0; i < I.modules.size(); ++i) {
        const GModule& M = I.modules[i];
        for (size_t j : {1, 2}) {
          boundcalc::FactStore S;
          auto pop = boundcalc::populate(S, M, j, C.seed(), false);
          for (const auto& fact : S.matching(pop.subject)) {
            ++facts;
            ck.expect(fact.value >= Rational(int64_t(I.h[i][j])),
                      where(G, p, M) + ": " + boundcalc::lemma_name(fact.lemma) + " gives " + rs(fact.value) +
                          " < h" + std::to_string(j) + " = " + std::to_string(I.h[i][j]));
          }
          for (boundcalc::FactId id = 0; id < S.size(); ++id)
            if (S.get(id).kind == boundcalc::Kind::Upper)
              ck.expect(boundcalc::replay(boundcalc::trace(S, id)) == S.get(id).value, "replay mismatch");
        }
        if (boundcalc::is_faithful(M)) {
          boundcalc::FactStore S;
          auto id = boundcalc::apply_holt(S, M, C.seed());
          ++holt;
          ck.expect(S.get(id).value >= Rational(int64_t(I.h[i][2])), where(G, p, M) + ": Holt bound violated");
        }
      }
    }
  }
  ck.note(std::to_string(facts) + " facts, " + std::to_string(holt) + " Holt instances");
  return ck.finish();
}

}  // namespace

std::vector<CriterionResult> run_paper_suite(const SuiteOptions& opts) {
  Corpus C(opts.seed);
  using Fn = CriterionResult (*)(Corpus&, const SuiteOptions&);
  const std::vector<std::pair<int, Fn>> all = {{1, abelian_h2}, {2, alt_sym_trivial}, {3, alt_bounds}, {4, sl2_bounds},
                                               {5, envelope},   {6, structural},      {7, oracle},     {8, rhat},
                                               {9, wreath},     {10, soundness}};
  std::vector<CriterionResult> out;
  for (const auto& [id, fn] : all) {
    if (!opts.only.empty() && std::find(opts.only.begin(), opts.only.end(), id) == opts.only.end()) continue;
    CriterionResult r;
    try {
      r = fn(C, opts);
    } catch (const std::exception& e) {
      r.id = id;
      r.title = "criterion " + std::to_string(id);
      r.passed = false;
      r.detail = std::string("error: ") + e.what();
    }
    if (opts.on_result) opts.on_result(r);
    out.push_back(std::move(r));
  }
  return out;
}

std::string format_result(const CriterionResult& r) {
  std::ostringstream o;
  o << (r.passed ? "PASS" : "FAIL") << " criterion " << r.id << ": " << r.title << " [" << r.instances
    << " checks";
  if (r.skipped) o << ", " << r.skipped << " skipped above the order limit";
  o.setf(std::ios::fixed);
  o.precision(1);
  o << ", " << r.seconds << " s]";
  if (!r.detail.empty()) o << " -- " << r.detail;
  return o.str();
}

nlohmann::json to_json(const CriterionResult& r) {
  return {{"criterion", r.id}, {"title", r.title},   {"passed", r.passed}, {"checks", r.instances},
          {"skipped", r.skipped}, {"detail", r.detail}, {"seconds", r.seconds}};
}

}  // namespace cohomkit::cli
