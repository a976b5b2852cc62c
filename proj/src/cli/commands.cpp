#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <sstream>

#include "cohomkit/boundcalc/combinators.hpp"
#include "cohomkit/cli/app.hpp"
#include "cohomkit/cli/cache.hpp"
#include "cohomkit/cli/groupspec.hpp"
#include "cohomkit/cohom/cohomology.hpp"
#include "cohomkit/config.hpp"
#include "cohomkit/errors.hpp"
#include "cohomkit/gmod/catalog.hpp"
#include "cohomkit/profinite/profinite.hpp"

namespace cohomkit::cli {

namespace {

using nlohmann::json;

json caps_json() {
  const Caps& c = caps();
  return {{"table_cap", c.table_cap},           {"closure_cap", c.closure_cap},
          {"oracle_cap", c.oracle_cap},         {"memory_budget", c.memory_budget},
          {"retry_budget", c.retry_budget},     {"exhaustive_cap", c.exhaustive_cap},
          {"regular_chop_cap", c.regular_chop_cap}, {"top_extend_cap", c.top_extend_cap}};
}

struct Common {
  std::string group_file;
  uint32_t p = 0;
  std::string json_out, csv_out, store, config;
  uint64_t seed = 0;
  bool seed_set = false, no_cache = false, timing = false;
};

struct Loaded {
  GroupSpec spec;
  std::string hash;
  groups::GroupPtr G;
};

Loaded load(const Common& c) {
  Loaded L;
  L.spec = load_group_spec(c.group_file);
  L.hash = sha256_hex(emit_group_spec(L.spec));
  return L;
}

groups::GroupPtr group_of(Loaded& L) {
  if (!L.G) L.G = build_group(L.spec);
  return L.G;
}

void check_prime(Loaded& L, uint32_t p) {
  if (!ffla::is_prime(p)) throw InputError(std::to_string(p) + " is not prime");
  (void)L;
}

const gmod::GModule& module_at(const gmod::IrreducibleCatalog& cat, size_t i) {
  if (i >= cat.entries.size())
    throw InputError("module index " + std::to_string(i) + " out of range; catalog has " +
                     std::to_string(cat.entries.size()) + " modules");
  return cat.entries[i].module;
}

json catalog_payload(Loaded& L, uint32_t p, uint64_t seed) {
  auto G = group_of(L);
  auto cat = gmod::irreducible_catalog(G, p, seed);
  json rows = json::array();
  for (size_t i = 0; i < cat.entries.size(); ++i) {
    const auto& e = cat.entries[i];
    rows.push_back({{"module", i},
                    {"label", e.module.label()},
                    {"dim", e.module.dim()},
                    {"endo_degree", e.endo_degree},
                    {"multiplicity", e.multiplicity}});
  }
  return {{"p", p}, {"order", G->order()}, {"method", cat.method}, {"modules", rows}};
}

json cohom_payload(Loaded& L, uint32_t p, std::optional<size_t> module, size_t deg, uint64_t seed) {
  auto G = group_of(L);
  auto cat = gmod::irreducible_catalog(G, p, seed);
  std::vector<size_t> idx;
  if (module) {
    module_at(cat, *module);
    idx.push_back(*module);
  } else {
    for (size_t i = 0; i < cat.entries.size(); ++i) idx.push_back(i);
  }
  json rows = json::array();
  std::string method;
  for (size_t i : idx) {
    const auto& e = cat.entries[i];
    auto d = cohom::cohomology_dims(e.module, deg, seed);
    method = cohom::method_name(d.method);
    json r{{"module", i}, {"label", e.module.label()}, {"dim", e.module.dim()}, {"endo_degree", e.endo_degree}};
    for (size_t j = 0; j <= deg; ++j) r["h" + std::to_string(j)] = d.h[j];
    rows.push_back(std::move(r));
  }
  return {{"p", p}, {"order", G->order()}, {"deg", deg}, {"method", method}, {"rows", rows}};
}

json bounds_payload(Loaded& L, uint32_t p, size_t module, size_t deg, uint64_t seed) {
  auto G = group_of(L);
  auto cat = gmod::irreducible_catalog(G, p, seed);
  const auto& M = module_at(cat, module);
  boundcalc::FactStore S;
  auto pop = boundcalc::populate(S, M, deg, seed, false);
  json cands = json::array();
  for (const auto& f : S.matching(pop.subject))
    cands.push_back({{"lemma", boundcalc::lemma_name(f.lemma)},
                     {"kind", boundcalc::kind_name(f.kind)},
                     {"value", boundcalc::rational_str(f.value)}});
  auto best = boundcalc::best_bound(S, pop.subject);
  return {{"p", p},
          {"module", module},
          {"degree", deg},
          {"subject", pop.subject.str()},
          {"best", boundcalc::to_json(boundcalc::trace(S, best))},
          {"candidates", cands},
          {"refused", pop.refused}};
}

std::string csv_of(const std::string& command, const json& payload) {
  std::ostringstream o;
  auto cell = [](const json& v) {
    if (v.is_string()) {
      std::string s = v.get<std::string>();
      if (s.find_first_of(",\"\n") == std::string::npos) return s;
      std::string q = "\"";
      for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
      return q + "\"";
    }
    return v.dump();
  };
  auto table = [&](const json& rows, const std::vector<std::string>& cols) {
    for (size_t i = 0; i < cols.size(); ++i) o << (i ? "," : "") << cols[i];
    o << "\n";
    for (const auto& r : rows) {
      for (size_t i = 0; i < cols.size(); ++i) o << (i ? "," : "") << (r.contains(cols[i]) ? cell(r[cols[i]]) : "");
      o << "\n";
    }
  };
  if (command == "catalog") {
    table(payload["modules"], {"module", "label", "dim", "endo_degree", "multiplicity"});
  } else if (command == "cohom") {
    std::vector<std::string> cols{"module", "label", "dim", "endo_degree"};
    for (size_t j = 0; j <= payload["deg"].get<size_t>(); ++j) cols.push_back("h" + std::to_string(j));
    table(payload["rows"], cols);
  } else if (command == "rhat") {
    json rows = json::array();
    for (const auto& t : payload["primes"])
      for (auto m : t["modules"]) {
        m["p"] = t["p"];
        rows.push_back(m);
      }
    table(rows, {"p", "module", "label", "dim", "endo_degree", "h0", "h1", "h2", "xi", "term"});
  } else if (command == "bounds") {
    table(payload["candidates"], {"lemma", "kind", "value"});
  }
  return o.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

}  // namespace

int run_command(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Group cohomology dimensions, bound certificates and profinite relation counts"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);
  Common c;
  std::optional<size_t> module;
  bool all = false;
  size_t deg = 2;
  std::string suite;
  uint64_t max_order = 0;
  std::vector<int> only;

  auto common = [&](CLI::App* s, bool need_prime) {
    s->add_option("--group", c.group_file, "group spec file or bundled name")->required();
    if (need_prime) s->add_option("--prime", c.p, "prime p")->required();
    s->add_option("--json", c.json_out, "write the JSON report here instead of stdout");
    s->add_option("--csv", c.csv_out, "write a CSV table here");
    s->add_option("--store", c.store, "result store directory");
    s->add_flag("--no-cache", c.no_cache, "bypass the result store");
    s->add_flag("--timing", c.timing, "add timing metadata to the report");
  };
  auto* cat = app.add_subcommand("catalog", "irreducible F_pG-modules");
  common(cat, true);
  auto* coh = app.add_subcommand("cohom", "dim H^j(G, M) for j <= deg");
  common(coh, true);
  auto* mopt = coh->add_option("--module", module, "catalog index");
  coh->add_flag("--all", all, "every catalog module")->excludes(mopt);
  coh->add_option("--deg", deg, "top degree (at most 3)")->check(CLI::Range(0, 3));
  auto* rh = app.add_subcommand("rhat", "relation count report");
  common(rh, false);
  auto* bd = app.add_subcommand("bounds", "best certified bound with its derivation");
  common(bd, true);
  bd->add_option("--module", module, "catalog index")->required();
  bd->add_option("--deg", deg, "degree (1 or 2)")->check(CLI::Range(1, 2));
  auto* ver = app.add_subcommand("verify", "run the acceptance suite");
  ver->add_option("--suite", suite, "suite name")->required()->check(CLI::IsMember({"paper"}));
  ver->add_option("--max-order", max_order, "skip groups above this order");
  ver->add_option("--only", only, "criterion numbers")->delimiter(',');
  ver->add_option("--json", c.json_out, "write results as JSON");
  for (auto* s : {cat, coh, rh, bd, ver}) {
    s->add_option("--seed", c.seed, "random seed")->each([&](const std::string&) { c.seed_set = true; });
    s->add_option("--config", c.config, "JSON file overriding caps");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitInput;
  }

  try {
    if (!c.config.empty()) load_caps_file(c.config);
    uint64_t seed = c.seed_set ? c.seed : caps().seed;

    if (ver->parsed()) {
      SuiteOptions o;
      o.max_order = max_order;
      o.seed = seed;
      o.only = only;
      o.on_result = [&](const CriterionResult& r) { out << format_result(r) << std::endl; };
      auto results = run_paper_suite(o);
      bool ok = true;
      json arr = json::array();
      for (const auto& r : results) {
        ok = ok && r.passed;
        arr.push_back(to_json(r));
      }
      if (!c.json_out.empty())
        write_file(c.json_out, json{{"version", kToolVersion}, {"command", "verify"}, {"results", arr}}.dump(2) + "\n");
      return ok ? kExitOk : kExitVerifyFailed;
    }

    std::string command = cat->parsed() ? "catalog" : coh->parsed() ? "cohom" : rh->parsed() ? "rhat" : "bounds";
    if (coh->parsed() && !module && !all) throw InputError("cohom needs --module i or --all");
    auto start = std::chrono::steady_clock::now();
    Loaded L = load(c);
    if (command != "rhat") check_prime(L, c.p);
    json key{{"version", kToolVersion}, {"spec", L.hash}, {"command", command}, {"seed", seed}, {"caps", caps_json()}};
    if (command != "rhat") key["p"] = c.p;
    if (command == "cohom" || command == "bounds") {
      key["module"] = module ? json(*module) : json("all");
      key["degree"] = deg;
    }
    std::string store = c.no_cache ? "" : (c.store.empty() ? ResultCache::default_dir() : c.store);
    ResultCache cache(store, &err);
    std::optional<json> payload = cache.get(key);
    bool hit = payload.has_value();
    if (!hit) {
      if (command == "catalog") payload = catalog_payload(L, c.p, seed);
      else if (command == "cohom") payload = cohom_payload(L, c.p, module, deg, seed);
      else if (command == "rhat") payload = profinite::to_json(profinite::profinite_report(group_of(L), seed));
      else payload = bounds_payload(L, c.p, *module, deg, seed);
      cache.put(key, *payload);
    }
    json report{{"version", kToolVersion},
                {"group", {{"name", L.spec.name}, {"spec_hash", L.hash}}},
                {"command", command},
                {"payload", *payload}};
    if (c.timing)
      report["timing"] = {{"seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()},
                          {"cached", hit}};
    std::string text = report.dump(2) + "\n";
    if (c.json_out.empty()) out << text;
    else write_file(c.json_out, text);
    if (!c.csv_out.empty()) write_file(c.csv_out, csv_of(command, *payload));
    return kExitOk;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const CapacityError& e) {
    err << e.what() << "\n";
    return kExitCapacity;
  } catch (const Undecided& e) {
    err << "undecided: " << e.what() << "\n";
    return kExitCapacity;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitVerifyFailed;
  }
}

}  // namespace cohomkit::cli
