#include "cohomkit/boundcalc/facts.hpp"

#include "cohomkit/errors.hpp"

namespace cohomkit::boundcalc {

std::string Subject::str() const {
  std::string s = quantity.empty() ? "H^" + std::to_string(degree) : quantity;
  s += "(" + group;
  if (!module.empty()) s += ", " + module;
  return s + ") over F_" + std::to_string(p);
}

const char* kind_name(Kind k) {
  switch (k) {
    case Kind::Exact: return "exact";
    case Kind::Upper: return "upper";
    case Kind::Axiom: return "axiom";
  }
  return "?";
}

const char* lemma_name(Lemma l) {
  switch (l) {
    case Lemma::Computed: return "computed";
    case Lemma::Input: return "input";
    case Lemma::Usual: return "usual";
    case Lemma::Vanishing: return "coprime-vanishing";
    case Lemma::Inflation: return "coprime-inflation";
    case Lemma::Restriction: return "restriction";
    case Lemma::Cyclic: return "cyclic-sylow";
    case Lemma::Abelian: return "abelian-normal";
    case Lemma::Holt: return "holt";
    case Lemma::General: return "general";
    case Lemma::Derivations: return "derivations";
  }
  return "?";
}

Rational evaluate(Lemma l, const std::vector<Rational>& v) {
  auto need = [&](size_t n) {
    if (v.size() != n)
      throw InputError(std::string(lemma_name(l)) + " needs " + std::to_string(n) + " premises, got " +
                       std::to_string(v.size()));
  };
  switch (l) {
    case Lemma::Computed:
    case Lemma::Input:
      throw InputError("leaf facts have no formula");
    case Lemma::Usual:
      // Degree 1 has two terms, degree 2 three.
      if (v.size() != 2) need(3);
      return v.size() == 2 ? v[0] + v[1] : v[0] + v[1] + v[2];
    case Lemma::Vanishing:
      need(0);
      return 0;
    case Lemma::Inflation:
    case Lemma::Restriction:
      need(1);
      return v[0];
    case Lemma::Cyclic:
      // No premise: M indecomposable. One premise: dim M.
      if (v.empty()) return 1;
      need(1);
      return v[0];
    case Lemma::Abelian:
      need(2);
      return v[0] + v[1];
    case Lemma::Holt:
      need(2);
      return 2 * v[0] * v[1];
    case Lemma::General:
      need(4);  // s_p, h_{p,1}, l_p, dim V
      return (kConstantC + v[0] + v[1] * v[2]) * v[3];
    case Lemma::Derivations:
      need(2);
      return v[0] * v[1];
  }
  throw InputError("unknown lemma");
}

FactId FactStore::insert(Fact f) {
  std::lock_guard<std::mutex> lock(mu_);
  f.id = facts_.size();
  facts_.push_back(std::move(f));
  return facts_.back().id;
}

FactId FactStore::add_exact(const Subject& s, uint64_t value, std::string note) {
  Fact f;
  f.subject = s;
  f.kind = Kind::Exact;
  f.value = Rational(int64_t(value));
  f.lemma = Lemma::Computed;
  f.note = std::move(note);
  return insert(std::move(f));
}

FactId FactStore::add_axiom(const Subject& s, Rational value, std::string note) {
  if (value < Rational(0)) throw InputError("axiom values are nonnegative");
  Fact f;
  f.subject = s;
  f.kind = Kind::Axiom;
  f.value = value;
  f.lemma = Lemma::Input;
  f.note = std::move(note);
  return insert(std::move(f));
}

FactId FactStore::derive(const Subject& s, Lemma l, std::vector<FactId> premises, std::string note) {
  std::vector<Rational> vals;
  for (FactId id : premises) vals.push_back(get(id).value);
  Fact f;
  f.subject = s;
  f.kind = Kind::Upper;
  f.value = evaluate(l, vals);
  f.lemma = l;
  f.premises = std::move(premises);
  f.note = std::move(note);
  return insert(std::move(f));
}

const Fact& FactStore::get(FactId id) const {
  std::lock_guard<std::mutex> lock(mu_);
  if (id >= facts_.size()) throw InputError("unknown fact " + std::to_string(id));
  return facts_[id];
}

size_t FactStore::size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return facts_.size();
}

std::vector<Fact> FactStore::matching(const Subject& s) const {
  std::lock_guard<std::mutex> lock(mu_);
  std::vector<Fact> out;
  for (const auto& f : facts_)
    if (f.subject == s) out.push_back(f);
  return out;
}

Trace trace(const FactStore& store, FactId id) {
  Trace t{store.get(id), {}};
  for (FactId q : t.fact.premises) t.premises.push_back(trace(store, q));
  return t;
}

Rational replay(const Trace& t) {
  if (t.fact.lemma == Lemma::Computed || t.fact.lemma == Lemma::Input) return t.fact.value;
  std::vector<Rational> vals;
  for (const auto& q : t.premises) vals.push_back(replay(q));
  return evaluate(t.fact.lemma, vals);
}

std::string rational_str(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

nlohmann::json to_json(const Trace& t) {
  nlohmann::json j;
  j["lemma"] = lemma_name(t.fact.lemma);
  j["kind"] = kind_name(t.fact.kind);
  j["value"] = rational_str(t.fact.value);
  j["subject"] = t.fact.subject.str();
  if (!t.fact.note.empty()) j["note"] = t.fact.note;
  j["premises"] = nlohmann::json::array();
  for (const auto& q : t.premises) j["premises"].push_back(to_json(q));
  return j;
}

FactId best_bound(const FactStore& store, const Subject& s) {
  std::optional<Fact> best;
  for (auto& f : store.matching(s)) {
    if (f.kind == Kind::Exact) return f.id;
    if (!best || f.value < best->value) best = f;
  }
  if (!best) throw InputError("no bound derivable for " + s.str());
  return best->id;
}

}  // namespace cohomkit::boundcalc
