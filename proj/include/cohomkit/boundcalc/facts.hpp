#pragma once
#include <boost/rational.hpp>
#include <cstdint>
#include <deque>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace cohomkit::boundcalc {

using Rational = boost::rational<int64_t>;

// Constant of the general bound for faithful irreducible modules.
inline const Rational kConstantC{37, 2};
// Constant for quasisimple groups.
inline const Rational kConstantQuasisimple{35, 2};

// What a fact bounds: dim H^degree(group, module) over F_p, or a named
// numeric input when quantity is nonempty (for example "dim" or "e_p").
struct Subject {
  std::string group;
  uint32_t p = 0;
  std::string module;
  size_t degree = 0;
  std::string quantity;
  auto operator<=>(const Subject&) const = default;
  std::string str() const;
};

enum class Kind { Exact, Upper, Axiom };
const char* kind_name(Kind k);

// Lemma tags; each determines how the value is recomputed from premises.
enum class Lemma {
  Computed,     // exact value from a cohomology computation; leaf
  Input,        // axiom such as dim M or e_p(G); leaf
  Usual,        // sum of the premises (two in degree 1, three in degree 2)
  Vanishing,    // 0 under the coprime hypotheses
  Inflation,    // equals its single premise
  Restriction,  // equals its single premise (injective restriction)
  Cyclic,       // 1 for indecomposable M, else the premise dim M
  Abelian,      // sum of the two premises
  Holt,         // 2 * e_p * dim M
  General,      // (C + s_p + h_{p,1} * l_p) * dim V
  Derivations,  // d * dim W
};
const char* lemma_name(Lemma l);

using FactId = uint64_t;

struct Fact {
  FactId id = 0;
  Subject subject;
  Kind kind = Kind::Upper;
  Rational value;
  Lemma lemma = Lemma::Input;
  std::vector<FactId> premises;
  std::string note;
};

// Value of a lemma given premise values in order.
Rational evaluate(Lemma l, const std::vector<Rational>& premise_values);

// Append-only store; insertion is atomic and references stay valid.
class FactStore {
 public:
  FactId add_exact(const Subject& s, uint64_t value, std::string note = "");
  FactId add_axiom(const Subject& s, Rational value, std::string note = "");
  // Derived upper fact; the value is computed from the premises.
  FactId derive(const Subject& s, Lemma l, std::vector<FactId> premises, std::string note = "");
  const Fact& get(FactId id) const;
  size_t size() const;
  std::vector<Fact> matching(const Subject& s) const;

 private:
  FactId insert(Fact f);
  mutable std::mutex mu_;
  std::deque<Fact> facts_;
};

struct Trace {
  Fact fact;
  std::vector<Trace> premises;
};

Trace trace(const FactStore& store, FactId id);
// Recomputes the root value bottom-up from the leaves.
Rational replay(const Trace& t);
nlohmann::json to_json(const Trace& t);
std::string rational_str(const Rational& r);

// Exact fact if present, else the smallest upper fact. Throws InputError
// "no bound derivable" when the subject has no fact.
FactId best_bound(const FactStore& store, const Subject& s);

}  // namespace cohomkit::boundcalc
