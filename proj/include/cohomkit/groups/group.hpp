#pragma once
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "cohomkit/ffla/fq.hpp"
#include "cohomkit/groups/bsgs.hpp"
#include "cohomkit/groups/perm.hpp"

namespace cohomkit::groups {

class Group;
using GroupPtr = std::shared_ptr<const Group>;

// Matrices over GF(q), entries as field codes, row-major, acting on column vectors.
struct MatrixData {
  ffla::FieldPtr field;
  size_t dim = 0;
  std::vector<std::vector<uint32_t>> gens;
  // Nonzero vectors of GF(q)^dim indexed as points of the permutation action.
  std::vector<std::vector<uint32_t>> points;
};

// Full element list with left-multiplication by generators; |G| <= table_cap.
class ElementTable {
 public:
  explicit ElementTable(const Group& G);
  size_t size() const { return elems_.size(); }
  const Perm& element(size_t i) const { return elems_[i]; }
  const std::vector<Perm>& elements() const { return elems_; }
  std::optional<uint32_t> find(const Perm& g) const;
  uint32_t index(const Perm& g) const;
  // Index of gens[s] * element(i).
  uint32_t left(size_t s, size_t i) const { return left_[s * elems_.size() + i]; }
  // element(i) = gens[via(i)] * element(parent(i)) for i > 0.
  uint32_t parent(size_t i) const { return parent_[i]; }
  uint32_t via(size_t i) const { return via_[i]; }
  uint32_t inverse(size_t i) const { return inv_[i]; }
  uint64_t element_order(size_t i) const { return orders_[i]; }
  // Index of element(i) * element(j); the full table is built on first use.
  uint32_t mul(size_t i, size_t j) const;

 private:
  std::vector<Perm> elems_;
  std::unordered_map<Perm, uint32_t, PermHash> index_;
  std::vector<uint32_t> left_, parent_, via_, inv_;
  std::vector<uint64_t> orders_;
  mutable std::once_flag mul_once_;
  mutable std::vector<uint16_t> mul16_;
  mutable std::vector<uint32_t> mul32_;
};

struct ClassInfo {
  std::vector<uint32_t> class_of;  // element index -> class index
  std::vector<uint32_t> reps;      // class index -> representative element index
  std::vector<uint32_t> sizes;
};

class Group {
 public:
  static GroupPtr from_perms(size_t degree, std::vector<Perm> gens, std::string name = "",
                             std::optional<uint64_t> known_order = std::nullopt);
  // Breadth-first closure (closure_cap) then the action on nonzero vectors.
  static GroupPtr from_matrices(ffla::FieldPtr field, size_t dim, std::vector<std::vector<uint32_t>> gens,
                                std::string name = "");

  const std::string& name() const { return name_; }
  size_t degree() const { return degree_; }
  const std::vector<Perm>& gens() const { return gens_; }
  size_t ngens() const { return gens_.size(); }
  uint64_t order() const { return bsgs_->order(); }
  Perm identity() const { return Perm(degree_); }
  bool contains(const Perm& g) const { return bsgs_->contains(g); }
  // Word in SLP nodes of bsgs().slp(); throws InputError for non-members.
  Word factor(const Perm& g) const;
  const Bsgs& bsgs() const { return *bsgs_; }
  const MatrixData* matrix() const { return matrix_.get(); }
  bool has_table() const;
  // Throws CapacityError above table_cap.
  const ElementTable& table() const;
  const ClassInfo& classes() const;
  bool is_abelian() const;
  // Order of the group generated by the given members (same degree).
  Perm random_element(std::mt19937_64& rng) const { return bsgs_->random_element(rng); }
  // Cached unique id for the lifetime of the process.
  uint64_t uid() const { return uid_; }

 private:
  Group() = default;
  std::string name_;
  size_t degree_ = 0;
  std::vector<Perm> gens_;
  std::unique_ptr<Bsgs> bsgs_;
  std::shared_ptr<MatrixData> matrix_;
  uint64_t uid_ = 0;
  mutable std::once_flag table_once_, classes_once_;
  mutable std::unique_ptr<ElementTable> table_;
  mutable std::unique_ptr<ClassInfo> classes_;
};

struct Subgroup {
  GroupPtr parent;
  GroupPtr group;  // same degree as parent
  uint64_t order() const { return group->order(); }
};

// Validates membership; input error otherwise.
Subgroup make_subgroup(const GroupPtr& G, std::vector<Perm> gens, std::string name = "");
Subgroup whole_group(const GroupPtr& G);
Subgroup trivial_subgroup(const GroupPtr& G);
uint64_t order_of_generated(size_t degree, const std::vector<Perm>& gens);

// Left cosets gQ with canonical representatives min over q in Q of g*q.
class CosetSpace {
 public:
  CosetSpace(GroupPtr G, Subgroup Q);
  const GroupPtr& group() const { return G_; }
  const Subgroup& subgroup() const { return Q_; }
  size_t size() const { return reps_.size(); }
  const Perm& rep(size_t i) const { return reps_[i]; }
  // rep(0) is the identity and rep(i) = gens[via(i)] * rep(parent(i)) for i > 0.
  uint32_t parent(size_t i) const { return parent_[i]; }
  uint32_t via(size_t i) const { return via_[i]; }
  // Index of the coset gens[s] * rep(i) Q.
  uint32_t act_gen(size_t s, size_t i) const { return act_[s * reps_.size() + i]; }
  uint32_t index_of(const Perm& g) const;
  // Element q of Q with gens[s] * rep(i) = rep(act_gen(s,i)) * q.
  Perm gen_cocycle(size_t s, size_t i) const;

 private:
  Perm canonical(const Perm& g) const;
  uint32_t find_by_membership(const Perm& g) const;
  GroupPtr G_;
  bool by_membership_ = false;
  Subgroup Q_;
  std::vector<Perm> qelems_;
  std::vector<Perm> reps_;
  std::unordered_map<Perm, uint32_t, PermHash> index_;  // canonical form -> coset
  std::vector<uint32_t> parent_, via_, act_;
};

std::vector<Perm> coset_representatives(const GroupPtr& G, const Subgroup& H);

uint64_t p_part(uint64_t n, uint64_t p);
uint32_t log_p(uint64_t n, uint64_t p);
Subgroup sylow_subgroup(const GroupPtr& G, uint32_t p, uint64_t seed);

GroupPtr regular_representation(const GroupPtr& G);
GroupPtr direct_product(const GroupPtr& A, const GroupPtr& B);
GroupPtr wreath_product(const GroupPtr& L, size_t t);

struct MinGenResult {
  std::optional<size_t> d;  // exact value when found
  size_t limit = 0;
  std::vector<Perm> witness;
};
MinGenResult min_generators_probe(const GroupPtr& G, size_t limit, uint64_t seed);

// Number of orbits of x -> x^p on p-regular conjugacy classes, which equals
// the number of irreducible F_pG-modules.
size_t irreducible_count(const GroupPtr& G, uint32_t p);

// Normal closure of a set of elements.
GroupPtr normal_closure(const GroupPtr& G, const std::vector<Perm>& elems);
GroupPtr derived_subgroup(const GroupPtr& G);
bool is_perfect(const GroupPtr& G);
// Centre via the element table.
std::vector<Perm> center(const GroupPtr& G);
// Conjugation action of G on a normal subgroup N, as permutations on N's element list.
bool is_normal(const GroupPtr& G, const GroupPtr& N);
bool is_simple(const GroupPtr& G);

// G/N as the permutation action of G on the cosets of N; gen_images[s] is the
// image of G's generator s, and these generate the quotient in the same order.
struct Quotient {
  GroupPtr group;
  std::vector<Perm> gen_images;
};
Quotient quotient_group(const GroupPtr& G, const Subgroup& N, std::string name = "");

}  // namespace cohomkit::groups
