#pragma once
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cohomkit/ffla/matrix.hpp"
#include "cohomkit/groups/group.hpp"

namespace cohomkit::gmod {

using ffla::FpMatrix;
using ffla::FpVector;
using groups::GroupPtr;
using groups::Perm;
using groups::Subgroup;

// Left F_pG-module on column vectors: generator s acts by gen(s), and
// the matrix of g*h is the product of the matrices of g and h.
class GModule {
 public:
  GModule() = default;
  // dim is required when the group has no generators.
  GModule(GroupPtr G, uint32_t p, std::vector<FpMatrix> gens, std::string label = "",
          std::optional<size_t> dim = std::nullopt);
  // Permutation module: basis vectors permuted as e_i -> e_{g(i)}.
  static GModule from_permutations(GroupPtr G, uint32_t p, const std::vector<Perm>& perms, size_t degree,
                                   std::string label = "");

  const GroupPtr& group() const { return G_; }
  uint32_t p() const { return p_; }
  size_t dim() const { return dim_; }
  size_t ngens() const { return gens_.size(); }
  const FpMatrix& gen(size_t s) const { return gens_[s]; }
  const FpMatrix& gen_t(size_t s) const { return gens_t_[s]; }
  const std::vector<FpMatrix>& gens() const { return gens_; }
  // Permutation action when the module is a permutation module.
  const std::vector<Perm>* perm_action() const { return perms_.empty() ? nullptr : &perms_; }
  const std::string& label() const { return label_; }
  void set_label(std::string l) { label_ = std::move(l); }

  FpMatrix word_matrix(const groups::Word& w) const;
  FpMatrix element_matrix(const Perm& g) const;
  // Matrices of all table elements, in table order.
  const std::vector<FpMatrix>& table_matrices() const;
  bool is_trivial() const;
  // Checks the homomorphism property on the element table when available,
  // else on random word pairs; throws InternalError on failure.
  void verify_action(uint64_t seed = 1) const;

 private:
  struct Cache;
  GroupPtr G_;
  uint32_t p_ = 2;
  size_t dim_ = 0;
  std::vector<FpMatrix> gens_, gens_t_;
  std::vector<Perm> perms_;
  std::string label_;
  std::shared_ptr<Cache> cache_;
};

GModule trivial_module(const GroupPtr& G, uint32_t p);
GModule regular_module(const GroupPtr& G, uint32_t p);
GModule permutation_module(const GroupPtr& G, uint32_t p);
// Permutation module on the cosets of Q.
GModule coset_module(const GroupPtr& G, const Subgroup& Q, uint32_t p);
// Natural module of a matrix group written over GF(p); dimension dim * e.
GModule natural_module(const GroupPtr& G);
GModule dual(const GModule& M);
GModule tensor(const GModule& M, const GModule& N);
GModule wedge2(const GModule& M);
GModule direct_sum(const GModule& M, const GModule& N);
GModule restrict(const GModule& M, const Subgroup& H);
// V is a module for H.group; result is a module for H.parent.
GModule induce(const GModule& V, const Subgroup& H);
// Module for H.parent on which H.parent acts through H.parent -> ... ; inflation
// along a homomorphism given by images of the generators.
GModule inflate(const GroupPtr& G, const GModule& V, const std::vector<Perm>& images);
// Outer tensor product for a direct product group built by groups::direct_product(A, B).
GModule outer_tensor(const GroupPtr& AxB, const GModule& MA, const GModule& MB);

// Rows form a basis.
FpMatrix fixed_points(const GModule& M, const Subgroup& H);
FpMatrix fixed_points(const GModule& M);
FpMatrix commutator_submodule(const GModule& M, const Subgroup& H);

// Spin-up of the rows of V under the action; rows of the result form an echelon basis.
FpMatrix spin(const GModule& M, const FpMatrix& V);
// Spin under the transposed action (row vectors w -> w * gen(s)).
FpMatrix spin_dual(const GModule& M, const FpMatrix& W);

struct Subquotient {
  GModule sub;
  GModule quotient;
};
// U: rows spanning an invariant subspace.
Subquotient split(const GModule& M, const FpMatrix& U);

void check_compatible(const GModule& M, const GModule& N);

}  // namespace cohomkit::gmod
