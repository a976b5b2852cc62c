#pragma once
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "cohomkit/groups/perm.hpp"

namespace cohomkit::groups {

// Straight-line program over the group generators. Node i < ngens is generator i.
class Slp {
 public:
  enum class Kind : uint8_t { Gen, Mul, Inv };
  struct Node {
    Kind kind;
    int32_t a;
    int32_t b;
  };
  static constexpr int32_t kIdentity = -1;

  explicit Slp(size_t ngens = 0);
  int32_t gen(size_t i) const { return int32_t(i); }
  int32_t mul(int32_t a, int32_t b);
  int32_t inv(int32_t a);
  const Node& node(int32_t i) const { return nodes_[size_t(i)]; }
  size_t size() const { return nodes_.size(); }
  size_t ngens() const { return ngens_; }
  Perm evaluate(int32_t node, const std::vector<Perm>& gens) const;

 private:
  size_t ngens_;
  std::vector<Node> nodes_;
};

// A product of SLP nodes, read left to right in function composition.
using Word = std::vector<int32_t>;

// Base and strong generating set by the Schreier-Sims algorithm.
class Bsgs {
 public:
  Bsgs(size_t degree, const std::vector<Perm>& gens, std::optional<uint64_t> known_order = std::nullopt);

  size_t degree() const { return degree_; }
  uint64_t order() const { return order_; }
  bool contains(const Perm& g) const;
  // Word w with product equal to g, or nullopt if g is not a member.
  std::optional<Word> factor(const Perm& g) const;
  const Slp& slp() const { return slp_; }
  std::vector<Point> base() const;
  size_t levels() const { return levels_.size(); }
  size_t orbit_size(size_t level) const { return levels_[level].orbit.size(); }
  const std::vector<Perm>& strong_generators() const { return strong_; }
  Perm random_element(std::mt19937_64& rng) const;
  // All elements, by iterating over transversal products.
  std::vector<Perm> elements() const;
  // Transversal element for a point of the orbit at a level.
  Perm transversal(size_t level, Point pt) const;

 private:
  struct Level {
    Point base;
    std::vector<uint32_t> gens;        // indices into strong_
    std::vector<int32_t> label;        // per point: -1 outside orbit, -2 base, else index into gens
    std::vector<Point> orbit;
    std::vector<int32_t> tnode;        // per point: SLP node of the transversal element
  };
  void build_orbit(size_t level);
  // Sifts h from level start; returns the level where sifting stopped (levels_.size() if complete).
  size_t sift(Perm& h, int32_t& node, size_t start);
  void apply_inverse_path(std::vector<Point>& img, const Level& L, Point pt) const;
  void add_strong(const Perm& g, int32_t node, size_t from_level);
  uint64_t compute_order() const;
  void schreier_sims(std::optional<uint64_t> known_order);

  size_t degree_;
  Slp slp_;
  std::vector<Perm> strong_, strong_inv_;
  std::vector<int32_t> strong_node_;
  std::vector<Level> levels_;
  uint64_t order_ = 1;
};

}  // namespace cohomkit::groups
