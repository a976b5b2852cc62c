#include "cohomkit/groups/bsgs.hpp"

#include "cohomkit/errors.hpp"

namespace cohomkit::groups {

Slp::Slp(size_t ngens) : ngens_(ngens) {
  for (size_t i = 0; i < ngens; ++i) nodes_.push_back({Kind::Gen, int32_t(i), 0});
}

int32_t Slp::mul(int32_t a, int32_t b) {
  if (a == kIdentity) return b;
  if (b == kIdentity) return a;
  nodes_.push_back({Kind::Mul, a, b});
  return int32_t(nodes_.size() - 1);
}

int32_t Slp::inv(int32_t a) {
  if (a == kIdentity) return a;
  const Node& n = nodes_[size_t(a)];
  if (n.kind == Kind::Inv) return n.a;
  nodes_.push_back({Kind::Inv, a, 0});
  return int32_t(nodes_.size() - 1);
}

Perm Slp::evaluate(int32_t node, const std::vector<Perm>& gens) const {
  if (node == kIdentity) return Perm(gens.empty() ? 0 : gens[0].degree());
  const Node& n = nodes_[size_t(node)];
  switch (n.kind) {
    case Kind::Gen:
      return gens[size_t(n.a)];
    case Kind::Mul:
      return evaluate(n.a, gens) * evaluate(n.b, gens);
    case Kind::Inv:
      return evaluate(n.a, gens).inverse();
  }
  return Perm();
}

Bsgs::Bsgs(size_t degree, const std::vector<Perm>& gens, std::optional<uint64_t> known_order)
    : degree_(degree), slp_(gens.size()) {
  for (size_t i = 0; i < gens.size(); ++i) {
    if (gens[i].degree() != degree) throw InputError("generator degree mismatch");
    if (gens[i].is_identity()) continue;
    bool fixes_base = true;
    for (auto& L : levels_)
      if (gens[i][L.base] != L.base) fixes_base = false;
    strong_.push_back(gens[i]);
    strong_inv_.push_back(gens[i].inverse());
    strong_node_.push_back(slp_.gen(i));
    if (fixes_base) {
      Point b = 0;
      while (gens[i][b] == b) ++b;
      levels_.push_back(Level{b, {}, {}, {}, {}});
    }
  }
  for (size_t l = 0; l < levels_.size(); ++l) build_orbit(l);
  schreier_sims(known_order);
  order_ = compute_order();
  if (known_order && order_ != *known_order)
    throw InternalError("stabilizer chain order " + std::to_string(order_) + " differs from expected " +
                        std::to_string(*known_order));
}

void Bsgs::build_orbit(size_t level) {
  Level& L = levels_[level];
  L.gens.clear();
  for (size_t s = 0; s < strong_.size(); ++s) {
    bool ok = true;
    for (size_t j = 0; j < level && ok; ++j) ok = strong_[s][levels_[j].base] == levels_[j].base;
    if (ok) L.gens.push_back(uint32_t(s));
  }
  L.label.assign(degree_, -1);
  L.tnode.assign(degree_, Slp::kIdentity);
  L.orbit.clear();
  L.label[L.base] = -2;
  L.orbit.push_back(L.base);
  for (size_t k = 0; k < L.orbit.size(); ++k) {
    Point g = L.orbit[k];
    for (size_t t = 0; t < L.gens.size(); ++t) {
      uint32_t s = L.gens[t];
      Point d = strong_[s][g];
      if (L.label[d] != -1) continue;
      L.label[d] = int32_t(s);
      L.tnode[d] = slp_.mul(strong_node_[s], L.tnode[g]);
      L.orbit.push_back(d);
    }
  }
}

void Bsgs::apply_inverse_path(std::vector<Point>& img, const Level& L, Point pt) const {
  while (L.label[pt] != -2) {
    const Perm& sinv = strong_inv_[size_t(L.label[pt])];
    for (auto& x : img) x = sinv[x];
    pt = sinv[pt];
  }
}

Perm Bsgs::transversal(size_t level, Point pt) const {
  const Level& L = levels_[level];
  if (L.label[pt] == -1) throw InputError("point outside basic orbit");
  std::vector<int32_t> path;
  while (L.label[pt] != -2) {
    path.push_back(L.label[pt]);
    pt = strong_inv_[size_t(L.label[pt])][pt];
  }
  std::vector<Point> img(degree_);
  for (Point i = 0; i < degree_; ++i) img[i] = i;
  for (size_t k = path.size(); k-- > 0;) {
    const Perm& s = strong_[size_t(path[k])];
    for (auto& x : img) x = s[x];
  }
  return Perm(std::move(img));
}

size_t Bsgs::sift(Perm& h, int32_t& node, size_t start) {
  std::vector<Point> img = h.images();
  size_t j = start;
  for (; j < levels_.size(); ++j) {
    const Level& L = levels_[j];
    Point b = img[L.base];
    if (L.label[b] == -1) break;
    apply_inverse_path(img, L, b);
    if (node != -2) node = slp_.mul(slp_.inv(L.tnode[b]), node);
  }
  h = Perm(std::move(img));
  return j;
}

void Bsgs::add_strong(const Perm& g, int32_t node, size_t from_level) {
  strong_.push_back(g);
  strong_inv_.push_back(g.inverse());
  strong_node_.push_back(node);
  bool fixes_base = true;
  for (auto& L : levels_)
    if (g[L.base] != L.base) fixes_base = false;
  if (fixes_base) {
    Point b = 0;
    while (g[b] == b) ++b;
    levels_.push_back(Level{b, {}, {}, {}, {}});
  }
  for (size_t l = from_level; l < levels_.size(); ++l) build_orbit(l);
}

uint64_t Bsgs::compute_order() const {
  uint64_t o = 1;
  for (auto& L : levels_) {
    if (o > UINT64_MAX / L.orbit.size()) throw CapacityError("order_overflow", UINT64_MAX, "group order exceeds 64 bits");
    o *= L.orbit.size();
  }
  return o;
}

void Bsgs::schreier_sims(std::optional<uint64_t> known_order) {
  if (known_order && compute_order() == *known_order) return;
  int64_t i = int64_t(levels_.size()) - 1;
  while (i >= 0) {
    bool added = false;
    size_t li = size_t(i);
    for (size_t k = 0; k < levels_[li].orbit.size() && !added; ++k) {
      Point beta = levels_[li].orbit[k];
      for (size_t t = 0; t < levels_[li].gens.size() && !added; ++t) {
        const Level& L = levels_[li];
        uint32_t s = L.gens[t];
        Point gamma = strong_[s][beta];
        if (L.label[gamma] == int32_t(s) && strong_inv_[s][gamma] == beta) continue;
        Perm h = strong_[s] * transversal(li, beta);
        std::vector<Point> img = h.images();
        apply_inverse_path(img, L, gamma);
        h = Perm(std::move(img));
        int32_t skip = -2;
        size_t j = sift(h, skip, li + 1);
        if (h.is_identity()) continue;
        int32_t node = slp_.mul(slp_.inv(L.tnode[gamma]), slp_.mul(strong_node_[s], L.tnode[beta]));
        h = strong_[s] * transversal(li, beta);
        img = h.images();
        apply_inverse_path(img, levels_[li], gamma);
        h = Perm(std::move(img));
        j = sift(h, node, li + 1);
        add_strong(h, node, li + 1);
        i = int64_t(j);
        added = true;
      }
    }
    if (!added) {
      --i;
    } else if (known_order && compute_order() == *known_order) {
      return;
    }
  }
}

bool Bsgs::contains(const Perm& g) const {
  if (g.degree() != degree_) return false;
  std::vector<Point> img = g.images();
  for (const Level& L : levels_) {
    Point b = img[L.base];
    if (L.label[b] == -1) return false;
    apply_inverse_path(img, L, b);
  }
  for (Point x = 0; x < degree_; ++x)
    if (img[x] != x) return false;
  return true;
}

std::optional<Word> Bsgs::factor(const Perm& g) const {
  if (g.degree() != degree_) return std::nullopt;
  std::vector<Point> img = g.images();
  Word w;
  for (const Level& L : levels_) {
    Point b = img[L.base];
    if (L.label[b] == -1) return std::nullopt;
    apply_inverse_path(img, L, b);
    if (L.tnode[b] != Slp::kIdentity) w.push_back(L.tnode[b]);
  }
  for (Point x = 0; x < degree_; ++x)
    if (img[x] != x) return std::nullopt;
  return w;
}

std::vector<Point> Bsgs::base() const {
  std::vector<Point> b;
  for (auto& L : levels_) b.push_back(L.base);
  return b;
}

Perm Bsgs::random_element(std::mt19937_64& rng) const {
  Perm g(degree_);
  for (size_t l = 0; l < levels_.size(); ++l) {
    const auto& orb = levels_[l].orbit;
    g = g * transversal(l, orb[rng() % orb.size()]);
  }
  return g;
}

std::vector<Perm> Bsgs::elements() const {
  std::vector<Perm> out{Perm(degree_)};
  for (size_t l = levels_.size(); l-- > 0;) {
    std::vector<Perm> trans;
    for (Point pt : levels_[l].orbit) trans.push_back(transversal(l, pt));
    std::vector<Perm> next;
    next.reserve(out.size() * trans.size());
    for (const Perm& u : trans)
      for (const Perm& x : out) next.push_back(u * x);
    out.swap(next);
  }
  return out;
}

}  // namespace cohomkit::groups
