#include "cohomkit/groups/group.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <unordered_set>

#include "cohomkit/config.hpp"
#include "cohomkit/errors.hpp"

namespace cohomkit::groups {

namespace {

std::atomic<uint64_t> g_next_uid{1};

struct VecHash {
  size_t operator()(const std::vector<uint32_t>& v) const {
    uint64_t h = 1469598103934665603ull;
    for (uint32_t x : v) {
      h ^= x;
      h *= 1099511628211ull;
    }
    return size_t(h);
  }
};

using FMat = std::vector<uint32_t>;

FMat fmat_mul(const ffla::FqField& F, size_t n, const FMat& A, const FMat& B) {
  FMat C(n * n, 0);
  for (size_t i = 0; i < n; ++i)
    for (size_t k = 0; k < n; ++k) {
      uint32_t a = A[i * n + k];
      if (!a) continue;
      for (size_t j = 0; j < n; ++j) C[i * n + j] = F.add(C[i * n + j], F.mul(a, B[k * n + j]));
    }
  return C;
}

bool fmat_invertible(const ffla::FqField& F, size_t n, FMat A) {
  for (size_t c = 0; c < n; ++c) {
    size_t r = c;
    while (r < n && A[r * n + c] == 0) ++r;
    if (r == n) return false;
    for (size_t j = 0; j < n; ++j) std::swap(A[r * n + j], A[c * n + j]);
    uint32_t inv = F.inv(A[c * n + c]);
    for (size_t i = c + 1; i < n; ++i) {
      uint32_t f = F.mul(A[i * n + c], inv);
      if (!f) continue;
      for (size_t j = c; j < n; ++j) A[i * n + j] = F.sub(A[i * n + j], F.mul(f, A[c * n + j]));
    }
  }
  return true;
}

}  // namespace

// ---- Group ----

GroupPtr Group::from_perms(size_t degree, std::vector<Perm> gens, std::string name, std::optional<uint64_t> known_order) {
  for (auto& g : gens)
    if (g.degree() != degree) throw InputError("generator degree " + std::to_string(g.degree()) + " differs from " + std::to_string(degree));
  auto G = std::shared_ptr<Group>(new Group());
  G->name_ = std::move(name);
  G->degree_ = degree;
  G->gens_ = std::move(gens);
  G->bsgs_ = std::make_unique<Bsgs>(degree, G->gens_, known_order);
  G->uid_ = g_next_uid++;
  return G;
}

GroupPtr Group::from_matrices(ffla::FieldPtr field, size_t dim, std::vector<std::vector<uint32_t>> gens, std::string name) {
  const ffla::FqField& F = *field;
  if (dim == 0) throw InputError("matrix dimension must be positive");
  for (auto& A : gens) {
    if (A.size() != dim * dim) throw InputError("matrix generator has wrong size");
    for (uint32_t x : A)
      if (x >= F.q()) throw InputError("matrix entry outside the field");
    if (!fmat_invertible(F, dim, A)) throw InputError("matrix generator is not invertible");
  }
  FMat I(dim * dim, 0);
  for (size_t i = 0; i < dim; ++i) I[i * dim + i] = 1;
  std::unordered_set<FMat, VecHash> seen{I};
  std::vector<FMat> queue{I};
  uint64_t cap = caps().closure_cap;
  for (size_t k = 0; k < queue.size(); ++k)
    for (auto& A : gens) {
      FMat B = fmat_mul(F, dim, A, queue[k]);
      if (seen.insert(B).second) {
        if (seen.size() > cap) throw CapacityError("closure_cap", cap, "matrix group closure");
        queue.push_back(std::move(B));
      }
    }
  uint64_t order = seen.size();
  uint64_t npts = 1;
  for (size_t i = 0; i < dim; ++i) npts *= F.q();
  npts -= 1;
  auto md = std::make_shared<MatrixData>();
  md->field = field;
  md->dim = dim;
  md->gens = gens;
  for (uint64_t code = 1; code <= npts; ++code) {
    std::vector<uint32_t> v(dim);
    uint64_t c = code;
    for (size_t i = 0; i < dim; ++i) {
      v[i] = uint32_t(c % F.q());
      c /= F.q();
    }
    md->points.push_back(std::move(v));
  }
  auto index_of = [&](const std::vector<uint32_t>& v) {
    uint64_t code = 0;
    for (size_t i = dim; i-- > 0;) code = code * F.q() + v[i];
    return Point(code - 1);
  };
  std::vector<Perm> perms;
  for (auto& A : gens) {
    std::vector<Point> img(npts);
    for (uint64_t k = 0; k < npts; ++k) {
      const auto& v = md->points[k];
      std::vector<uint32_t> w(dim, 0);
      for (size_t i = 0; i < dim; ++i)
        for (size_t j = 0; j < dim; ++j) w[i] = F.add(w[i], F.mul(A[i * dim + j], v[j]));
      img[k] = index_of(w);
    }
    perms.emplace_back(std::move(img));
  }
  auto G = std::shared_ptr<Group>(new Group());
  G->name_ = std::move(name);
  G->degree_ = npts;
  G->gens_ = std::move(perms);
  G->bsgs_ = std::make_unique<Bsgs>(npts, G->gens_, order);
  G->matrix_ = md;
  G->uid_ = g_next_uid++;
  return G;
}

Word Group::factor(const Perm& g) const {
  auto w = bsgs_->factor(g);
  if (!w) throw InputError("element " + g.to_cycles() + " is not in group " + name_);
  return *w;
}

bool Group::has_table() const { return order() <= caps().table_cap; }

const ElementTable& Group::table() const {
  if (!has_table()) throw CapacityError("table_cap", caps().table_cap, "element table of " + name_ + " (order " + std::to_string(order()) + ")");
  std::call_once(table_once_, [&] { table_ = std::make_unique<ElementTable>(*this); });
  return *table_;
}

const ClassInfo& Group::classes() const {
  const ElementTable& T = table();
  std::call_once(classes_once_, [&] {
    size_t n = T.size();
    std::vector<uint32_t> uf(n);
    std::iota(uf.begin(), uf.end(), 0u);
    auto find = [&](uint32_t x) {
      while (uf[x] != x) x = uf[x] = uf[uf[x]];
      return x;
    };
    for (size_t s = 0; s < gens_.size(); ++s) {
      uint32_t si = T.index(gens_[s]);
      uint32_t sinv = T.inverse(si);
      for (size_t x = 0; x < n; ++x) {
        uint32_t y = T.mul(T.mul(si, x), sinv);
        uint32_t a = find(uint32_t(x)), b = find(y);
        if (a != b) uf[std::max(a, b)] = std::min(a, b);
      }
    }
    auto info = std::make_unique<ClassInfo>();
    info->class_of.assign(n, 0);
    std::vector<int64_t> cls(n, -1);
    for (size_t x = 0; x < n; ++x) {
      uint32_t r = find(uint32_t(x));
      if (cls[r] < 0) {
        cls[r] = int64_t(info->reps.size());
        info->reps.push_back(uint32_t(x));
        info->sizes.push_back(0);
      }
      info->class_of[x] = uint32_t(cls[r]);
      info->sizes[size_t(cls[r])]++;
    }
    classes_ = std::move(info);
  });
  return *classes_;
}

bool Group::is_abelian() const {
  for (size_t i = 0; i < gens_.size(); ++i)
    for (size_t j = i + 1; j < gens_.size(); ++j)
      if (!(gens_[i] * gens_[j] == gens_[j] * gens_[i])) return false;
  return true;
}

// ---- ElementTable ----

ElementTable::ElementTable(const Group& G) {
  size_t S = G.ngens();
  uint64_t N = G.order();
  elems_.reserve(N);
  elems_.push_back(G.identity());
  index_.emplace(elems_[0], 0);
  parent_.push_back(0);
  via_.push_back(0);
  std::vector<std::vector<uint32_t>> left(S);
  for (size_t i = 0; i < elems_.size(); ++i)
    for (size_t s = 0; s < S; ++s) {
      Perm g = G.gens()[s] * elems_[i];
      auto [it, inserted] = index_.emplace(g, uint32_t(elems_.size()));
      if (inserted) {
        elems_.push_back(std::move(g));
        parent_.push_back(uint32_t(i));
        via_.push_back(uint32_t(s));
      }
      left[s].push_back(it->second);
    }
  if (elems_.size() != N) throw InternalError("element enumeration size differs from group order");
  left_.resize(S * N);
  for (size_t s = 0; s < S; ++s) std::copy(left[s].begin(), left[s].end(), left_.begin() + s * N);
  inv_.resize(N);
  orders_.resize(N);
  for (size_t i = 0; i < N; ++i) {
    inv_[i] = index(elems_[i].inverse());
    orders_[i] = elems_[i].order();
  }
}

std::optional<uint32_t> ElementTable::find(const Perm& g) const {
  auto it = index_.find(g);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

uint32_t ElementTable::index(const Perm& g) const {
  auto it = index_.find(g);
  if (it == index_.end()) throw InputError("element " + g.to_cycles() + " not in element table");
  return it->second;
}

uint32_t ElementTable::mul(size_t i, size_t j) const {
  size_t N = elems_.size();
  std::call_once(mul_once_, [&] {
    // Right multiplication by generators, then column j from column parent(j):
    // x * e_j = x * s * e_parent(j).
    size_t S = left_.size() / std::max<size_t>(N, 1);
    std::vector<std::vector<uint32_t>> right(S, std::vector<uint32_t>(N));
    std::vector<Perm> gens(S);
    for (size_t s = 0; s < S; ++s) gens[s] = elems_[left_[s * N + 0]];
    for (size_t s = 0; s < S; ++s)
      for (size_t x = 0; x < N; ++x) right[s][x] = index(elems_[x] * gens[s]);
    std::vector<uint32_t> col(N * N);
    for (size_t x = 0; x < N; ++x) col[x] = uint32_t(x);
    for (size_t jj = 1; jj < N; ++jj) {
      const uint32_t* pc = &col[size_t(parent_[jj]) * N];
      const auto& r = right[via_[jj]];
      uint32_t* cc = &col[jj * N];
      for (size_t x = 0; x < N; ++x) cc[x] = pc[r[x]];
    }
    if (N <= 65535) {
      mul16_.resize(N * N);
      for (size_t jj = 0; jj < N; ++jj)
        for (size_t x = 0; x < N; ++x) mul16_[x * N + jj] = uint16_t(col[jj * N + x]);
    } else {
      mul32_.resize(N * N);
      for (size_t jj = 0; jj < N; ++jj)
        for (size_t x = 0; x < N; ++x) mul32_[x * N + jj] = col[jj * N + x];
    }
  });
  return mul16_.empty() ? mul32_[i * N + j] : mul16_[i * N + j];
}

// ---- subgroups ----

Subgroup make_subgroup(const GroupPtr& G, std::vector<Perm> gens, std::string name) {
  for (auto& g : gens)
    if (!G->contains(g)) throw InputError("generator " + g.to_cycles() + " is not an element of " + G->name());
  if (name.empty()) name = G->name() + "_sub";
  return Subgroup{G, Group::from_perms(G->degree(), std::move(gens), name)};
}

Subgroup whole_group(const GroupPtr& G) { return Subgroup{G, G}; }

Subgroup trivial_subgroup(const GroupPtr& G) { return Subgroup{G, Group::from_perms(G->degree(), {}, G->name() + "_1")}; }

uint64_t order_of_generated(size_t degree, const std::vector<Perm>& gens) { return Bsgs(degree, gens).order(); }

// ---- cosets ----

CosetSpace::CosetSpace(GroupPtr G, Subgroup Q) : G_(std::move(G)), Q_(std::move(Q)) {
  if (Q_.group->degree() != G_->degree()) throw InputError("subgroup degree mismatch");
  for (auto& g : Q_.group->gens())
    if (!G_->contains(g)) throw InputError("subgroup generator not in group");
  uint64_t idx = G_->order() / Q_.order();
  // Large subgroups of small index: cosets are told apart by membership tests.
  by_membership_ = Q_.order() > caps().table_cap;
  if (by_membership_ && idx > caps().table_cap)
    throw CapacityError("table_cap", caps().table_cap, "subgroup elements for coset enumeration");
  if (!by_membership_) qelems_ = Q_.group->bsgs().elements();
  reps_.push_back(G_->identity());
  if (!by_membership_) index_.emplace(canonical(reps_[0]), 0);
  parent_.push_back(0);
  via_.push_back(0);
  size_t S = G_->ngens();
  std::vector<std::vector<uint32_t>> act(S);
  for (size_t i = 0; i < reps_.size(); ++i)
    for (size_t s = 0; s < S; ++s) {
      Perm g = G_->gens()[s] * reps_[i];
      uint32_t j;
      if (by_membership_) {
        j = find_by_membership(g);
        if (j == reps_.size()) {
          reps_.push_back(std::move(g));
          parent_.push_back(uint32_t(i));
          via_.push_back(uint32_t(s));
        }
      } else {
        auto [it, ins] = index_.emplace(canonical(g), uint32_t(reps_.size()));
        if (ins) {
          reps_.push_back(std::move(g));
          parent_.push_back(uint32_t(i));
          via_.push_back(uint32_t(s));
        }
        j = it->second;
      }
      act[s].push_back(j);
    }
  if (reps_.size() != idx) throw InternalError("coset count differs from the index");
  act_.resize(S * idx);
  for (size_t s = 0; s < S; ++s) std::copy(act[s].begin(), act[s].end(), act_.begin() + s * idx);
}

Perm CosetSpace::canonical(const Perm& g) const {
  const auto& gi = g.images();
  size_t n = gi.size();
  const std::vector<Point>* best = nullptr;
  std::vector<Point> cur(n), bestv;
  for (const Perm& q : qelems_) {
    for (size_t k = 0; k < n; ++k) cur[k] = gi[q[Point(k)]];
    if (!best || cur < bestv) {
      bestv = cur;
      best = &bestv;
    }
  }
  return Perm(std::move(bestv));
}

uint32_t CosetSpace::find_by_membership(const Perm& g) const {
  for (size_t j = 0; j < reps_.size(); ++j)
    if (Q_.group->contains(reps_[j].inverse() * g)) return uint32_t(j);
  return uint32_t(reps_.size());
}

uint32_t CosetSpace::index_of(const Perm& g) const {
  if (by_membership_) {
    if (!G_->contains(g)) throw InputError("element not in group");
    return find_by_membership(g);
  }
  auto it = index_.find(canonical(g));
  if (it == index_.end()) throw InputError("element not in group");
  return it->second;
}

Perm CosetSpace::gen_cocycle(size_t s, size_t i) const {
  return reps_[act_gen(s, i)].inverse() * G_->gens()[s] * reps_[i];
}

std::vector<Perm> coset_representatives(const GroupPtr& G, const Subgroup& H) {
  CosetSpace C(G, H);
  std::vector<Perm> out;
  for (size_t i = 0; i < C.size(); ++i) out.push_back(C.rep(i));
  return out;
}

// ---- Sylow ----

uint64_t p_part(uint64_t n, uint64_t p) {
  uint64_t r = 1;
  while (n % p == 0) {
    n /= p;
    r *= p;
  }
  return r;
}

uint32_t log_p(uint64_t n, uint64_t p) {
  uint32_t k = 0;
  while (n > 1 && n % p == 0) {
    n /= p;
    ++k;
  }
  return k;
}

namespace {

bool is_p_power(uint64_t n, uint64_t p) { return p_part(n, p) == n; }

Perm p_part_power(const Perm& g, uint64_t p) {
  uint64_t o = g.order();
  return g.pow(int64_t(o / p_part(o, p)));
}

}  // namespace

Subgroup sylow_subgroup(const GroupPtr& G, uint32_t p, uint64_t seed) {
  uint64_t target = p_part(G->order(), p);
  if (target == 1) return trivial_subgroup(G);
  std::mt19937_64 rng(seed);
  std::vector<Perm> pgens;
  std::string name = G->name() + "_syl" + std::to_string(p);
  if (G->has_table()) {
    const ElementTable& T = G->table();
    size_t N = T.size();
    std::vector<uint32_t> pelems{0};
    std::vector<char> inP(N, 0);
    inP[0] = 1;
    std::vector<uint32_t> pgen_idx;
    auto closure = [&]() {
      for (size_t k = 0; k < pelems.size(); ++k)
        for (uint32_t g : pgen_idx) {
          uint32_t y = T.mul(g, pelems[k]);
          if (!inP[y]) {
            inP[y] = 1;
            pelems.push_back(y);
          }
        }
    };
    {
      uint32_t x = uint32_t(rng() % N);
      Perm y = p_part_power(T.element(x), p);
      if (!y.is_identity()) {
        pgen_idx.push_back(T.index(y));
        closure();
      }
    }
    while (pelems.size() < target) {
      size_t offset = rng() % N;
      bool found = false;
      for (size_t k = 0; k < N && !found; ++k) {
        uint32_t g = uint32_t((offset + k) % N);
        if (inP[g] || !is_p_power(T.element_order(g), p)) continue;
        bool normalizes = true;
        uint32_t ginv = T.inverse(g);
        for (uint32_t x : pgen_idx)
          if (!inP[T.mul(T.mul(g, x), ginv)]) {
            normalizes = false;
            break;
          }
        if (!normalizes) continue;
        pgen_idx.push_back(g);
        closure();
        found = true;
      }
      if (!found) throw InternalError("Sylow extension failed");
    }
    for (uint32_t g : pgen_idx) pgens.push_back(T.element(g));
    return Subgroup{G, Group::from_perms(G->degree(), pgens, name)};
  }
  // Without a table: random elements of the normalizer.
  GroupPtr P = Group::from_perms(G->degree(), {}, name);
  const uint64_t budget = 1000000;
  for (uint64_t trial = 0; trial < budget && P->order() < target; ++trial) {
    Perm g = G->random_element(rng);
    bool normalizes = true;
    for (auto& x : P->gens())
      if (!P->contains(g * x * g.inverse())) {
        normalizes = false;
        break;
      }
    if (!normalizes) continue;
    Perm y = p_part_power(g, p);
    if (y.is_identity() || P->contains(y)) continue;
    auto gens = P->gens();
    gens.push_back(y);
    P = Group::from_perms(G->degree(), gens, name);
  }
  if (P->order() != target) throw CapacityError("sylow_budget", budget, "random Sylow search for " + G->name());
  return Subgroup{G, P};
}

// ---- constructors ----

GroupPtr regular_representation(const GroupPtr& G) {
  const ElementTable& T = G->table();
  size_t N = T.size();
  std::vector<Perm> gens;
  for (size_t s = 0; s < G->ngens(); ++s) {
    std::vector<Point> img(N);
    for (size_t x = 0; x < N; ++x) img[x] = T.left(s, x);
    gens.emplace_back(std::move(img));
  }
  return Group::from_perms(N, std::move(gens), G->name() + "_reg", N);
}

GroupPtr direct_product(const GroupPtr& A, const GroupPtr& B) {
  size_t a = A->degree(), b = B->degree();
  std::vector<Perm> gens;
  for (auto& g : A->gens()) {
    std::vector<Point> img(a + b);
    for (size_t i = 0; i < a; ++i) img[i] = g[Point(i)];
    for (size_t i = 0; i < b; ++i) img[a + i] = Point(a + i);
    gens.emplace_back(std::move(img));
  }
  for (auto& g : B->gens()) {
    std::vector<Point> img(a + b);
    for (size_t i = 0; i < a; ++i) img[i] = Point(i);
    for (size_t i = 0; i < b; ++i) img[a + i] = Point(a + g[Point(i)]);
    gens.emplace_back(std::move(img));
  }
  uint64_t oa = A->order(), ob = B->order();
  if (ob && oa > UINT64_MAX / ob) throw CapacityError("order_overflow", UINT64_MAX);
  return Group::from_perms(a + b, std::move(gens), A->name() + "x" + B->name(), oa * ob);
}

GroupPtr wreath_product(const GroupPtr& L, size_t t) {
  if (t == 0) throw InputError("wreath product needs t >= 1");
  size_t n = L->degree();
  std::vector<Perm> gens;
  for (auto& g : L->gens()) {
    std::vector<Point> img(n * t);
    for (size_t i = 0; i < n * t; ++i) img[i] = i < n ? g[Point(i)] : Point(i);
    gens.emplace_back(std::move(img));
  }
  if (t > 1) {
    std::vector<Point> img(n * t);
    for (size_t k = 0; k < t; ++k)
      for (size_t i = 0; i < n; ++i) img[k * n + i] = Point(((k + 1) % t) * n + i);
    gens.emplace_back(std::move(img));
  }
  uint64_t o = t;
  for (size_t k = 0; k < t; ++k) {
    if (o > UINT64_MAX / L->order()) throw CapacityError("order_overflow", UINT64_MAX);
    o *= L->order();
  }
  return Group::from_perms(n * t, std::move(gens), L->name() + "wrC" + std::to_string(t), o);
}

// ---- generator counts ----

namespace {

struct BitsetHash {
  size_t operator()(const std::vector<uint64_t>& v) const {
    uint64_t h = 1469598103934665603ull;
    for (uint64_t x : v) {
      h ^= x;
      h *= 1099511628211ull;
    }
    return size_t(h);
  }
};

}  // namespace

MinGenResult min_generators_probe(const GroupPtr& G, size_t limit, uint64_t seed) {
  MinGenResult res;
  res.limit = limit;
  uint64_t N = G->order();
  if (N == 1) {
    res.d = 0;
    return res;
  }
  std::mt19937_64 rng(seed);
  size_t deg = G->degree();
  if (G->has_table()) {
    const ElementTable& T = G->table();
    for (size_t i = 0; i < T.size(); ++i)
      if (T.element_order(i) == N) {
        res.d = 1;
        res.witness = {T.element(i)};
        return res;
      }
    if (limit < 2) return res;
    const ClassInfo& C = G->classes();
    // Randomized pairs first: for most groups a generating pair is found at once.
    for (int trial = 0; trial < 2000; ++trial) {
      const Perm& x = T.element(C.reps[rng() % C.reps.size()]);
      const Perm& y = T.element(rng() % T.size());
      if (order_of_generated(deg, {x, y}) == N) {
        res.d = 2;
        res.witness = {x, y};
        return res;
      }
    }
    // Exhaustive search over subgroups generated by k-tuples, deduplicated.
    size_t words = (T.size() + 63) / 64;
    auto closure = [&](std::vector<uint32_t> gens) {
      std::vector<uint64_t> bits(words, 0);
      std::vector<uint32_t> el{0};
      bits[0] |= 1;
      for (size_t k = 0; k < el.size(); ++k)
        for (uint32_t g : gens) {
          uint32_t y = T.mul(g, el[k]);
          if (!((bits[y >> 6] >> (y & 63)) & 1)) {
            bits[y >> 6] |= uint64_t(1) << (y & 63);
            el.push_back(y);
          }
        }
      return std::make_pair(bits, el.size());
    };
    struct Node {
      std::vector<uint32_t> gens;
      std::vector<uint64_t> bits;
    };
    std::vector<Node> level;
    std::unordered_set<std::vector<uint64_t>, BitsetHash> seen;
    for (uint32_t r : C.reps) {
      if (r == 0) continue;
      auto [bits, sz] = closure({r});
      if (seen.insert(bits).second) level.push_back({{r}, bits});
    }
    const size_t level_cap = 200000;
    for (size_t k = 2; k <= limit; ++k) {
      std::vector<Node> next;
      for (const Node& nd : level)
        for (uint32_t y = 1; y < T.size(); ++y) {
          if ((nd.bits[y >> 6] >> (y & 63)) & 1) continue;
          auto g = nd.gens;
          g.push_back(y);
          auto [bits, sz] = closure(g);
          if (sz == N) {
            res.d = k;
            for (uint32_t e : g) res.witness.push_back(T.element(e));
            return res;
          }
          if (seen.insert(bits).second) {
            next.push_back({g, bits});
            if (next.size() > level_cap) return res;
          }
        }
      level.swap(next);
    }
    return res;
  }
  // No table: a non-commuting pair rules out d = 1; random pairs certify d = 2.
  bool abelian = G->is_abelian();
  if (abelian) return res;
  if (limit < 2) return res;
  for (int trial = 0; trial < 10000; ++trial) {
    Perm x = G->random_element(rng), y = G->random_element(rng);
    if (order_of_generated(deg, {x, y}) == N) {
      res.d = 2;
      res.witness = {x, y};
      return res;
    }
  }
  return res;
}

size_t irreducible_count(const GroupPtr& G, uint32_t p) {
  const ElementTable& T = G->table();
  const ClassInfo& C = G->classes();
  size_t nc = C.reps.size();
  std::vector<int64_t> image(nc, -1);
  for (size_t c = 0; c < nc; ++c) {
    if (T.element_order(C.reps[c]) % p == 0) continue;
    image[c] = C.class_of[T.index(T.element(C.reps[c]).pow(p))];
  }
  std::vector<char> seen(nc, 0);
  size_t orbits = 0;
  for (size_t c = 0; c < nc; ++c) {
    if (image[c] < 0 || seen[c]) continue;
    ++orbits;
    for (size_t x = c; !seen[x]; x = size_t(image[x])) seen[x] = 1;
  }
  return orbits;
}

GroupPtr normal_closure(const GroupPtr& G, const std::vector<Perm>& elems) {
  std::vector<Perm> gens;
  for (auto& e : elems)
    if (!e.is_identity()) gens.push_back(e);
  GroupPtr N = Group::from_perms(G->degree(), gens, G->name() + "_ncl");
  for (size_t k = 0; k < gens.size(); ++k)
    for (auto& g : G->gens()) {
      Perm c = g * gens[k] * g.inverse();
      if (!N->contains(c)) {
        gens.push_back(c);
        N = Group::from_perms(G->degree(), gens, G->name() + "_ncl");
      }
    }
  return N;
}

GroupPtr derived_subgroup(const GroupPtr& G) {
  std::vector<Perm> comms;
  for (auto& a : G->gens())
    for (auto& b : G->gens()) comms.push_back(a.inverse() * b.inverse() * a * b);
  return normal_closure(G, comms);
}

bool is_perfect(const GroupPtr& G) { return derived_subgroup(G)->order() == G->order(); }

std::vector<Perm> center(const GroupPtr& G) {
  const ElementTable& T = G->table();
  std::vector<Perm> z;
  for (size_t i = 0; i < T.size(); ++i) {
    bool central = true;
    for (auto& g : G->gens())
      if (!(g * T.element(i) == T.element(i) * g)) {
        central = false;
        break;
      }
    if (central) z.push_back(T.element(i));
  }
  return z;
}

bool is_normal(const GroupPtr& G, const GroupPtr& N) {
  for (auto& g : G->gens())
    for (auto& n : N->gens())
      if (!N->contains(g * n * g.inverse())) return false;
  return true;
}

bool is_simple(const GroupPtr& G) {
  if (G->order() == 1) return false;
  const ElementTable& T = G->table();
  const ClassInfo& C = G->classes();
  for (uint32_t r : C.reps) {
    if (r == 0) continue;
    if (normal_closure(G, {T.element(r)})->order() != G->order()) return false;
  }
  return true;
}

Quotient quotient_group(const GroupPtr& G, const Subgroup& N, std::string name) {
  if (N.parent != G) throw InputError("subgroup is not of this group");
  if (!is_normal(G, N.group)) throw InputError("subgroup is not normal");
  CosetSpace C(G, N);
  Quotient Q;
  for (size_t s = 0; s < G->ngens(); ++s) {
    std::vector<Point> img(C.size());
    for (size_t i = 0; i < C.size(); ++i) img[i] = Point(C.act_gen(s, i));
    Q.gen_images.emplace_back(std::move(img));
  }
  if (name.empty()) name = G->name() + "/" + N.group->name();
  Q.group = Group::from_perms(C.size(), Q.gen_images, name, G->order() / N.order());
  return Q;
}

}  // namespace cohomkit::groups
