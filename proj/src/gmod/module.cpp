#include "cohomkit/gmod/module.hpp"

#include <mutex>
#include <unordered_map>

#include "cohomkit/config.hpp"
#include "cohomkit/errors.hpp"

namespace cohomkit::gmod {

using ffla::PrimeField;

struct GModule::Cache {
  std::mutex mu;
  // SLP node -> (matrix, inverse matrix)
  std::unordered_map<int32_t, std::pair<FpMatrix, FpMatrix>> nodes;
  std::once_flag table_once;
  std::vector<FpMatrix> table;
};

namespace {

FpMatrix perm_matrix(uint32_t p, const Perm& g) {
  FpMatrix A(p, g.degree(), g.degree());
  for (size_t i = 0; i < g.degree(); ++i) A(g[groups::Point(i)], i) = 1;
  return A;
}

}  // namespace

GModule::GModule(GroupPtr G, uint32_t p, std::vector<FpMatrix> gens, std::string label, std::optional<size_t> dim)
    : G_(std::move(G)), p_(p), gens_(std::move(gens)), label_(std::move(label)), cache_(std::make_shared<Cache>()) {
  if (gens_.size() != G_->ngens())
    throw InputError("module has " + std::to_string(gens_.size()) + " generator matrices for " +
                     std::to_string(G_->ngens()) + " group generators");
  if (gens_.empty() && !dim) throw InputError("module dimension unknown for a group without generators");
  dim_ = gens_.empty() ? *dim : gens_[0].rows;
  if (dim && *dim != dim_) throw InputError("module dimension mismatch");
  for (auto& A : gens_) {
    if (A.p != p_) throw InputError("module matrix over the wrong field");
    if (A.rows != dim_ || A.cols != dim_) throw InputError("module matrices must be square of equal size");
    gens_t_.push_back(ffla::transpose(A));
  }
}

GModule GModule::from_permutations(GroupPtr G, uint32_t p, const std::vector<Perm>& perms, size_t degree,
                                   std::string label) {
  std::vector<FpMatrix> mats;
  for (auto& g : perms) mats.push_back(perm_matrix(p, g));
  GModule M(std::move(G), p, std::move(mats), std::move(label), degree);
  M.perms_ = perms;
  return M;
}

FpMatrix GModule::word_matrix(const groups::Word& w) const {
  const groups::Slp& slp = G_->bsgs().slp();
  std::lock_guard<std::mutex> lock(cache_->mu);
  auto& nodes = cache_->nodes;
  // Iterative post-order evaluation of the SLP DAG.
  auto eval = [&](int32_t root) -> const std::pair<FpMatrix, FpMatrix>& {
    std::vector<int32_t> stack{root};
    while (!stack.empty()) {
      int32_t v = stack.back();
      if (nodes.count(v)) {
        stack.pop_back();
        continue;
      }
      const auto& nd = slp.node(v);
      if (nd.kind == groups::Slp::Kind::Gen) {
        auto inv = ffla::inverse(gens_[size_t(nd.a)]);
        if (!inv) throw InputError("module generator matrix is not invertible");
        nodes.emplace(v, std::make_pair(gens_[size_t(nd.a)], *inv));
        stack.pop_back();
      } else if (nd.kind == groups::Slp::Kind::Inv) {
        if (!nodes.count(nd.a)) {
          stack.push_back(nd.a);
          continue;
        }
        auto& a = nodes.at(nd.a);
        nodes.emplace(v, std::make_pair(a.second, a.first));
        stack.pop_back();
      } else {
        bool ready = true;
        if (!nodes.count(nd.a)) {
          stack.push_back(nd.a);
          ready = false;
        }
        if (!nodes.count(nd.b)) {
          stack.push_back(nd.b);
          ready = false;
        }
        if (!ready) continue;
        auto& a = nodes.at(nd.a);
        auto& b = nodes.at(nd.b);
        nodes.emplace(v, std::make_pair(ffla::multiply(a.first, b.first), ffla::multiply(b.second, a.second)));
        stack.pop_back();
      }
    }
    return nodes.at(root);
  };
  FpMatrix R = FpMatrix::identity(p_, dim_);
  for (int32_t node : w) R = ffla::multiply(R, eval(node).first);
  return R;
}

FpMatrix GModule::element_matrix(const Perm& g) const {
  if (!perms_.empty()) {
    auto w = G_->factor(g);
    Perm img(dim_);
    const auto& slp = G_->bsgs().slp();
    for (int32_t node : w) img = img * slp.evaluate(node, perms_);
    return perm_matrix(p_, img);
  }
  return word_matrix(G_->factor(g));
}

const std::vector<FpMatrix>& GModule::table_matrices() const {
  const auto& T = G_->table();
  std::call_once(cache_->table_once, [&] {
    uint64_t entries = uint64_t(T.size()) * dim_ * dim_;
    if (entries > caps().memory_budget) throw CapacityError("memory_budget", caps().memory_budget, "element matrices of a module");
    auto& tab = cache_->table;
    tab.resize(T.size());
    tab[0] = FpMatrix::identity(p_, dim_);
    for (size_t i = 1; i < T.size(); ++i) tab[i] = ffla::multiply(gens_[T.via(i)], tab[T.parent(i)]);
  });
  return cache_->table;
}

bool GModule::is_trivial() const {
  if (dim_ != 1) return false;
  for (auto& A : gens_)
    if (A(0, 0) != 1) return false;
  return true;
}

void GModule::verify_action(uint64_t seed) const {
  for (auto& A : gens_)
    if (ffla::rank(A) != dim_) throw InternalError("module generator matrix is singular");
  if (G_->has_table() && uint64_t(G_->order()) * dim_ * dim_ <= caps().memory_budget) {
    const auto& T = G_->table();
    const auto& mats = table_matrices();
    for (size_t s = 0; s < ngens(); ++s)
      for (size_t i = 0; i < T.size(); ++i)
        if (!(mats[T.left(s, i)] == ffla::multiply(gens_[s], mats[i])))
          throw InternalError("module action is not a homomorphism");
    return;
  }
  std::mt19937_64 rng(seed);
  for (int t = 0; t < 500; ++t) {
    Perm g = G_->random_element(rng), h = G_->random_element(rng);
    if (!(element_matrix(g * h) == ffla::multiply(element_matrix(g), element_matrix(h))))
      throw InternalError("module action is not a homomorphism");
  }
}

void check_compatible(const GModule& M, const GModule& N) {
  if (M.group() != N.group()) throw InputError("modules are over different groups");
  if (M.p() != N.p()) throw InputError("modules are over different primes");
}

GModule trivial_module(const GroupPtr& G, uint32_t p) {
  std::vector<FpMatrix> gens(G->ngens(), FpMatrix::identity(p, 1));
  GModule M(G, p, std::move(gens), "trivial", 1);
  return M;
}

GModule regular_module(const GroupPtr& G, uint32_t p) {
  const auto& T = G->table();
  std::vector<Perm> perms;
  for (size_t s = 0; s < G->ngens(); ++s) {
    std::vector<groups::Point> img(T.size());
    for (size_t x = 0; x < T.size(); ++x) img[x] = T.left(s, x);
    perms.emplace_back(std::move(img));
  }
  return GModule::from_permutations(G, p, perms, T.size(), "regular");
}

GModule permutation_module(const GroupPtr& G, uint32_t p) {
  return GModule::from_permutations(G, p, G->gens(), G->degree(), "points");
}

GModule coset_module(const GroupPtr& G, const Subgroup& Q, uint32_t p) {
  groups::CosetSpace C(G, Q);
  std::vector<Perm> perms;
  for (size_t s = 0; s < G->ngens(); ++s) {
    std::vector<groups::Point> img(C.size());
    for (size_t i = 0; i < C.size(); ++i) img[i] = C.act_gen(s, i);
    perms.emplace_back(std::move(img));
  }
  return GModule::from_permutations(G, p, perms, C.size(), "cosets");
}

GModule natural_module(const GroupPtr& G) {
  const groups::MatrixData* md = G->matrix();
  if (!md) throw InputError("natural module needs a matrix group");
  const auto& F = *md->field;
  size_t n = md->dim, e = F.e();
  std::vector<FpMatrix> gens;
  for (auto& A : md->gens) {
    FpMatrix B(F.p(), n * e, n * e);
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) {
        FpMatrix blk = F.mult_matrix(A[i * n + j]);
        for (size_t a = 0; a < e; ++a)
          for (size_t b = 0; b < e; ++b) B(i * e + a, j * e + b) = blk(a, b);
      }
    gens.push_back(std::move(B));
  }
  return GModule(G, F.p(), std::move(gens), "natural", n * e);
}

GModule dual(const GModule& M) {
  std::vector<FpMatrix> gens;
  for (auto& A : M.gens()) {
    auto inv = ffla::inverse(A);
    if (!inv) throw InputError("module generator matrix is not invertible");
    gens.push_back(ffla::transpose(*inv));
  }
  return GModule(M.group(), M.p(), std::move(gens), "dual(" + M.label() + ")", M.dim());
}

GModule tensor(const GModule& M, const GModule& N) {
  check_compatible(M, N);
  std::vector<FpMatrix> gens;
  for (size_t s = 0; s < M.ngens(); ++s) gens.push_back(ffla::kron(M.gen(s), N.gen(s)));
  return GModule(M.group(), M.p(), std::move(gens), M.label() + "*" + N.label(), M.dim() * N.dim());
}

GModule wedge2(const GModule& M) {
  size_t n = M.dim();
  const PrimeField& F = PrimeField::get(M.p());
  std::vector<std::pair<size_t, size_t>> basis;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j) basis.emplace_back(i, j);
  std::vector<FpMatrix> gens;
  for (auto& A : M.gens()) {
    FpMatrix W(M.p(), basis.size(), basis.size());
    for (size_t c = 0; c < basis.size(); ++c) {
      auto [i, j] = basis[c];
      for (size_t r = 0; r < basis.size(); ++r) {
        auto [k, l] = basis[r];
        W(r, c) = F.sub(F.mul(A(k, i), A(l, j)), F.mul(A(l, i), A(k, j)));
      }
    }
    gens.push_back(std::move(W));
  }
  return GModule(M.group(), M.p(), std::move(gens), "wedge2(" + M.label() + ")", basis.size());
}

GModule direct_sum(const GModule& M, const GModule& N) {
  check_compatible(M, N);
  std::vector<FpMatrix> gens;
  for (size_t s = 0; s < M.ngens(); ++s) gens.push_back(ffla::block_diag(M.gen(s), N.gen(s)));
  return GModule(M.group(), M.p(), std::move(gens), M.label() + "+" + N.label(), M.dim() + N.dim());
}

GModule restrict(const GModule& M, const Subgroup& H) {
  if (H.parent != M.group() && H.group != M.group()) throw InputError("subgroup is not a subgroup of the module's group");
  if (H.group == M.group()) return M;
  std::vector<FpMatrix> gens;
  for (auto& h : H.group->gens()) gens.push_back(M.element_matrix(h));
  return GModule(H.group, M.p(), std::move(gens), M.label() + "|" + H.group->name(), M.dim());
}

GModule induce(const GModule& V, const Subgroup& H) {
  if (V.group() != H.group) throw InputError("module is not over the subgroup");
  const GroupPtr& G = H.parent;
  groups::CosetSpace C(G, H);
  size_t k = C.size(), m = V.dim();
  std::vector<FpMatrix> gens;
  for (size_t s = 0; s < G->ngens(); ++s) {
    FpMatrix A(V.p(), k * m, k * m);
    for (size_t i = 0; i < k; ++i) {
      size_t j = C.act_gen(s, i);
      FpMatrix h = V.element_matrix(C.gen_cocycle(s, i));
      for (size_t a = 0; a < m; ++a)
        for (size_t b = 0; b < m; ++b) A(j * m + a, i * m + b) = h(a, b);
    }
    gens.push_back(std::move(A));
  }
  return GModule(G, V.p(), std::move(gens), "ind(" + V.label() + ")", k * m);
}

GModule inflate(const GroupPtr& G, const GModule& V, const std::vector<Perm>& images) {
  if (images.size() != G->ngens()) throw InputError("inflation needs one image per generator");
  std::vector<FpMatrix> gens;
  for (auto& g : images) gens.push_back(V.element_matrix(g));
  return GModule(G, V.p(), std::move(gens), "inf(" + V.label() + ")", V.dim());
}

GModule outer_tensor(const GroupPtr& AxB, const GModule& MA, const GModule& MB) {
  if (MA.p() != MB.p()) throw InputError("outer tensor over different primes");
  if (AxB->ngens() != MA.ngens() + MB.ngens()) throw InputError("group is not the direct product of the factors");
  std::vector<FpMatrix> gens;
  FpMatrix IA = FpMatrix::identity(MA.p(), MA.dim()), IB = FpMatrix::identity(MB.p(), MB.dim());
  for (auto& A : MA.gens()) gens.push_back(ffla::kron(A, IB));
  for (auto& B : MB.gens()) gens.push_back(ffla::kron(IA, B));
  return GModule(AxB, MA.p(), std::move(gens), MA.label() + "#" + MB.label(), MA.dim() * MB.dim());
}

FpMatrix fixed_points(const GModule& M) { return fixed_points(M, groups::whole_group(M.group())); }

FpMatrix fixed_points(const GModule& M, const Subgroup& H) {
  size_t n = M.dim();
  GModule R = restrict(M, H);
  FpMatrix stacked(M.p(), 0, n);
  FpMatrix I = FpMatrix::identity(M.p(), n);
  for (auto& A : R.gens()) stacked = ffla::vstack(stacked, ffla::sub(A, I));
  return ffla::nullspace(stacked);
}

FpMatrix commutator_submodule(const GModule& M, const Subgroup& H) {
  size_t n = M.dim();
  GModule R = restrict(M, H);
  FpMatrix stacked(M.p(), 0, n);
  FpMatrix I = FpMatrix::identity(M.p(), n);
  for (auto& A : R.gens()) stacked = ffla::vstack(stacked, ffla::transpose(ffla::sub(A, I)));
  auto r = ffla::rref(stacked);
  FpMatrix B(M.p(), r.rank, n);
  std::copy(r.R.data.begin(), r.R.data.begin() + r.rank * n, B.data.begin());
  return B;
}

namespace {

FpMatrix spin_impl(const GModule& M, const FpMatrix& V, bool transposed) {
  size_t n = M.dim();
  ffla::Echelon E(M.p(), n);
  std::vector<FpVector> queue;
  for (size_t i = 0; i < V.rows; ++i) {
    FpVector v = V.row_vector(i);
    if (E.add(v)) queue.push_back(v);
  }
  for (size_t k = 0; k < queue.size() && E.dim() < n; ++k)
    for (size_t s = 0; s < M.ngens() && E.dim() < n; ++s) {
      FpVector w = ffla::vecmat(queue[k], transposed ? M.gen(s) : M.gen_t(s));
      if (E.add(w)) queue.push_back(std::move(w));
    }
  return E.basis();
}

}  // namespace

FpMatrix spin(const GModule& M, const FpMatrix& V) { return spin_impl(M, V, false); }
FpMatrix spin_dual(const GModule& M, const FpMatrix& W) { return spin_impl(M, W, true); }

Subquotient split(const GModule& M, const FpMatrix& U) {
  size_t n = M.dim();
  const PrimeField& F = PrimeField::get(M.p());
  auto r = ffla::rref(U);
  size_t k = r.rank;
  std::vector<bool> is_piv(n, false);
  for (size_t c : r.pivots) is_piv[c] = true;
  std::vector<size_t> nonpiv;
  for (size_t c = 0; c < n; ++c)
    if (!is_piv[c]) nonpiv.push_back(c);
  std::vector<FpMatrix> sub, quo;
  for (size_t s = 0; s < M.ngens(); ++s) {
    FpMatrix S(M.p(), k, k), Q(M.p(), n - k, n - k);
    for (size_t j = 0; j < k; ++j) {
      FpVector img = ffla::vecmat(r.R.row_vector(j), M.gen_t(s));
      // Coordinates in an RREF basis are the entries at pivot columns.
      for (size_t i = 0; i < k; ++i) S(i, j) = img[r.pivots[i]];
      FpVector chk(n, 0);
      for (size_t i = 0; i < k; ++i) F.axpy(chk.data(), r.R.row(i), S(i, j), n);
      if (chk != img) throw InputError("subspace is not invariant");
    }
    for (size_t m = 0; m < nonpiv.size(); ++m) {
      FpVector img = M.gen_t(s).row_vector(nonpiv[m]);
      for (size_t i = 0; i < k; ++i)
        if (img[r.pivots[i]]) F.axpy(img.data(), r.R.row(i), F.neg(img[r.pivots[i]]), n);
      for (size_t l = 0; l < nonpiv.size(); ++l) Q(l, m) = img[nonpiv[l]];
    }
    sub.push_back(std::move(S));
    quo.push_back(std::move(Q));
  }
  return {GModule(M.group(), M.p(), std::move(sub), M.label() + "_sub", k),
          GModule(M.group(), M.p(), std::move(quo), M.label() + "_quo", n - k)};
}

}  // namespace cohomkit::gmod
