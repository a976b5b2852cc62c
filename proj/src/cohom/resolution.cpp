#include "cohomkit/cohom/resolution.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <random>

#include "cohomkit/config.hpp"
#include "cohomkit/errors.hpp"

namespace cohomkit::cohom {

using groups::Perm;

std::vector<size_t> Resolution::ranks() const {
  std::vector<size_t> r;
  for (auto& t : terms) r.push_back(t.rank());
  return r;
}

FpVector Resolution::act(size_t i, size_t s, const FpVector& x) const {
  const ResolutionTerm& T = terms[i];
  FpVector y(T.dim, 0);
  for (size_t j = 0; j < T.rank(); ++j) {
    const auto& C = *cosets[T.summands[j]];
    size_t o = T.offsets[j];
    for (size_t k = 0; k < C.size(); ++k) y[o + C.act_gen(s, k)] = x[o + k];
  }
  return y;
}

const BoundaryImage& Resolution::boundary_image(size_t k) const {
  if (k == 0 || k > length()) throw InputError("boundary image needs 1 <= k <= length");
  std::lock_guard<std::mutex> lock(image_cache_->mu);
  auto& slot = image_cache_->images[k];
  if (!slot) slot = std::make_unique<BoundaryImage>(*this, k);
  return *slot;
}

BoundaryImage::BoundaryImage(const Resolution& R, size_t k) : p_(R.p), n_(R.terms[k].dim) {
  const ResolutionTerm& N = R.terms[k];
  size_t n1 = R.terms[k - 1].dim;
  double bytes = double(n1) * double(n_) / (p_ == 2 ? 8.0 : 1.0);
  if (bytes > double(caps().memory_budget))
    throw CapacityError("memory_budget", caps().memory_budget,
                        "boundary image " + std::to_string(n1) + " x " + std::to_string(n_));
  // Transposed boundary: column c is the image of basis coset c, generated
  // along the coset tree depth first.
  if (p_ == 2)
    packed_ = ffla::Gf2Matrix(n1, n_);
  else
    rows_ = FpMatrix(p_, n1, n_);
  for (size_t l = 0; l < N.rank(); ++l) {
    const auto& C = *R.cosets[N.summands[l]];
    std::vector<std::vector<uint32_t>> children(C.size());
    for (size_t c = 1; c < C.size(); ++c) children[C.parent(c)].push_back(uint32_t(c));
    std::vector<std::pair<uint32_t, FpVector>> stack;
    stack.emplace_back(0, FpVector(R.generator_image(k, l), R.generator_image(k, l) + n1));
    while (!stack.empty()) {
      auto [c, v] = std::move(stack.back());
      stack.pop_back();
      size_t col = N.offsets[l] + c;
      for (size_t r = 0; r < n1; ++r)
        if (v[r]) {
          if (p_ == 2)
            packed_.set(r, col, true);
          else
            rows_(r, col) = v[r];
        }
      for (uint32_t ch : children[c]) stack.emplace_back(ch, R.act(k - 1, C.via(ch), v));
    }
  }
  if (p_ == 2) {
    pivots_ = packed_.rref_in_place(false);
    packed_.truncate_rows(pivots_.size());
  } else {
    auto rr = ffla::rref(rows_);
    pivots_ = std::move(rr.pivots);
    rows_ = std::move(rr.R);
    rows_.data.resize(pivots_.size() * n_);
    rows_.rows = pivots_.size();
  }
  if (pivots_.size() != R.kernel_dims[k - 1]) throw InternalError("resolution not exact at degree " + std::to_string(k - 1));
  std::vector<bool> is_piv(n_, false);
  for (size_t c : pivots_) is_piv[c] = true;
  for (size_t c = 0; c < n_; ++c)
    if (!is_piv[c]) free_.push_back(c);
}

FpVector BoundaryImage::residual(FpVector v) const {
  FpVector out(free_.size());
  if (p_ == 2) {
    std::vector<uint64_t> w(packed_.words(), 0);
    for (size_t c = 0; c < n_; ++c)
      if (v[c]) w[c >> 6] |= uint64_t(1) << (c & 63);
    for (size_t r = 0; r < pivots_.size(); ++r)
      if ((w[pivots_[r] >> 6] >> (pivots_[r] & 63)) & 1) {
        const uint64_t* pr = packed_.row(r);
        for (size_t j = 0; j < w.size(); ++j) w[j] ^= pr[j];
      }
    for (size_t i = 0; i < free_.size(); ++i) out[i] = (w[free_[i] >> 6] >> (free_[i] & 63)) & 1;
    return out;
  }
  const auto& F = ffla::PrimeField::get(p_);
  for (size_t r = 0; r < pivots_.size(); ++r)
    if (uint8_t c = v[pivots_[r]]) F.axpy(v.data(), rows_.row(r), F.neg(c), n_);
  for (size_t i = 0; i < free_.size(); ++i) out[i] = v[free_[i]];
  return out;
}

std::vector<Subgroup> pprime_subgroups(const GroupPtr& G, uint32_t p, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::map<uint64_t, std::vector<Perm>, std::greater<>> by_order;
  auto pprime_element = [&]() {
    Perm x = G->random_element(rng);
    uint64_t o = x.order();
    return x.pow(int64_t(groups::p_part(o, p)));
  };
  if (G->order() % p != 0 || G->order() == 1) {
    by_order[G->order()] = G->gens();
  } else {
    for (int start = 0; start < 8; ++start) {
      std::vector<Perm> gens;
      uint64_t ord = 1;
      for (int t = 0; t < 40; ++t) {
        Perm z = pprime_element();
        if (z.is_identity()) continue;
        uint64_t oz = z.order();
        if (!by_order.count(oz)) by_order[oz] = {z};
        auto trial = gens;
        trial.push_back(z);
        uint64_t o = groups::order_of_generated(G->degree(), trial);
        if (o % p != 0 && o > ord) {
          gens = std::move(trial);
          ord = o;
          if (!by_order.count(ord)) by_order[ord] = gens;
        }
      }
    }
  }
  std::vector<Subgroup> out;
  for (auto& [ord, gens] : by_order) {
    if (out.size() >= 8) break;
    out.push_back(groups::make_subgroup(G, gens, "Q" + std::to_string(ord)));
  }
  if (out.empty() || out.back().order() != 1) out.push_back(groups::trivial_subgroup(G));
  return out;
}

namespace {

struct Builder {
  Resolution& R;
  uint64_t seed;
  // Q-orbits on the cosets of subgroup j: orbit id per coset.
  std::map<std::pair<uint32_t, uint32_t>, std::vector<uint32_t>> orbit_cache;

  const std::vector<uint32_t>& orbits(uint32_t q, uint32_t j) {
    auto key = std::make_pair(q, j);
    auto it = orbit_cache.find(key);
    if (it != orbit_cache.end()) return it->second;
    const auto& C = *R.cosets[j];
    size_t n = C.size();
    std::vector<uint32_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<uint32_t(uint32_t)> find = [&](uint32_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (const Perm& g : R.subgroups[q].group->gens())
      for (size_t k = 0; k < n; ++k) {
        uint32_t a = find(uint32_t(k)), b = find(C.index_of(g * C.rep(k)));
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
    std::vector<uint32_t> id(n), root_id(n, UINT32_MAX);
    uint32_t next = 0;
    for (size_t k = 0; k < n; ++k) {
      uint32_t r = find(uint32_t(k));
      if (root_id[r] == UINT32_MAX) root_id[r] = next++;
      id[k] = root_id[r];
    }
    return orbit_cache.emplace(key, std::move(id)).first->second;
  }

  void add_term(std::vector<uint32_t> summands) {
    ResolutionTerm T;
    T.summands = std::move(summands);
    for (uint32_t q : T.summands) {
      T.offsets.push_back(T.dim);
      T.dim += R.cosets[q]->size();
    }
    R.terms.push_back(std::move(T));
  }

  // Full boundary on P_i from the generator images, with exactness and
  // equivariance verified on the whole matrix.
  void materialize(size_t i) {
    if (R.boundary_t[i].rows == R.terms[i].dim) return;
    const ResolutionTerm& N = R.terms[i];
    const ResolutionTerm& Pm = R.terms[i - 1];
    if (double(N.dim) * double(Pm.dim) > double(caps().memory_budget))
      throw CapacityError("memory_budget", caps().memory_budget,
                          "boundary matrix " + std::to_string(N.dim) + " x " + std::to_string(Pm.dim));
    FpMatrix Dn(R.p, N.dim, Pm.dim);
    for (size_t l = 0; l < N.rank(); ++l) {
      const auto& C = *R.cosets[N.summands[l]];
      std::vector<FpVector> cols(C.size());
      cols[0].assign(R.generator_image(i, l), R.generator_image(i, l) + Pm.dim);
      for (size_t k = 1; k < C.size(); ++k) cols[k] = R.act(i - 1, C.via(k), cols[C.parent(k)]);
      for (size_t k = 0; k < C.size(); ++k)
        std::copy(cols[k].begin(), cols[k].end(), Dn.data.begin() + (N.offsets[l] + k) * Pm.dim);
    }
    if (ffla::rank(Dn) != R.kernel_dims[i - 1]) throw InternalError("resolution not exact at degree " + std::to_string(i - 1));
    if (!ffla::multiply(Dn, R.boundary_t[i - 1]).is_zero()) throw InternalError("boundary maps do not compose to zero");
    for (size_t s = 0; s < R.group->ngens(); ++s)
      for (size_t l = 0; l < N.rank(); ++l) {
        const auto& C = *R.cosets[N.summands[l]];
        for (size_t k = 0; k < C.size(); ++k) {
          FpVector img(Dn.data.begin() + (N.offsets[l] + k) * Pm.dim, Dn.data.begin() + (N.offsets[l] + k + 1) * Pm.dim);
          size_t tgt = N.offsets[l] + C.act_gen(s, k);
          FpVector lhs(Dn.data.begin() + tgt * Pm.dim, Dn.data.begin() + (tgt + 1) * Pm.dim);
          if (lhs != R.act(i - 1, s, img)) throw InternalError("boundary map is not a module map");
        }
      }
    R.boundary_t[i] = std::move(Dn);
  }

  // Builds P_{i+1} from fixed vectors of the kernel of the boundary on P_i.
  // Exactness at P_i: chosen vectors lie in the kernel and their G-span has the
  // kernel's dimension.
  void extend() {
    size_t i = R.terms.size() - 1;
    if (i > 0) materialize(i);
    const ResolutionTerm& P = R.terms[i];
    const FpMatrix& D = R.boundary_t[i];
    // Exactness at P_{i-1} gives rank D = kernel_dims[i-1].
    size_t kdim = P.dim - (i == 0 ? 1 : R.kernel_dims[i - 1]);
    uint32_t p = R.p;
    const auto& F = ffla::PrimeField::get(p);
    ffla::SpanTracker S(p, P.dim);
    std::vector<std::pair<uint32_t, FpVector>> chosen;
    std::mt19937_64 rng(seed + 7919 * i);
    auto spin_in = [&](FpVector v) {
      std::vector<FpVector> queue{std::move(v)};
      S.add(queue[0]);
      for (size_t k = 0; k < queue.size() && S.dim() < kdim; ++k)
        for (size_t s = 0; s < R.group->ngens(); ++s) {
          FpVector w = R.act(i, s, queue[k]);
          if (S.add(w)) queue.push_back(std::move(w));
        }
    };
    for (uint32_t q = 0; q < R.subgroups.size() && S.dim() < kdim; ++q) {
      // Basis of P_i^Q from orbit sums, then its intersection with the kernel.
      std::vector<std::vector<size_t>> orbit_members;
      for (size_t j = 0; j < P.rank(); ++j) {
        const auto& ids = orbits(q, P.summands[j]);
        size_t base = orbit_members.size();
        uint32_t nid = ids.empty() ? 0 : *std::max_element(ids.begin(), ids.end()) + 1;
        orbit_members.resize(base + nid);
        for (size_t k = 0; k < ids.size(); ++k) orbit_members[base + ids[k]].push_back(P.offsets[j] + k);
      }
      FpMatrix W(p, orbit_members.size(), D.cols);
      for (size_t o = 0; o < orbit_members.size(); ++o)
        for (size_t c : orbit_members[o]) F.axpy(W.data.data() + o * D.cols, D.data.data() + c * D.cols, 1, D.cols);
      FpMatrix coeffs = ffla::left_nullspace(W);
      std::vector<FpVector> basis;
      for (size_t r = 0; r < coeffs.rows; ++r) {
        FpVector v(P.dim, 0);
        for (size_t o = 0; o < orbit_members.size(); ++o)
          if (uint8_t c = coeffs(r, o))
            for (size_t x : orbit_members[o]) v[x] = c;
        basis.push_back(std::move(v));
      }
      // Random combinations of the fixed kernel vectors generate large spans.
      // Basis vectors before the cursor are known to lie in the span.
      size_t cursor = 0;
      for (uint32_t miss = 0; S.dim() < kdim && miss < caps().retry_budget;) {
        while (cursor < basis.size() && S.contains(basis[cursor])) ++cursor;
        if (cursor == basis.size()) break;
        FpVector v(P.dim, 0);
        for (auto& b : basis) F.axpy(v.data(), b.data(), uint8_t(rng() % p), P.dim);
        if (S.contains(v)) {
          ++miss;
          continue;
        }
        chosen.emplace_back(q, v);
        spin_in(std::move(v));
      }
    }
    if (S.dim() != kdim) throw InternalError("kernel not generated by fixed vectors of the chosen subgroups");
    FpMatrix img(p, chosen.size(), P.dim);
    for (size_t l = 0; l < chosen.size(); ++l) {
      const FpVector& v = chosen[l].second;
      FpVector dv = ffla::vecmat(v, D);
      if (std::any_of(dv.begin(), dv.end(), [](uint8_t x) { return x != 0; }))
        throw InternalError("resolution generator outside the kernel");
      std::copy(v.begin(), v.end(), img.data.begin() + l * P.dim);
    }
    std::vector<uint32_t> summands;
    for (auto& c : chosen) summands.push_back(c.first);
    add_term(summands);
    R.images.push_back(std::move(img));
    R.boundary_t.emplace_back(p, 0, P.dim);
    R.kernel_dims.push_back(kdim);
  }
};

}  // namespace

std::shared_ptr<const Resolution> build_resolution(const GroupPtr& G, uint32_t p, size_t k, uint64_t seed,
                                                   ResolutionOptions opts) {
  if (!ffla::is_prime(p)) throw InputError("p must be prime");
  if (k > 5) throw InputError("resolution length above 5 is not supported");
  static std::mutex mu;
  static std::map<std::tuple<uint64_t, uint32_t, bool, uint64_t>, std::shared_ptr<const Resolution>> cache;
  auto key = std::make_tuple(G->uid(), p, opts.free_only, seed);
  std::shared_ptr<Resolution> R;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) {
      if (it->second->length() >= k) return it->second;
      R = std::make_shared<Resolution>(*it->second);
    }
  }
  Builder B{*(R ? R : (R = std::make_shared<Resolution>())), seed, {}};
  if (R->terms.empty()) {
    R->group = G;
    R->p = p;
    R->free_only = opts.free_only;
    R->subgroups = opts.free_only ? std::vector<Subgroup>{groups::trivial_subgroup(G)} : pprime_subgroups(G, p, seed);
    for (auto& Q : R->subgroups) {
      if (G->order() / Q.order() > caps().memory_budget / 8)
        throw CapacityError("memory_budget", caps().memory_budget,
                            "coset space of index " + std::to_string(G->order() / Q.order()));
      R->cosets.push_back(std::make_shared<groups::CosetSpace>(G, Q));
    }
    B.add_term({0});
    FpMatrix aug(p, R->terms[0].dim, 1);
    for (size_t c = 0; c < aug.rows; ++c) aug(c, 0) = 1;
    R->boundary_t.push_back(std::move(aug));
    R->images.emplace_back(p, 0, 0);
  }
  while (R->length() < k) {
    B.extend();
  }
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[key];
  if (!slot || slot->length() < R->length()) slot = R;
  return slot;
}

}  // namespace cohomkit::cohom
