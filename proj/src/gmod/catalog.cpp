#include "cohomkit/gmod/catalog.hpp"

#include <algorithm>
#include <boost/rational.hpp>
#include <map>
#include <mutex>
#include <random>

#include "cohomkit/config.hpp"
#include "cohomkit/errors.hpp"
#include "cohomkit/ffla/poly.hpp"
#include "cohomkit/gmod/hom.hpp"

namespace cohomkit::gmod {

using ffla::Poly;

namespace {

constexpr size_t kTensorDimCap = 400;

std::vector<Poly> distinct_factors(uint32_t p, Poly f) {
  std::vector<Poly> out;
  for (int d = 1; ffla::poly_degree(f) >= d && d <= 6; ++d)
    for (const Poly& g : ffla::monic_irreducibles(p, d)) {
      bool found = false;
      for (;;) {
        auto [q, r] = ffla::poly_divmod(p, f, g);
        if (!r.empty()) break;
        f = q;
        found = true;
      }
      if (found) out.push_back(g);
      if (ffla::poly_degree(f) < d) break;
    }
  return out;
}

size_t generalized_nullity(const FpMatrix& X) {
  FpMatrix P = X;
  size_t r = ffla::rank(P);
  for (;;) {
    P = ffla::multiply(P, X);
    size_t r2 = ffla::rank(P);
    if (r2 == r) break;
    r = r2;
  }
  return X.rows - r;
}

using GAElem = std::vector<uint8_t>;

GAElem ga_mul(const groups::ElementTable& T, const ffla::PrimeField& F, const GAElem& a, const GAElem& b) {
  GAElem c(a.size(), 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (size_t j = 0; j < b.size(); ++j)
      if (b[j]) {
        uint32_t k = T.mul(i, j);
        c[k] = F.add(c[k], F.mul(a[i], b[j]));
      }
  }
  return c;
}

using Rat = boost::rational<int64_t>;

// Rank of the integer rows over Q; reduces `rows` to echelon form in place.
size_t rational_rank(std::vector<std::vector<Rat>>& rows, size_t ncols) {
  size_t r = 0;
  for (size_t c = 0; c < ncols && r < rows.size(); ++c) {
    size_t piv = r;
    while (piv < rows.size() && rows[piv][c].numerator() == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[r], rows[piv]);
    for (size_t i = 0; i < rows.size(); ++i)
      if (i != r && rows[i][c].numerator() != 0) {
        Rat f = rows[i][c] / rows[r][c];
        for (size_t j = 0; j < rows[i].size(); ++j) rows[i][j] -= f * rows[r][j];
      }
    ++r;
  }
  return r;
}

// Composition multiplicities in the regular module. For x in FG and an
// irreducible factor f of a characteristic polynomial, the generalized
// nullity of f(x) on FG is the sum over irreducibles T of m_T times the
// generalized nullity of f(x) on T. Random x give enough equations.
std::vector<size_t> regular_multiplicities(const GroupPtr& G, uint32_t p, const std::vector<GModule>& irr,
                                           uint64_t seed) {
  const auto& T = G->table();
  const ffla::PrimeField& F = ffla::PrimeField::get(p);
  std::mt19937_64 rng(seed);
  size_t k = irr.size();
  // Each row: coefficients for m_0..m_{k-1}, then the right-hand side.
  std::vector<std::vector<Rat>> rows;
  std::vector<Rat> dims(k + 1);
  for (size_t i = 0; i < k; ++i) dims[i] = Rat(int64_t(irr[i].dim()));
  dims[k] = Rat(int64_t(G->order()));
  rows.push_back(dims);
  for (uint32_t attempt = 0; attempt < caps().retry_budget && rational_rank(rows, k) < k; ++attempt) {
    size_t nterms = 1 + rng() % 4;
    std::vector<std::pair<uint32_t, uint8_t>> terms;
    for (size_t t = 0; t < nterms; ++t) terms.emplace_back(uint32_t(rng() % T.size()), uint8_t(1 + rng() % (p - 1)));
    std::vector<FpMatrix> th;
    for (const auto& M : irr) {
      FpMatrix X(p, M.dim(), M.dim());
      for (auto [g, c] : terms) {
        FpMatrix R = M.element_matrix(T.element(g));
        F.axpy(X.data.data(), R.data.data(), c, X.data.size());
      }
      th.push_back(std::move(X));
    }
    std::vector<Poly> factors;
    for (const auto& X : th)
      for (const Poly& f : distinct_factors(p, ffla::charpoly(X)))
        if (std::find(factors.begin(), factors.end(), f) == factors.end()) factors.push_back(f);
    for (const Poly& f : factors) {
      std::vector<Rat> row(k + 1);
      for (size_t i = 0; i < k; ++i) row[i] = Rat(int64_t(generalized_nullity(ffla::poly_eval(f, th[i]))));
      auto trial = rows;
      trial.push_back(row);
      if (rational_rank(trial, k) == rational_rank(rows, k)) continue;
      GAElem theta(T.size(), 0);
      for (auto [g, c] : terms) theta[g] = F.add(theta[g], c);
      GAElem y(T.size(), 0);
      for (int d = ffla::poly_degree(f); d >= 0; --d) {
        y = ga_mul(T, F, y, theta);
        y[0] = F.add(y[0], f[size_t(d)]);
      }
      row[k] = Rat(int64_t(regular_generalized_nullity(G, p, y)));
      rows.push_back(row);
      if (rational_rank(rows, k) == k) break;
    }
  }
  if (rational_rank(rows, k) < k) throw Undecided("regular-module multiplicity equations did not reach full rank");
  std::vector<size_t> m(k);
  for (size_t i = 0; i < k; ++i) {
    Rat v = rows[i][k] / rows[i][i];
    if (v.denominator() != 1 || v.numerator() <= 0) throw InternalError("non-integral regular-module multiplicity");
    m[i] = size_t(v.numerator());
  }
  for (size_t i = k; i < rows.size(); ++i)
    if (rows[i][k].numerator() != 0) throw InternalError("inconsistent regular-module multiplicity equations");
  return m;
}

void sort_entries(std::vector<CatalogEntry>& entries) {
  std::stable_sort(entries.begin(), entries.end(), [](const CatalogEntry& a, const CatalogEntry& b) {
    if (a.module.is_trivial() != b.module.is_trivial()) return a.module.is_trivial();
    return a.module.dim() < b.module.dim();
  });
}

IrreducibleCatalog build_catalog(const GroupPtr& G, uint32_t p, uint64_t seed) {
  IrreducibleCatalog cat;
  cat.group = G;
  cat.p = p;
  cat.expected_count = groups::irreducible_count(G, p);
  if (G->order() <= caps().regular_chop_cap) {
    cat.method = "regular-chop";
    for (auto& f : composition_factors(regular_module(G, p), seed)) cat.entries.push_back({f.module, f.multiplicity, 0});
  } else {
    cat.method = "seeded";
    std::vector<GModule> found;
    auto absorb = [&](const GModule& M) {
      if (found.size() >= cat.expected_count) return;
      for (auto& f : composition_factors(M, seed + found.size())) {
        bool known = false;
        for (auto& g : found)
          if (isomorphic_irreducibles(g, f.module)) {
            known = true;
            break;
          }
        if (!known) found.push_back(f.module);
      }
    };
    absorb(trivial_module(G, p));
    if (G->matrix() && G->matrix()->field->p() == p) absorb(natural_module(G));
    absorb(permutation_module(G, p));
    std::vector<std::pair<size_t, size_t>> done;
    for (size_t round = 0; round < 4 && found.size() < cat.expected_count; ++round) {
      size_t count = found.size();
      for (size_t i = 0; i < count && found.size() < cat.expected_count; ++i) absorb(dual(found[i]));
      std::vector<std::pair<size_t, size_t>> pairs;
      for (size_t i = 0; i < found.size(); ++i)
        for (size_t j = i; j < found.size(); ++j)
          if (!found[i].is_trivial() && !found[j].is_trivial() && found[i].dim() * found[j].dim() <= kTensorDimCap &&
              std::find(done.begin(), done.end(), std::make_pair(i, j)) == done.end())
            pairs.emplace_back(i, j);
      std::stable_sort(pairs.begin(), pairs.end(), [&](auto a, auto b) {
        return found[a.first].dim() * found[a.second].dim() < found[b.first].dim() * found[b.second].dim();
      });
      for (auto [i, j] : pairs) {
        if (found.size() >= cat.expected_count) break;
        done.emplace_back(i, j);
        absorb(tensor(found[i], found[j]));
      }
    }
    if (found.size() < cat.expected_count)
      throw Undecided("seeded catalog found " + std::to_string(found.size()) + " of " +
                      std::to_string(cat.expected_count) + " irreducibles");
    auto mult = regular_multiplicities(G, p, found, seed);
    for (size_t i = 0; i < found.size(); ++i) cat.entries.push_back({found[i], mult[i], 0});
  }
  if (cat.entries.size() != cat.expected_count)
    throw InternalError("catalog size " + std::to_string(cat.entries.size()) + " differs from the class count " +
                        std::to_string(cat.expected_count));
  uint64_t total = 0;
  for (auto& e : cat.entries) {
    e.endo_degree = endo_field_degree(e.module, seed);
    total += e.multiplicity * e.module.dim();
  }
  if (total != G->order()) throw InternalError("catalog multiplicities do not sum to the group order");
  sort_entries(cat.entries);
  for (size_t i = 0; i < cat.entries.size(); ++i)
    cat.entries[i].module.set_label(cat.entries[i].module.is_trivial() ? "trivial" : "M" + std::to_string(i));
  return cat;
}

}  // namespace

size_t regular_generalized_nullity(const GroupPtr& G, uint32_t p, const std::vector<uint8_t>& y0) {
  const auto& T = G->table();
  const ffla::PrimeField& F = ffla::PrimeField::get(p);
  size_t n = T.size();
  GAElem z = y0;
  for (size_t pw = 1; pw < n; pw *= 2) z = ga_mul(T, F, z, z);
  FpMatrix R(p, n, n);
  for (size_t x = 0; x < n; ++x)
    for (size_t i = 0; i < n; ++i)
      if (z[i]) {
        uint32_t k = T.mul(i, x);
        R(x, k) = F.add(R(x, k), z[i]);
      }
  return n - ffla::rank(R);
}

IrreducibleCatalog irreducible_catalog(const GroupPtr& G, uint32_t p, uint64_t seed) {
  static std::mutex mu;
  static std::map<std::tuple<uint64_t, uint32_t, uint64_t>, IrreducibleCatalog> cache;
  if (!ffla::is_prime(p)) throw InputError("p must be prime");
  G->table();
  auto key = std::make_tuple(G->uid(), p, seed);
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  IrreducibleCatalog cat = build_catalog(G, p, seed);
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(key, cat);
  return cat;
}

size_t endo_field_degree(const GModule& M, uint64_t seed) {
  HomSpace H = hom_space(M, M);
  size_t e = H.dim();
  if (e == 0 || M.dim() % e != 0) throw InternalError("endomorphism degree does not divide the dimension");
  for (size_t i = 0; i < e; ++i)
    for (size_t j = i + 1; j < e; ++j)
      if (!(ffla::multiply(H.basis[i], H.basis[j]) == ffla::multiply(H.basis[j], H.basis[i])))
        throw InternalError("endomorphism ring is not commutative");
  std::mt19937_64 rng(seed);
  const ffla::PrimeField& F = ffla::PrimeField::get(M.p());
  for (int t = 0; t < 8 && e > 1; ++t) {
    FpMatrix X(M.p(), M.dim(), M.dim());
    bool nonzero = false;
    for (size_t i = 0; i < e; ++i) {
      uint8_t c = uint8_t(rng() % M.p());
      nonzero |= c != 0;
      F.axpy(X.data.data(), H.basis[i].data.data(), c, X.data.size());
    }
    if (nonzero && ffla::rank(X) != M.dim()) throw InternalError("endomorphism ring has zero divisors");
  }
  return e;
}

ModuleGenerators min_module_generators(const GModule& M, const IrreducibleCatalog& catalog, uint64_t seed) {
  ModuleGenerators r;
  if (M.dim() == 0) {
    r.certified = true;
    return r;
  }
  if (catalog.group != M.group() || catalog.p != M.p()) throw InputError("catalog does not match the module");
  size_t d = 1;
  for (auto& e : catalog.entries) {
    size_t h = hom_dim(M, e.module);
    if (h % e.endo_degree) throw InternalError("hom dimension not divisible by the endomorphism degree");
    size_t head = h / e.endo_degree;
    size_t a = e.module.dim() / e.endo_degree;
    d = std::max(d, (head + a - 1) / a);
  }
  r.count = d;
  std::mt19937_64 rng(seed);
  for (int t = 0; t < 200 && !r.certified; ++t) {
    FpMatrix V = FpMatrix::random(M.p(), d, M.dim(), rng);
    r.certified = spin(M, V).rows == M.dim();
  }
  return r;
}

TrivialCfResult trivial_cf_count(const GModule& M, const Subgroup& J, uint64_t seed) {
  TrivialCfResult r;
  for (auto& f : composition_factors(M, seed))
    if (f.module.is_trivial()) r.count += f.multiplicity;
  r.fixed_dim = fixed_points(M, J).rows;
  r.coprime = J.order() % M.p() != 0;
  r.bound_holds = !r.coprime || r.count <= r.fixed_dim;
  return r;
}

}  // namespace cohomkit::gmod
