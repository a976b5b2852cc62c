#include "cohomkit/gmod/meataxe.hpp"

#include <random>

#include "cohomkit/config.hpp"
#include "cohomkit/errors.hpp"
#include "cohomkit/ffla/poly.hpp"
#include "cohomkit/gmod/hom.hpp"

namespace cohomkit::gmod {

using ffla::Poly;

namespace {

// Random group-algebra elements from sums of generator words, with the
// running word extended one generator at a time.
class AlgebraSampler {
 public:
  AlgebraSampler(const GModule& M, uint64_t seed) : M_(M), rng_(seed) {
    if (M.perm_action()) perm_word_ = Perm(M.dim());
    word_ = FpMatrix::identity(M.p(), M.dim());
  }

  FpMatrix next() {
    size_t n = M_.dim();
    uint32_t p = M_.p();
    const ffla::PrimeField& F = ffla::PrimeField::get(p);
    size_t terms = 1 + rng_() % 4;
    FpMatrix theta(p, n, n);
    for (size_t t = 0; t < terms; ++t) {
      step();
      uint8_t c = uint8_t(1 + rng_() % (p - 1));
      if (M_.perm_action()) {
        for (size_t i = 0; i < n; ++i) theta(perm_word_[groups::Point(i)], i) = F.add(theta(perm_word_[groups::Point(i)], i), c);
      } else {
        F.axpy(theta.data.data(), word_.data.data(), c, theta.data.size());
      }
    }
    return theta;
  }

 private:
  void step() {
    size_t ng = M_.ngens();
    if (ng == 0) return;
    size_t k = 1 + rng_() % 2;
    if (len_ + k > 8) {
      len_ = 0;
      if (M_.perm_action()) perm_word_ = Perm(M_.dim());
      else word_ = FpMatrix::identity(M_.p(), M_.dim());
    }
    for (size_t i = 0; i < k; ++i) {
      size_t s = rng_() % ng;
      if (M_.perm_action()) perm_word_ = perm_word_ * (*M_.perm_action())[s];
      else word_ = ffla::multiply(word_, M_.gen(s));
      ++len_;
    }
  }

  const GModule& M_;
  std::mt19937_64 rng_;
  FpMatrix word_;
  Perm perm_word_;
  size_t len_ = 0;
};

int max_factor_degree(uint32_t p) {
  if (p == 2) return 8;
  if (p == 3) return 5;
  if (p <= 7) return 3;
  if (p <= 13) return 2;
  return 1;
}

// Distinct monic irreducible factors of f of small degree, by trial division.
std::vector<Poly> small_factors(uint32_t p, Poly f) {
  std::vector<Poly> out;
  int dmax = max_factor_degree(p);
  for (int d = 1; d <= dmax && ffla::poly_degree(f) >= d; ++d)
    for (const Poly& g : ffla::monic_irreducibles(p, d)) {
      if (ffla::poly_degree(f) < d) break;
      bool found = false;
      for (;;) {
        auto [q, r] = ffla::poly_divmod(p, f, g);
        if (!r.empty()) break;
        f = q;
        found = true;
      }
      if (found) out.push_back(g);
    }
  return out;
}

bool proper(const FpMatrix& U, size_t n) { return U.rows > 0 && U.rows < n; }

// Annihilator {x : W x = 0} of a row space.
FpMatrix annihilator(const FpMatrix& W) { return ffla::nullspace(W); }

IrreducibleResult exhaustive(const GModule& M) {
  size_t n = M.dim();
  uint32_t p = M.p();
  uint64_t total = 1;
  for (size_t i = 0; i < n; ++i) total *= p;
  FpVector v(n);
  for (uint64_t code = 1; code < total; ++code) {
    uint64_t c = code;
    for (size_t i = 0; i < n; ++i) {
      v[i] = uint8_t(c % p);
      c /= p;
    }
    size_t lead = 0;
    while (v[lead] == 0) ++lead;
    if (v[lead] != 1) continue;
    FpMatrix U = spin(M, FpMatrix::from_vectors(p, n, {v}));
    if (proper(U, n)) return {IrrStatus::Reducible, U};
  }
  return {IrrStatus::Irreducible, {}};
}

}  // namespace

IrreducibleResult is_irreducible(const GModule& M, uint64_t seed) {
  size_t n = M.dim();
  if (n == 0) throw InputError("irreducibility test needs a nonzero module");
  if (n == 1) return {IrrStatus::Irreducible, {}};
  uint32_t p = M.p();
  AlgebraSampler sampler(M, seed);
  uint32_t budget = caps().retry_budget;
  for (uint32_t attempt = 0; attempt < budget; ++attempt) {
    FpMatrix theta = sampler.next();
    Poly chi = ffla::charpoly(theta);
    auto factors = small_factors(p, chi);
    std::sort(factors.begin(), factors.end(), [](const Poly& a, const Poly& b) { return a.size() < b.size(); });
    for (const Poly& f : factors) {
      FpMatrix X = ffla::poly_eval(f, theta);
      FpMatrix N = ffla::nullspace(X);
      if (N.rows == 0) continue;
      FpMatrix U = spin(M, FpMatrix::from_vectors(p, n, {N.row_vector(0)}));
      if (proper(U, n)) return {IrrStatus::Reducible, U};
      if (N.rows == size_t(ffla::poly_degree(f))) {
        FpMatrix Wl = ffla::left_nullspace(X);
        FpMatrix W = spin_dual(M, FpMatrix::from_vectors(p, n, {Wl.row_vector(0)}));
        if (proper(W, n)) return {IrrStatus::Reducible, annihilator(W)};
        return {IrrStatus::Irreducible, {}};
      }
      for (size_t k = 1; k < std::min<size_t>(N.rows, 3); ++k) {
        U = spin(M, FpMatrix::from_vectors(p, n, {N.row_vector(k)}));
        if (proper(U, n)) return {IrrStatus::Reducible, U};
      }
      break;
    }
  }
  if (n <= caps().exhaustive_cap) {
    double space = std::pow(double(p), double(n));
    if (space <= 4e6) return exhaustive(M);
  }
  return {IrrStatus::Undecided, {}};
}

namespace {

std::vector<uint8_t> fingerprint(const GModule& M) {
  std::vector<uint8_t> fp;
  size_t n = M.dim();
  const ffla::PrimeField& F = ffla::PrimeField::get(M.p());
  FpMatrix W = FpMatrix::identity(M.p(), n);
  for (size_t k = 0; k < 6 && M.ngens() > 0; ++k) {
    W = ffla::multiply(W, M.gen(k % M.ngens()));
    uint8_t tr = 0;
    for (size_t i = 0; i < n; ++i) tr = F.add(tr, W(i, i));
    fp.push_back(tr);
  }
  return fp;
}

}  // namespace

bool isomorphic_irreducibles(const GModule& A, const GModule& B) {
  check_compatible(A, B);
  if (A.dim() != B.dim()) return false;
  if (fingerprint(A) != fingerprint(B)) return false;
  return hom_nonzero(A, B);
}

std::vector<CompositionFactor> composition_factors(const GModule& M, uint64_t seed) {
  std::vector<CompositionFactor> out;
  std::vector<std::vector<uint8_t>> prints;
  if (M.dim() == 0) return out;
  std::vector<GModule> stack{M};
  uint64_t counter = 0;
  while (!stack.empty()) {
    GModule X = std::move(stack.back());
    stack.pop_back();
    auto res = is_irreducible(X, seed + 7919 * counter++);
    if (res.status == IrrStatus::Undecided)
      throw Undecided("irreducibility undecided for a subquotient of dimension " + std::to_string(X.dim()) +
                      " (label " + X.label() + ")");
    if (res.status == IrrStatus::Reducible) {
      Subquotient sq = split(X, res.submodule);
      stack.push_back(std::move(sq.sub));
      stack.push_back(std::move(sq.quotient));
      continue;
    }
    auto fp = fingerprint(X);
    bool matched = false;
    for (size_t i = 0; i < out.size() && !matched; ++i) {
      if (out[i].module.dim() != X.dim() || prints[i] != fp) continue;
      if (hom_nonzero(out[i].module, X)) {
        out[i].multiplicity++;
        matched = true;
      }
    }
    if (!matched) {
      X.set_label(X.is_trivial() ? "trivial" : "irr" + std::to_string(X.dim()));
      out.push_back({X, 1});
      prints.push_back(fp);
    }
  }
  return out;
}

}  // namespace cohomkit::gmod
