#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "cohomkit/errors.hpp"
#include "cohomkit/ffla/fq.hpp"
#include "cohomkit/ffla/matrix.hpp"
#include "cohomkit/ffla/poly.hpp"

using namespace cohomkit;
using namespace cohomkit::ffla;

namespace {

// Independent oracle: size of the row space by enumerating all combinations.
uint64_t rowspace_size(const FpMatrix& A) {
  std::set<FpVector> seen;
  uint64_t combos = 1;
  for (size_t i = 0; i < A.rows; ++i) combos *= A.p;
  for (uint64_t code = 0; code < combos; ++code) {
    FpVector v(A.cols, 0);
    uint64_t c = code;
    for (size_t i = 0; i < A.rows; ++i) {
      uint32_t coef = c % A.p;
      c /= A.p;
      for (size_t j = 0; j < A.cols; ++j) v[j] = uint8_t((v[j] + coef * A(i, j)) % A.p);
    }
    seen.insert(v);
  }
  return seen.size();
}

uint64_t ipow(uint64_t b, size_t e) {
  uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

// Leibniz determinant over GF(p).
int64_t det_leibniz(const std::vector<std::vector<int64_t>>& M, int64_t p) {
  size_t n = M.size();
  std::vector<size_t> perm(n);
  for (size_t i = 0; i < n; ++i) perm[i] = i;
  int64_t total = 0;
  do {
    int64_t sign = 1;
    for (size_t i = 0; i < n; ++i)
      for (size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) sign = -sign;
    int64_t prod = sign;
    for (size_t i = 0; i < n; ++i) prod = prod * M[i][perm[i]] % p;
    total = (total + prod) % p;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return (total % p + p) % p;
}

int mobius(int n) {
  int m = 1;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) {
      n /= d;
      if (n % d == 0) return 0;
      m = -m;
    }
  return n > 1 ? -m : m;
}

}  // namespace

TEST_CASE("rref basic examples") {
  auto r = rref(FpMatrix::identity(2, 3));
  CHECK(r.rank == 3);
  CHECK(r.pivots == std::vector<size_t>{0, 1, 2});
  CHECK(rref(FpMatrix(3, 4, 4)).rank == 0);
  CHECK(rref(FpMatrix::from_rows(2, {{1, 1}, {1, 1}})).rank == 1);
  CHECK(rref(FpMatrix(5, 0, 0)).rank == 0);
}

TEST_CASE("nullspace examples") {
  CHECK(nullspace(FpMatrix::identity(3, 4)).rows == 0);
  auto N = nullspace(FpMatrix(3, 2, 5));
  CHECK(N.rows == 5);
  CHECK(N == FpMatrix::identity(3, 5));
  auto N2 = nullspace(FpMatrix::from_rows(2, {{1, 1}}));
  REQUIRE(N2.rows == 1);
  CHECK(N2.row_vector(0) == FpVector{1, 1});
}

TEST_CASE("solve examples") {
  std::mt19937_64 rng(7);
  FpVector b{1, 2, 0};
  auto x = solve(FpMatrix::identity(3, 3), b);
  REQUIRE(x);
  CHECK(*x == b);
  CHECK_FALSE(solve(FpMatrix(3, 3, 3), FpVector{0, 1, 0}));
  CHECK_THROWS_AS(solve(FpMatrix::identity(3, 3), FpVector{1, 2}), InputError);
  for (int trial = 0; trial < 20; ++trial) {
    FpMatrix A = FpMatrix::random(3, 5, 5, rng);
    if (rank(A) < 5) continue;
    FpVector x0(5);
    for (auto& v : x0) v = uint8_t(rng() % 3);
    auto sol = solve(A, matvec(A, x0));
    REQUIRE(sol);
    CHECK(*sol == x0);
  }
}

TEST_CASE("kron examples and rank multiplicativity") {
  CHECK(kron(FpMatrix::identity(5, 2), FpMatrix::identity(5, 3)) == FpMatrix::identity(5, 6));
  std::mt19937_64 rng(11);
  FpMatrix A = FpMatrix::random(5, 3, 4, rng);
  CHECK(kron(A, FpMatrix::identity(5, 1)) == A);
  CHECK_THROWS_AS(kron(FpMatrix::identity(2, 2), FpMatrix::identity(3, 2)), InputError);
  for (uint32_t p : {2u, 3u, 5u}) {
    for (int t = 0; t < 10; ++t) {
      FpMatrix X = FpMatrix::random(p, 3, 3, rng), Y = FpMatrix::random(p, 3, 3, rng);
      if (t % 3 == 0) X.row(2)[0] = X.row(2)[1] = X.row(2)[2] = 0;
      CHECK(rank(kron(X, Y)) == rank(X) * rank(Y));
      FpVector u(3), v(3);
      for (auto& a : u) a = uint8_t(rng() % p);
      for (auto& a : v) a = uint8_t(rng() % p);
      FpMatrix uv = kron(FpMatrix::from_vectors(p, 3, std::vector<FpVector>{u}),
                         FpMatrix::from_vectors(p, 3, std::vector<FpVector>{v}));
      FpVector lhs = matvec(kron(X, Y), uv.row_vector(0));
      FpMatrix rhs = kron(FpMatrix::from_vectors(p, 3, std::vector<FpVector>{matvec(X, u)}),
                          FpMatrix::from_vectors(p, 3, std::vector<FpVector>{matvec(Y, v)}));
      CHECK(lhs == rhs.row_vector(0));
    }
  }
}

TEST_CASE("rank agrees with row space enumeration oracle") {
  std::mt19937_64 rng(3);
  for (uint32_t p : {2u, 3u, 5u, 7u}) {
    for (int t = 0; t < 25; ++t) {
      size_t r = 1 + rng() % 4, c = 1 + rng() % 5;
      FpMatrix A = FpMatrix::random(p, r, c, rng);
      if (t % 4 == 0 && r > 1) std::copy(A.row(0), A.row(0) + c, A.row(r - 1));
      CHECK(ipow(p, rank(A)) == rowspace_size(A));
      auto R = rref(A);
      CHECK(rref(R.R).R == R.R);
      CHECK(ipow(p, R.rank) == rowspace_size(R.R));
      auto N = nullspace(A);
      CHECK(R.rank + N.rows == A.cols);
      for (size_t i = 0; i < N.rows; ++i) {
        auto z = matvec(A, N.row_vector(i));
        CHECK(std::all_of(z.begin(), z.end(), [](uint8_t x) { return x == 0; }));
      }
      CHECK(rank(N) == N.rows);
    }
  }
}

TEST_CASE("GF(2) bit path matches generic path") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 60; ++t) {
    size_t r = 1 + rng() % 150, c = 1 + rng() % 200;
    FpMatrix A = FpMatrix::random(2, r, c, rng);
    if (t % 3 == 0)
      for (size_t i = r / 2; i < r; ++i) std::copy(A.row(i - r / 2), A.row(i - r / 2) + c, A.row(i));
    if (t % 3 == 1) {
      // Low rank with sparse columns.
      FpMatrix L = FpMatrix::random(2, r, 1 + rng() % 12, rng), S(2, L.cols, c);
      for (size_t i = 0; i < S.rows; ++i)
        for (size_t j = 0; j < c; ++j) S(i, j) = rng() % 7 == 0;
      A = detail::multiply_generic(L, S);
    }
    auto g = detail::rref_generic(A), b = detail::rref_gf2(A);
    CHECK(g.R == b.R);
    CHECK(g.pivots == b.pivots);
    CHECK(detail::rank_generic(A) == detail::rank_gf2(A));
    FpMatrix B = FpMatrix::random(2, c, 1 + rng() % 150, rng);
    CHECK(detail::multiply_generic(A, B) == detail::multiply_gf2(A, B));
  }
}

TEST_CASE("span tracker membership matches rank") {
  std::mt19937_64 rng(11);
  for (uint32_t p : {2u, 3u, 5u})
    for (int t = 0; t < 10; ++t) {
      size_t n = 1 + rng() % 200, k = 1 + rng() % 12;
      FpMatrix B = FpMatrix::random(p, k, n, rng);
      SpanTracker S(p, n);
      FpMatrix acc(p, 0, n);
      for (size_t i = 0; i < 3 * k; ++i) {
        // Random combinations of k basis rows, so most later vectors are dependent.
        FpMatrix c = FpMatrix::random(p, 1, k, rng);
        FpMatrix v = multiply(c, B);
        FpVector x(v.data.begin(), v.data.end());
        FpMatrix grown = acc;
        grown.data.insert(grown.data.end(), x.begin(), x.end());
        ++grown.rows;
        bool independent = rank(grown) > rank(acc);
        CHECK(S.contains(x) == !independent);
        CHECK(S.add(x) == independent);
        if (independent) acc = grown;
        CHECK(S.dim() == rank(acc));
      }
    }
}

TEST_CASE("vector kernels agree with scalar arithmetic") {
  std::mt19937_64 rng(9);
  for (uint32_t p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 251u}) {
    const PrimeField& F = PrimeField::get(p);
    for (size_t n : {1u, 31u, 32u, 33u, 100u}) {
      FpVector x(n), y(n);
      for (auto& a : x) a = uint8_t(rng() % p);
      for (auto& a : y) a = uint8_t(rng() % p);
      uint8_t c = uint8_t(rng() % p);
      FpVector z = y;
      F.axpy(z.data(), x.data(), c, n);
      for (size_t i = 0; i < n; ++i) CHECK(z[i] == (y[i] + uint32_t(c) * x[i]) % p);
    }
  }
}

TEST_CASE("inverse and multiply") {
  std::mt19937_64 rng(13);
  for (uint32_t p : {2u, 3u, 7u}) {
    for (int t = 0; t < 10; ++t) {
      FpMatrix A = FpMatrix::random(p, 6, 6, rng);
      auto inv = inverse(A);
      CHECK(bool(inv) == (rank(A) == 6));
      if (inv) CHECK(multiply(A, *inv).is_identity());
    }
  }
}

TEST_CASE("Echelon tracks span dimension") {
  std::mt19937_64 rng(17);
  for (uint32_t p : {2u, 3u, 5u}) {
    Echelon E(p, 8);
    FpMatrix acc(p, 0, 8);
    for (int t = 0; t < 12; ++t) {
      FpVector v(8);
      for (auto& a : v) a = uint8_t(rng() % p);
      if (t % 3 == 2 && acc.rows > 1) {
        v = acc.row_vector(0);
        PrimeField::get(p).axpy(v.data(), acc.row(1), 1, 8);
      }
      E.add(v);
      acc.append_row(v.data());
      CHECK(E.dim() == rank(acc));
    }
  }
}

TEST_CASE("charpoly matches determinant oracle") {
  std::mt19937_64 rng(19);
  const int64_t p = 7;
  for (int t = 0; t < 20; ++t) {
    size_t n = 1 + rng() % 5;
    FpMatrix A = FpMatrix::random(p, n, n, rng);
    if (t % 4 == 0) A = FpMatrix::identity(p, n);
    Poly f = charpoly(A);
    CHECK(poly_degree(f) == int(n));
    for (int64_t lam = 0; lam < p; ++lam) {
      std::vector<std::vector<int64_t>> M(n, std::vector<int64_t>(n));
      for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) M[i][j] = ((i == j ? lam : 0) - A(i, j) + p) % p;
      int64_t val = 0, pw = 1;
      for (size_t k = 0; k < f.size(); ++k) {
        val = (val + f[k] * pw) % p;
        pw = pw * lam % p;
      }
      CHECK(val == det_leibniz(M, p));
    }
    CHECK(poly_eval(f, A).is_zero());
  }
  std::mt19937_64 rng2(23);
  FpMatrix B = FpMatrix::random(2, 40, 40, rng2);
  CHECK(poly_eval(charpoly(B), B).is_zero());
}

TEST_CASE("irreducible polynomial counts follow the Gauss formula") {
  for (uint32_t p : {2u, 3u, 5u}) {
    for (int d = 1; d <= (p == 2 ? 6 : 3); ++d) {
      int64_t s = 0;
      for (int k = 1; k <= d; ++k)
        if (d % k == 0) s += mobius(d / k) * int64_t(ipow(p, k));
      CHECK(int64_t(monic_irreducibles(p, d).size()) == s / d);
    }
  }
}

TEST_CASE("extension fields") {
  CHECK(FqField::standard(2, 2)->poly() == Poly{1, 1, 1});
  CHECK(FqField::standard(2, 3)->poly() == Poly{1, 1, 0, 1});
  CHECK(FqField::standard(3, 2)->poly() == Poly{2, 1, 1});
  CHECK_THROWS_AS(FqField::with_poly(2, Poly{1, 0, 1}), InputError);
  CHECK_NOTHROW(FqField::with_poly(2, Poly{1, 1, 0, 0, 1}));
  std::mt19937_64 rng(29);
  for (auto [p, e] : std::vector<std::pair<uint32_t, uint32_t>>{{2, 2}, {2, 3}, {3, 2}, {5, 2}, {2, 9}, {7, 2}, {3, 5}}) {
    auto F = FqField::standard(p, e);
    CHECK(F->q() == ipow(p, e));
    for (int t = 0; t < 1000; ++t) {
      uint32_t a = uint32_t(rng() % F->q()), b = uint32_t(rng() % F->q()), c = uint32_t(rng() % F->q());
      CHECK(F->pow(a, F->q()) == a);
      CHECK(F->mul(a, F->mul(b, c)) == F->mul(F->mul(a, b), c));
      CHECK(F->mul(a, b) == F->mul(b, a));
      if (t < 50) CHECK(multiply(F->mult_matrix(a), F->mult_matrix(b)) == F->mult_matrix(F->mul(a, b)));
      if (a) CHECK(F->mul(a, F->inv(a)) == 1);
    }
    uint32_t g = F->primitive_element();
    CHECK(F->pow(g, (F->q() - 1)) == 1);
  }
}
