#include <bit>
#include "cohomkit/ffla/matrix.hpp"

#include <algorithm>
#include <cstring>
#include <sstream>

#include "cohomkit/errors.hpp"

namespace cohomkit::ffla {

namespace {

void check_same_p(const FpMatrix& A, const FpMatrix& B) {
  if (A.p != B.p) throw InputError("modulus mismatch: " + std::to_string(A.p) + " vs " + std::to_string(B.p));
}

}  // namespace

FpMatrix FpMatrix::identity(uint32_t p, size_t n) {
  FpMatrix I(p, n, n);
  for (size_t i = 0; i < n; ++i) I(i, i) = 1;
  return I;
}

FpMatrix FpMatrix::from_rows(uint32_t p, const std::vector<std::vector<int>>& rows) {
  const PrimeField& F = PrimeField::get(p);
  size_t c = rows.empty() ? 0 : rows[0].size();
  FpMatrix A(p, rows.size(), c);
  for (size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != c) throw InputError("ragged matrix rows");
    for (size_t j = 0; j < c; ++j) A(i, j) = F.reduce(rows[i][j]);
  }
  return A;
}

FpMatrix FpMatrix::from_vectors(uint32_t p, size_t cols, const std::vector<FpVector>& rows) {
  FpMatrix A(p, rows.size(), cols);
  for (size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw InputError("vector length mismatch");
    std::copy(rows[i].begin(), rows[i].end(), A.row(i));
  }
  return A;
}

FpMatrix FpMatrix::random(uint32_t p, size_t r, size_t c, std::mt19937_64& rng) {
  FpMatrix A(p, r, c);
  for (auto& x : A.data) x = uint8_t(rng() % p);
  return A;
}

void FpMatrix::append_row(const uint8_t* v) {
  data.insert(data.end(), v, v + cols);
  ++rows;
}

bool FpMatrix::is_zero() const {
  return std::all_of(data.begin(), data.end(), [](uint8_t x) { return x == 0; });
}

bool FpMatrix::is_identity() const {
  if (rows != cols) return false;
  for (size_t i = 0; i < rows; ++i)
    for (size_t j = 0; j < cols; ++j)
      if ((*this)(i, j) != (i == j ? 1 : 0)) return false;
  return true;
}

std::string FpMatrix::to_string() const {
  std::ostringstream os;
  for (size_t i = 0; i < rows; ++i) {
    os << "[";
    for (size_t j = 0; j < cols; ++j) os << (j ? " " : "") << int((*this)(i, j));
    os << "]\n";
  }
  return os.str();
}

// ---- GF(2) bit-packed ----

Gf2Matrix::Gf2Matrix(size_t rows, size_t cols)
    : rows_(rows), cols_(cols), words_((cols + 63) / 64), data_(rows * ((cols + 63) / 64), 0) {}

Gf2Matrix::Gf2Matrix(const FpMatrix& A) : Gf2Matrix(A.rows, A.cols) {
  for (size_t i = 0; i < rows_; ++i) {
    const uint8_t* r = A.row(i);
    uint64_t* w = row(i);
    for (size_t j = 0; j < cols_; ++j)
      if (r[j] & 1) w[j >> 6] |= uint64_t(1) << (j & 63);
  }
}

FpMatrix Gf2Matrix::to_fp() const {
  FpMatrix A(2, rows_, cols_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j) A(i, j) = get(i, j) ? 1 : 0;
  return A;
}

// Blocked elimination: up to 8 pivots are found at a time, mutually reduced,
// and applied to every other row through a table of their 256 combinations.
std::vector<size_t> Gf2Matrix::rref_in_place(bool reduced) {
  constexpr size_t K = 8;
  std::vector<size_t> piv;
  std::vector<uint64_t> table;
  size_t r = 0, c = 0;
  while (c < cols_ && r < rows_) {
    std::vector<size_t> pc;  // pivot columns of rows r .. r + pc.size() - 1
    // Bit of row s at column col after reduction by the current block rows.
    auto reduced_bit = [&](size_t s, size_t col) {
      const uint64_t* rs = row(s);
      bool b = (rs[col >> 6] >> (col & 63)) & 1;
      for (size_t j = 0; j < pc.size(); ++j)
        if ((rs[pc[j] >> 6] >> (pc[j] & 63)) & 1) b ^= (row(r + j)[col >> 6] >> (col & 63)) & 1;
      return b;
    };
    for (; c < cols_ && pc.size() < K && r + pc.size() < rows_; ++c) {
      size_t top = r + pc.size();
      size_t s = top;
      while (s < rows_ && !reduced_bit(s, c)) ++s;
      if (s == rows_) continue;
      if (s != top) std::swap_ranges(row(s), row(s) + words_, row(top));
      uint64_t* pt = row(top);
      for (size_t j = 0; j < pc.size(); ++j)
        if ((pt[pc[j] >> 6] >> (pc[j] & 63)) & 1) {
          const uint64_t* pj = row(r + j);
          for (size_t k = 0; k < words_; ++k) pt[k] ^= pj[k];
        }
      size_t w = c >> 6;
      uint64_t m = uint64_t(1) << (c & 63);
      for (size_t j = 0; j < pc.size(); ++j) {
        uint64_t* pj = row(r + j);
        if (pj[w] & m)
          for (size_t k = 0; k < words_; ++k) pj[k] ^= pt[k];
      }
      pc.push_back(c);
    }
    if (pc.empty()) break;
    size_t nb = pc.size(), w0 = pc[0] >> 6, span = words_ - w0;
    table.assign((size_t(1) << nb) * span, 0);
    for (size_t idx = 1; idx < (size_t(1) << nb); ++idx) {
      size_t low = std::countr_zero(idx);
      const uint64_t* prev = table.data() + (idx & (idx - 1)) * span;
      const uint64_t* pr = row(r + low) + w0;
      uint64_t* t = table.data() + idx * span;
      for (size_t k = 0; k < span; ++k) t[k] = prev[k] ^ pr[k];
    }
    for (size_t i = reduced ? 0 : r + nb; i < rows_; ++i) {
      if (i >= r && i < r + nb) continue;
      uint64_t* ri = row(i);
      size_t idx = 0;
      for (size_t j = 0; j < nb; ++j) idx |= size_t((ri[pc[j] >> 6] >> (pc[j] & 63)) & 1) << j;
      if (!idx) continue;
      const uint64_t* t = table.data() + idx * span;
      for (size_t k = 0; k < span; ++k) ri[w0 + k] ^= t[k];
    }
    piv.insert(piv.end(), pc.begin(), pc.end());
    r += nb;
  }
  return piv;
}

// ---- elimination ----

namespace detail {

RrefResult rref_generic(const FpMatrix& A) {
  const PrimeField& F = PrimeField::get(A.p);
  RrefResult res;
  res.R = A;
  FpMatrix& R = res.R;
  size_t r = 0;
  for (size_t c = 0; c < R.cols && r < R.rows; ++c) {
    size_t s = r;
    while (s < R.rows && R(s, c) == 0) ++s;
    if (s == R.rows) continue;
    if (s != r) std::swap_ranges(R.row(s), R.row(s) + R.cols, R.row(r));
    uint8_t* pr = R.row(r);
    F.scale(pr + c, F.inv(pr[c]), R.cols - c);
    for (size_t i = 0; i < R.rows; ++i) {
      if (i == r) continue;
      uint8_t* ri = R.row(i);
      if (ri[c]) F.axpy(ri + c, pr + c, F.neg(ri[c]), R.cols - c);
    }
    res.pivots.push_back(c);
    ++r;
  }
  res.rank = r;
  return res;
}

RrefResult rref_gf2(const FpMatrix& A) {
  Gf2Matrix B(A);
  RrefResult res;
  res.pivots = B.rref_in_place(true);
  res.rank = res.pivots.size();
  res.R = B.to_fp();
  return res;
}

size_t rank_generic(const FpMatrix& A) {
  const PrimeField& F = PrimeField::get(A.p);
  FpMatrix R = A;
  size_t r = 0;
  for (size_t c = 0; c < R.cols && r < R.rows; ++c) {
    size_t s = r;
    while (s < R.rows && R(s, c) == 0) ++s;
    if (s == R.rows) continue;
    if (s != r) std::swap_ranges(R.row(s), R.row(s) + R.cols, R.row(r));
    uint8_t* pr = R.row(r);
    F.scale(pr + c, F.inv(pr[c]), R.cols - c);
    for (size_t i = r + 1; i < R.rows; ++i) {
      uint8_t* ri = R.row(i);
      if (ri[c]) F.axpy(ri + c, pr + c, F.neg(ri[c]), R.cols - c);
    }
    ++r;
  }
  return r;
}

size_t rank_gf2(const FpMatrix& A) {
  Gf2Matrix B(A);
  return B.rref_in_place(false).size();
}

FpMatrix multiply_generic(const FpMatrix& A, const FpMatrix& B) {
  const PrimeField& F = PrimeField::get(A.p);
  FpMatrix C(A.p, A.rows, B.cols);
  for (size_t i = 0; i < A.rows; ++i) {
    const uint8_t* a = A.row(i);
    uint8_t* c = C.row(i);
    for (size_t k = 0; k < A.cols; ++k)
      if (a[k]) F.axpy(c, B.row(k), a[k], B.cols);
  }
  return C;
}

FpMatrix multiply_gf2(const FpMatrix& A, const FpMatrix& B) {
  Gf2Matrix Bb(B);
  Gf2Matrix C(A.rows, B.cols);
  size_t w = Bb.words();
  for (size_t i = 0; i < A.rows; ++i) {
    const uint8_t* a = A.row(i);
    uint64_t* c = C.row(i);
    for (size_t k = 0; k < A.cols; ++k)
      if (a[k]) {
        const uint64_t* b = Bb.row(k);
        for (size_t t = 0; t < w; ++t) c[t] ^= b[t];
      }
  }
  return C.to_fp();
}

}  // namespace detail

RrefResult rref(const FpMatrix& A) {
  if (A.p == 2 && A.cols >= 64) return detail::rref_gf2(A);
  return detail::rref_generic(A);
}

size_t rank(const FpMatrix& A) {
  if (A.rows == 0 || A.cols == 0) return 0;
  if (A.p == 2 && A.cols >= 64) return detail::rank_gf2(A);
  return detail::rank_generic(A);
}

FpMatrix nullspace(const FpMatrix& A) {
  RrefResult r = rref(A);
  const PrimeField& F = PrimeField::get(A.p);
  std::vector<bool> is_piv(A.cols, false);
  for (size_t c : r.pivots) is_piv[c] = true;
  FpMatrix N(A.p, 0, A.cols);
  FpVector v(A.cols);
  for (size_t f = 0; f < A.cols; ++f) {
    if (is_piv[f]) continue;
    std::fill(v.begin(), v.end(), 0);
    v[f] = 1;
    for (size_t i = 0; i < r.rank; ++i) v[r.pivots[i]] = F.neg(r.R(i, f));
    N.append_row(v.data());
  }
  return N;
}

FpMatrix left_nullspace(const FpMatrix& A) { return nullspace(transpose(A)); }

std::optional<FpVector> solve(const FpMatrix& A, const FpVector& b) {
  if (b.size() != A.rows)
    throw InputError("solve: dimension mismatch (" + std::to_string(A.rows) + " rows, rhs " +
                     std::to_string(b.size()) + ")");
  FpMatrix Aug(A.p, A.rows, A.cols + 1);
  for (size_t i = 0; i < A.rows; ++i) {
    std::copy(A.row(i), A.row(i) + A.cols, Aug.row(i));
    Aug(i, A.cols) = b[i];
  }
  RrefResult r = rref(Aug);
  if (!r.pivots.empty() && r.pivots.back() == A.cols) return std::nullopt;
  FpVector x(A.cols, 0);
  for (size_t i = 0; i < r.rank; ++i) x[r.pivots[i]] = r.R(i, A.cols);
  return x;
}

std::optional<FpMatrix> inverse(const FpMatrix& A) {
  if (A.rows != A.cols) throw InputError("inverse of non-square matrix");
  size_t n = A.rows;
  FpMatrix Aug(A.p, n, 2 * n);
  for (size_t i = 0; i < n; ++i) {
    std::copy(A.row(i), A.row(i) + n, Aug.row(i));
    Aug(i, n + i) = 1;
  }
  RrefResult r = rref(Aug);
  if (r.rank < n || (n > 0 && r.pivots[n - 1] != n - 1)) return std::nullopt;
  FpMatrix inv(A.p, n, n);
  for (size_t i = 0; i < n; ++i) std::copy(r.R.row(i) + n, r.R.row(i) + 2 * n, inv.row(i));
  return inv;
}

FpMatrix kron(const FpMatrix& A, const FpMatrix& B) {
  check_same_p(A, B);
  const PrimeField& F = PrimeField::get(A.p);
  FpMatrix K(A.p, A.rows * B.rows, A.cols * B.cols);
  for (size_t i = 0; i < A.rows; ++i)
    for (size_t j = 0; j < A.cols; ++j) {
      uint8_t a = A(i, j);
      if (!a) continue;
      for (size_t k = 0; k < B.rows; ++k) {
        uint8_t* dst = K.row(i * B.rows + k) + j * B.cols;
        const uint8_t* src = B.row(k);
        for (size_t l = 0; l < B.cols; ++l) dst[l] = F.mul(a, src[l]);
      }
    }
  return K;
}

FpMatrix multiply(const FpMatrix& A, const FpMatrix& B) {
  check_same_p(A, B);
  if (A.cols != B.rows) throw InputError("multiply: dimension mismatch");
  if (A.p == 2 && B.cols >= 128) return detail::multiply_gf2(A, B);
  return detail::multiply_generic(A, B);
}

FpMatrix transpose(const FpMatrix& A) {
  FpMatrix T(A.p, A.cols, A.rows);
  for (size_t i = 0; i < A.rows; ++i)
    for (size_t j = 0; j < A.cols; ++j) T(j, i) = A(i, j);
  return T;
}

FpMatrix add(const FpMatrix& A, const FpMatrix& B) {
  check_same_p(A, B);
  if (A.rows != B.rows || A.cols != B.cols) throw InputError("add: dimension mismatch");
  FpMatrix C = A;
  PrimeField::get(A.p).axpy(C.data.data(), B.data.data(), 1, C.data.size());
  return C;
}

FpMatrix sub(const FpMatrix& A, const FpMatrix& B) {
  check_same_p(A, B);
  if (A.rows != B.rows || A.cols != B.cols) throw InputError("sub: dimension mismatch");
  FpMatrix C = A;
  const PrimeField& F = PrimeField::get(A.p);
  F.axpy(C.data.data(), B.data.data(), F.neg(1), C.data.size());
  return C;
}

FpMatrix scale(const FpMatrix& A, uint8_t c) {
  FpMatrix C = A;
  const PrimeField& F = PrimeField::get(A.p);
  if (c % A.p == 0) std::fill(C.data.begin(), C.data.end(), 0);
  else F.scale(C.data.data(), uint8_t(c % A.p), C.data.size());
  return C;
}

FpMatrix block_diag(const FpMatrix& A, const FpMatrix& B) {
  check_same_p(A, B);
  FpMatrix C(A.p, A.rows + B.rows, A.cols + B.cols);
  for (size_t i = 0; i < A.rows; ++i) std::copy(A.row(i), A.row(i) + A.cols, C.row(i));
  for (size_t i = 0; i < B.rows; ++i) std::copy(B.row(i), B.row(i) + B.cols, C.row(A.rows + i) + A.cols);
  return C;
}

FpMatrix vstack(const FpMatrix& A, const FpMatrix& B) {
  check_same_p(A, B);
  if (A.cols != B.cols) throw InputError("vstack: column mismatch");
  FpMatrix C = A;
  C.data.insert(C.data.end(), B.data.begin(), B.data.end());
  C.rows += B.rows;
  return C;
}

FpVector matvec(const FpMatrix& A, const FpVector& v) {
  if (v.size() != A.cols) throw InputError("matvec: dimension mismatch");
  const PrimeField& F = PrimeField::get(A.p);
  FpVector out(A.rows, 0);
  for (size_t i = 0; i < A.rows; ++i) {
    uint32_t s = 0;
    const uint8_t* r = A.row(i);
    for (size_t j = 0; j < A.cols; ++j) s = (s + uint32_t(F.mul(r[j], v[j])));
    out[i] = uint8_t(s % A.p);
  }
  return out;
}

FpVector vecmat(const FpVector& v, const FpMatrix& A) {
  if (v.size() != A.rows) throw InputError("vecmat: dimension mismatch");
  const PrimeField& F = PrimeField::get(A.p);
  FpVector out(A.cols, 0);
  for (size_t i = 0; i < A.rows; ++i)
    if (v[i]) F.axpy(out.data(), A.row(i), v[i], A.cols);
  return out;
}

FpMatrix power(const FpMatrix& A, uint64_t k) {
  FpMatrix R = FpMatrix::identity(A.p, A.rows), B = A;
  while (k) {
    if (k & 1) R = multiply(R, B);
    k >>= 1;
    if (k) B = multiply(B, B);
  }
  return R;
}

// ---- Echelon ----

Echelon::Echelon(uint32_t p, size_t n, size_t pivot_limit)
    : p_(p), n_(n), limit_(std::min(n, pivot_limit)), F_(&PrimeField::get(p)) {}

bool Echelon::reduce(uint8_t* v) const {
  for (size_t i = 0; i < pivots_.size(); ++i) {
    size_t c = pivots_[i];
    if (v[c]) F_->axpy(v + c, rows_.data() + i * n_ + c, F_->neg(v[c]), n_ - c);
  }
  for (size_t j = 0; j < limit_; ++j)
    if (v[j]) return false;
  return true;
}

bool Echelon::add(const uint8_t* v) { return add(FpVector(v, v + n_)); }

bool Echelon::add(FpVector v) {
  if (v.size() != n_) throw InputError("Echelon: vector length mismatch");
  if (reduce(v.data())) return false;
  size_t c = 0;
  while (v[c] == 0) ++c;
  F_->scale(v.data() + c, F_->inv(v[c]), n_ - c);
  rows_.insert(rows_.end(), v.begin(), v.end());
  pivots_.push_back(c);
  return true;
}

FpMatrix Echelon::basis() const {
  FpMatrix B(p_, pivots_.size(), n_);
  B.data = rows_;
  return B;
}

SpanTracker::SpanTracker(uint32_t p, size_t n)
    : p_(p), n_(n), words_((n + 63) / 64), ech_(p == 2 ? 2 : p, p == 2 ? 0 : n) {
  if (p == 2) row_of_.assign(n, kNone);
}

std::vector<uint64_t> SpanTracker::pack(const FpVector& v) const {
  std::vector<uint64_t> w(words_, 0);
  for (size_t j = 0; j < n_; ++j)
    if (v[j]) w[j >> 6] |= uint64_t(1) << (j & 63);
  return w;
}

// Every stored row has its pivot as lowest set bit, so reduction repeatedly
// clears the lowest bit of w and stops at the first bit without a pivot row.
bool SpanTracker::reduce_packed(std::vector<uint64_t>& w) const {
  for (size_t k = 0; k < words_; ++k)
    while (w[k]) {
      size_t b = k * 64 + size_t(__builtin_ctzll(w[k]));
      uint32_t i = row_of_[b];
      if (i == kNone) return false;
      const uint64_t* r = rows_.data() + size_t(i) * words_;
      for (size_t j = k; j < words_; ++j) w[j] ^= r[j];
    }
  return true;
}

bool SpanTracker::contains(const FpVector& v) const {
  if (p_ != 2) return ech_.contains(v);
  auto w = pack(v);
  return reduce_packed(w);
}

bool SpanTracker::add(const FpVector& v) {
  if (p_ != 2) return ech_.add(v);
  auto w = pack(v);
  if (reduce_packed(w)) return false;
  size_t k = 0;
  while (!w[k]) ++k;
  size_t b = k * 64 + size_t(__builtin_ctzll(w[k]));
  row_of_[b] = uint32_t(count_++);
  rows_.insert(rows_.end(), w.begin(), w.end());
  return true;
}

}  // namespace cohomkit::ffla
