#pragma once
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "cohomkit/ffla/field.hpp"

namespace cohomkit::ffla {

using FpVector = std::vector<uint8_t>;

// Dense row-major matrix over GF(p).
struct FpMatrix {
  uint32_t p = 2;
  size_t rows = 0;
  size_t cols = 0;
  std::vector<uint8_t> data;

  FpMatrix() = default;
  FpMatrix(uint32_t p_, size_t r, size_t c) : p(p_), rows(r), cols(c), data(r * c, 0) {}

  static FpMatrix identity(uint32_t p, size_t n);
  static FpMatrix from_rows(uint32_t p, const std::vector<std::vector<int>>& rows);
  static FpMatrix from_vectors(uint32_t p, size_t cols, const std::vector<FpVector>& rows);
  static FpMatrix random(uint32_t p, size_t r, size_t c, std::mt19937_64& rng);

  uint8_t operator()(size_t i, size_t j) const { return data[i * cols + j]; }
  uint8_t& operator()(size_t i, size_t j) { return data[i * cols + j]; }
  uint8_t* row(size_t i) { return data.data() + i * cols; }
  const uint8_t* row(size_t i) const { return data.data() + i * cols; }
  FpVector row_vector(size_t i) const { return FpVector(row(i), row(i) + cols); }
  void append_row(const uint8_t* v);

  bool is_zero() const;
  bool is_identity() const;
  bool operator==(const FpMatrix& o) const = default;
  std::string to_string() const;
};

struct RrefResult {
  FpMatrix R;
  size_t rank = 0;
  std::vector<size_t> pivots;
};

RrefResult rref(const FpMatrix& A);
size_t rank(const FpMatrix& A);
// Rows of the result form a basis of {v : A v = 0}.
FpMatrix nullspace(const FpMatrix& A);
// Rows of the result form a basis of {w : w A = 0}.
FpMatrix left_nullspace(const FpMatrix& A);
std::optional<FpVector> solve(const FpMatrix& A, const FpVector& b);
std::optional<FpMatrix> inverse(const FpMatrix& A);

FpMatrix kron(const FpMatrix& A, const FpMatrix& B);
FpMatrix multiply(const FpMatrix& A, const FpMatrix& B);
FpMatrix transpose(const FpMatrix& A);
FpMatrix add(const FpMatrix& A, const FpMatrix& B);
FpMatrix sub(const FpMatrix& A, const FpMatrix& B);
FpMatrix scale(const FpMatrix& A, uint8_t c);
FpMatrix block_diag(const FpMatrix& A, const FpMatrix& B);
FpMatrix vstack(const FpMatrix& A, const FpMatrix& B);
FpVector matvec(const FpMatrix& A, const FpVector& v);     // A v
FpVector vecmat(const FpVector& v, const FpMatrix& A);    // v A
FpMatrix power(const FpMatrix& A, uint64_t k);

namespace detail {
RrefResult rref_generic(const FpMatrix& A);
RrefResult rref_gf2(const FpMatrix& A);
size_t rank_generic(const FpMatrix& A);
size_t rank_gf2(const FpMatrix& A);
FpMatrix multiply_generic(const FpMatrix& A, const FpMatrix& B);
FpMatrix multiply_gf2(const FpMatrix& A, const FpMatrix& B);
}  // namespace detail

// Bit-packed GF(2) matrix.
class Gf2Matrix {
 public:
  Gf2Matrix() = default;
  Gf2Matrix(size_t rows, size_t cols);
  explicit Gf2Matrix(const FpMatrix& A);
  FpMatrix to_fp() const;

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  size_t words() const { return words_; }
  uint64_t* row(size_t i) { return data_.data() + i * words_; }
  const uint64_t* row(size_t i) const { return data_.data() + i * words_; }
  bool get(size_t i, size_t j) const { return (row(i)[j >> 6] >> (j & 63)) & 1; }
  void set(size_t i, size_t j, bool v) {
    uint64_t m = uint64_t(1) << (j & 63);
    if (v)
      row(i)[j >> 6] |= m;
    else
      row(i)[j >> 6] &= ~m;
  }
  void truncate_rows(size_t r) {
    rows_ = std::min(rows_, r);
    data_.resize(rows_ * words_);
    data_.shrink_to_fit();
  }
  // Reduced echelon form in place; returns pivot columns.
  std::vector<size_t> rref_in_place(bool reduced = true);

 private:
  size_t rows_ = 0, cols_ = 0, words_ = 0;
  std::vector<uint64_t> data_;
};

// Incrementally maintained semi-echelon basis. Pivots are only chosen among
// the first pivot_limit columns; trailing columns are carried along.
class Echelon {
 public:
  Echelon(uint32_t p, size_t n, size_t pivot_limit = std::numeric_limits<size_t>::max());
  uint32_t p() const { return p_; }
  size_t n() const { return n_; }
  size_t dim() const { return pivots_.size(); }
  // Reduces v against the stored rows. Returns true when v becomes zero on the pivot columns.
  bool reduce(uint8_t* v) const;
  bool reduce(FpVector& v) const { return reduce(v.data()); }
  // Adds v if independent; returns whether it was added.
  bool add(FpVector v);
  bool add(const uint8_t* v);
  bool contains(FpVector v) const { return reduce(v); }
  const std::vector<size_t>& pivots() const { return pivots_; }
  const uint8_t* row(size_t i) const { return rows_.data() + i * n_; }
  FpMatrix basis() const;

 private:
  uint32_t p_;
  size_t n_;
  size_t limit_;
  const PrimeField* F_;
  std::vector<uint8_t> rows_;
  std::vector<size_t> pivots_;
};

// Span membership for long vectors; bit-packed rows when p = 2.
class SpanTracker {
 public:
  SpanTracker(uint32_t p, size_t n);
  size_t dim() const { return p_ == 2 ? count_ : ech_.dim(); }
  bool contains(const FpVector& v) const;
  // Adds v if independent; returns whether it was added.
  bool add(const FpVector& v);

 private:
  std::vector<uint64_t> pack(const FpVector& v) const;
  bool reduce_packed(std::vector<uint64_t>& w) const;
  uint32_t p_;
  size_t n_, words_;
  static constexpr uint32_t kNone = 0xffffffffu;
  Echelon ech_;
  std::vector<uint64_t> rows_;
  std::vector<uint32_t> row_of_;  // pivot column -> stored row
  size_t count_ = 0;
};

}  // namespace cohomkit::ffla
