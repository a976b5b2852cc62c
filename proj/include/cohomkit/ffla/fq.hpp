#pragma once
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "cohomkit/ffla/poly.hpp"

namespace cohomkit::ffla {

// GF(p^e) with elements encoded as integers sum c_i p^i over the basis 1, x, ..., x^(e-1).
class FqField {
 public:
  // Built-in defining polynomial: the first primitive polynomial in encoding order.
  static std::shared_ptr<const FqField> standard(uint32_t p, uint32_t e);
  // User-supplied polynomial; must be monic irreducible of degree e.
  static std::shared_ptr<const FqField> with_poly(uint32_t p, const Poly& f);

  uint32_t p() const { return p_; }
  uint32_t e() const { return e_; }
  uint32_t q() const { return q_; }
  const Poly& poly() const { return poly_; }

  uint32_t add(uint32_t a, uint32_t b) const;
  uint32_t neg(uint32_t a) const;
  uint32_t sub(uint32_t a, uint32_t b) const { return add(a, neg(b)); }
  uint32_t mul(uint32_t a, uint32_t b) const;
  uint32_t inv(uint32_t a) const;
  uint32_t pow(uint32_t a, uint64_t k) const;
  uint32_t gen() const { return e_ == 1 ? prim_ : p_; }  // the class of x
  uint32_t primitive_element() const { return prim_; }
  std::vector<uint8_t> coeffs(uint32_t a) const;
  uint32_t from_coeffs(const std::vector<uint8_t>& c) const;
  // Matrix over GF(p) of multiplication by a in the basis 1, x, ..., x^(e-1).
  FpMatrix mult_matrix(uint32_t a) const;
  std::string to_string(uint32_t a) const;

 private:
  FqField(uint32_t p, const Poly& f);
  uint32_t mul_slow(uint32_t a, uint32_t b) const;
  uint32_t p_, e_, q_;
  Poly poly_;
  uint32_t prim_ = 1;
  std::vector<uint16_t> mul_;
  std::vector<uint32_t> inv_;
};

using FieldPtr = std::shared_ptr<const FqField>;

struct FqElement {
  FieldPtr field;
  uint32_t code = 0;
  FqElement operator+(const FqElement& o) const { return {field, field->add(code, o.code)}; }
  FqElement operator-(const FqElement& o) const { return {field, field->sub(code, o.code)}; }
  FqElement operator*(const FqElement& o) const { return {field, field->mul(code, o.code)}; }
  FqElement inverse() const { return {field, field->inv(code)}; }
  bool operator==(const FqElement& o) const { return code == o.code; }
};

}  // namespace cohomkit::ffla
