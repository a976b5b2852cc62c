#pragma once
#include <cstdint>
#include <vector>

#include "cohomkit/ffla/matrix.hpp"

namespace cohomkit::ffla {

// Polynomial over GF(p), coefficients from low to high degree, no trailing zeros.
using Poly = std::vector<uint8_t>;

void poly_trim(Poly& f);
int poly_degree(const Poly& f);
Poly poly_mul(uint32_t p, const Poly& a, const Poly& b);
Poly poly_add(uint32_t p, const Poly& a, const Poly& b);
// Returns (quotient, remainder).
std::pair<Poly, Poly> poly_divmod(uint32_t p, const Poly& a, const Poly& b);
Poly poly_mod(uint32_t p, const Poly& a, const Poly& b);
Poly poly_gcd(uint32_t p, Poly a, Poly b);
Poly poly_powmod(uint32_t p, const Poly& base, uint64_t e, const Poly& mod);
bool poly_divides(uint32_t p, const Poly& d, const Poly& a);
// Brute-force search for a monic factor of degree at most deg/2.
bool poly_is_irreducible(uint32_t p, const Poly& f);
bool poly_is_primitive(uint32_t p, const Poly& f);
// Monic irreducible polynomials of the given degree, in integer-encoding order.
const std::vector<Poly>& monic_irreducibles(uint32_t p, int degree);
// Monic polynomial with the given integer encoding of its lower coefficients.
Poly monic_from_code(uint32_t p, int degree, uint64_t code);

// Evaluates f at a square matrix.
FpMatrix poly_eval(const Poly& f, const FpMatrix& A);
// Characteristic polynomial (monic).
Poly charpoly(const FpMatrix& A);

std::vector<uint64_t> prime_factors(uint64_t n);

}  // namespace cohomkit::ffla
