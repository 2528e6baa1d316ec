#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace weylforge::flpoly {

// Polynomial over F_l with machine-word prime l.  Coefficients are stored
// little-endian (index i holds the coefficient of x^i), reduced into [0, l),
// with no trailing zero limbs; the zero polynomial is the empty vector.
using Poly = std::vector<std::uint64_t>;

void normalize(Poly& p);
int degree(const Poly& p);  // -1 for the zero polynomial
bool is_zero(const Poly& p);

Poly from_coeffs(std::vector<std::uint64_t> c, std::uint64_t l);
Poly constant(std::uint64_t c, std::uint64_t l);
Poly monomial(int deg, std::uint64_t coeff, std::uint64_t l);

Poly add(const Poly& a, const Poly& b, std::uint64_t l);
Poly sub(const Poly& a, const Poly& b, std::uint64_t l);
Poly mul(const Poly& a, const Poly& b, std::uint64_t l);
Poly scalar_mul(const Poly& a, std::uint64_t c, std::uint64_t l);
Poly derivative(const Poly& a, std::uint64_t l);
std::uint64_t eval(const Poly& a, std::uint64_t x, std::uint64_t l);

// Division with remainder; the divisor need not be monic (its leading
// coefficient is inverted mod l).  Throws std::invalid_argument on zero divisor.
std::pair<Poly, Poly> divmod(const Poly& num, const Poly& den, std::uint64_t l);
Poly mod(const Poly& num, const Poly& den, std::uint64_t l);

Poly make_monic(const Poly& a, std::uint64_t l);
Poly gcd(const Poly& a, const Poly& b, std::uint64_t l);  // monic (or zero)

// Extended Euclid: returns (g, s, t) with s*a + t*b = g, g monic (or zero).
struct ExtGcd {
  Poly g, s, t;
};
ExtGcd ext_gcd(const Poly& a, const Poly& b, std::uint64_t l);

Poly mulmod(const Poly& a, const Poly& b, const Poly& m, std::uint64_t l);
Poly pow_mod(const Poly& base, std::uint64_t e, const Poly& m, std::uint64_t l);
Poly pow_mod(const Poly& base, const mpz_class& e, const Poly& m, std::uint64_t l);

bool is_irreducible(const Poly& f, std::uint64_t l);

// Complete factorization into monic irreducibles with multiplicities.
// Factors are sorted by (degree, coefficient vector); the product of the
// factors times the leading coefficient is verified to reproduce the input.
std::vector<std::pair<Poly, int>> factor(const Poly& f, std::uint64_t l);

// Roots in F_l of a nonzero polynomial, ascending.
std::vector<std::uint64_t> roots(const Poly& f, std::uint64_t l);

// Canonical comparison used for sorting factor lists.
bool poly_less(const Poly& a, const Poly& b);

}  // namespace weylforge::flpoly
