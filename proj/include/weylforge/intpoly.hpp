#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "weylforge/flpoly.hpp"

namespace weylforge {

// Integer polynomial, little-endian, no trailing zeros (zero poly = empty).
using IntPoly = std::vector<mpz_class>;

namespace intpoly {

void normalize(IntPoly& p);
int degree(const IntPoly& p);
bool is_zero(const IntPoly& p);
IntPoly from_coeffs(std::vector<mpz_class> c);

IntPoly add(const IntPoly& a, const IntPoly& b);
IntPoly sub(const IntPoly& a, const IntPoly& b);
IntPoly mul(const IntPoly& a, const IntPoly& b);
IntPoly neg(const IntPoly& a);
IntPoly scalar_mul(const IntPoly& a, const mpz_class& c);
IntPoly derivative(const IntPoly& a);
mpz_class eval(const IntPoly& a, const mpz_class& x);

// Long division by a monic divisor; exact over the integers.
std::pair<IntPoly, IntPoly> divmod_monic(const IntPoly& num, const IntPoly& den);
// Quotient if den (monic) divides num exactly, nullopt otherwise.
std::optional<IntPoly> divide_exact_monic(const IntPoly& num, const IntPoly& den);

flpoly::Poly reduce_mod(const IntPoly& a, std::uint64_t l);

// Resultant via fraction-free (Bareiss) elimination of the Sylvester matrix.
mpz_class resultant(const IntPoly& a, const IntPoly& b);
// Discriminant of a monic polynomial: (-1)^{d(d-1)/2} Res(h, h').
mpz_class discriminant(const IntPoly& h);

// Number of distinct real roots, by Sturm's theorem (exact rational arithmetic).
int count_real_roots(const IntPoly& h);
// Number of distinct real roots in the open interval (bound, +infinity).
int count_real_roots_above(const IntPoly& h, const mpq_class& bound);
// Degree of the squarefree part (number of distinct complex roots).
int squarefree_part_degree(const IntPoly& h);
// Squarefree part of a monic polynomial: h / gcd(h, h'), again monic integer.
IntPoly squarefree_part(const IntPoly& h);

}  // namespace intpoly

// ---------------------------------------------------------------------------

enum class TypeKind { Regular, Ramified, NonRegular };

// Signed cycle type: multiset of (length, sign) pairs with sign in {+1, -1},
// stored sorted by length ascending, '+' before '-'.  Ramified and NonRegular
// carry no cycles.
struct SignedCycleType {
  TypeKind kind = TypeKind::Regular;
  std::vector<std::pair<int, int>> cycles;

  static SignedCycleType regular(std::vector<std::pair<int, int>> c);
  static SignedCycleType ramified() { return {TypeKind::Ramified, {}}; }
  static SignedCycleType nonregular() { return {TypeKind::NonRegular, {}}; }

  // True when every cycle has length 1 (only meaningful for Regular).
  bool all_lengths_one() const;
  // Number of '-' signs (the sign weight).
  int minus_count() const;
  int total_length() const;

  std::string to_string() const;                     // e.g. "1+,1-", "ram"
  static SignedCycleType parse(const std::string&);  // inverse of to_string

  bool operator==(const SignedCycleType& o) const {
    return kind == o.kind && cycles == o.cycles;
  }
  bool operator<(const SignedCycleType& o) const;
};

// Factorization type of an integer polynomial modulo l.
struct FactorPattern {
  std::uint64_t l = 0;
  std::vector<std::pair<flpoly::Poly, int>> factors;  // monic, sorted, with mult

  std::vector<std::pair<int, int>> degree_pattern() const;  // (degree, mult) sorted
  bool squarefree() const;
};

FactorPattern factor_mod(const IntPoly& h, std::uint64_t l);

// Real-subfield polynomial: the degree-g h_real with
// h(T) = T^g * h_real(T + w/T).  Errors: NotCMSymmetric when deg h is odd or
// the functional equation c_j = c_{2g-j} w^{g-j} fails.
IntPoly real_subfield_poly(const IntPoly& h, const mpz_class& w);

// Signed cycle type of an unramified prime l for the pair (h, h_real); l is
// declared Ramified when it divides disc(h) * disc(h_real).  The weight w is
// recovered from the constant term of h (c_0 = w^g).
SignedCycleType signed_cycle_type(const IntPoly& h, const IntPoly& h_real,
                                  std::uint64_t l);
// Variant with precomputed discriminants and weight, for census loops.
SignedCycleType signed_cycle_type_with(const IntPoly& h, const IntPoly& h_real,
                                       std::uint64_t l, const mpz_class& dh,
                                       const mpz_class& dhr, const mpz_class& w);

// ---------------------------------------------------------------------------

enum class IrredStatus { Irreducible, Reducible, Inconclusive };
enum class IrredMethod { Degree, RationalRoot, ModPCertificate, Zassenhaus };

struct IrreducibilityResult {
  IrredStatus status = IrredStatus::Inconclusive;
  IrredMethod method = IrredMethod::Degree;
  std::uint64_t certificate_prime = 0;  // for ModPCertificate / Zassenhaus
  int primes_tried = 0;
  // For Reducible: a nontrivial monic factorization h = witness.first * witness.second.
  std::optional<std::pair<IntPoly, IntPoly>> witness;
};

struct IrredOptions {
  int prime_budget = 200;
};

// Irreducibility over Q of a monic squarefree integer polynomial.  Definite
// for degree <= 8 (recombination tier); larger degrees may be Inconclusive.
// Errors: NotSquarefree when disc(h) = 0.
IrreducibilityResult irreducibility_over_q(const IntPoly& h,
                                           const IrredOptions& opts = {});

}  // namespace weylforge
