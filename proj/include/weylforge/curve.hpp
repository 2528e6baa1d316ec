#pragma once

#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "weylforge/ffield.hpp"
#include "weylforge/intpoly.hpp"

namespace weylforge {

// The hyperelliptic curve y^2 = (x - t) * prod_{i=1}^{2g} (x - i) over
// F_{q^n}, with t given by its element encoding.  Requires q > 2g so the
// markers 1..2g stay distinct, and t distinct from every marker so the
// right-hand side is squarefree.
struct CurveSpec {
  std::uint64_t q = 0;
  int n = 1;
  int g = 1;
  std::uint64_t t_enc = 0;
};

// Throws GenusPrimeConflict / NotSquarefree / NotPrime / BudgetExceeded.
void validate_curve_spec(const CurveSpec& spec,
                         std::uint64_t budget = kDefaultEnumBudget);

// Element encodings t over F_{q^n} giving a valid (squarefree) curve, ascending.
std::vector<std::uint64_t> valid_t_encodings(std::uint64_t q, int n, int g,
                                             std::uint64_t budget = kDefaultEnumBudget);

// Number of points of the smooth projective model over F_{q^{n m}} (one point
// at infinity since deg f = 2g + 1 is odd).
mpz_class count_points(const CurveSpec& spec, int m = 1,
                       std::uint64_t budget = kDefaultEnumBudget);

struct WeilPoly {
  IntPoly h;    // monic, degree 2g, little-endian
  mpz_class w;  // weight q^n
  int g = 0;
};

// Zeta numerator from the point counts over F_{q^{n m}}, m = 1..g: power sums
// via N_m, elementary symmetric functions via Newton's identities, upper half
// by the functional equation.
WeilPoly zeta_numerator(const CurveSpec& spec,
                        std::uint64_t budget = kDefaultEnumBudget);

struct WeilValidation {
  bool functional_equation = false;  // exact integer identity
  bool roots_on_circle = false;      // |alpha| = w^{1/2} within tolerance
  bool coefficient_bounds = false;   // |c_{2g-i}| <= C(2g,i) w^{i/2}, exact
  double max_unit_error = 0.0;       // worst relative deviation of |alpha|
  bool ok() const {
    return functional_equation && roots_on_circle && coefficient_bounds;
  }
};

WeilValidation validate_weil(const IntPoly& h, const mpz_class& w,
                             double tolerance = 1e-9);

}  // namespace weylforge
