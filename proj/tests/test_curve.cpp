#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdint>
#include <vector>

#include "weylforge/curve.hpp"
#include "weylforge/errors.hpp"
#include "weylforge/ffield.hpp"
#include "weylforge/intpoly.hpp"

using namespace weylforge;

namespace {

IntPoly ip(std::vector<long> v) {
  IntPoly p;
  for (long c : v) p.emplace_back(c);
  intpoly::normalize(p);
  return p;
}

// Independent point-count oracle: enumerate y to build a table of square
// multiplicities, then sum over x.  Never touches the quadratic character.
mpz_class oracle_count(const CurveSpec& spec, int m) {
  Field K = Field::build(spec.q, spec.n * m, std::uint64_t{1} << 26);
  Field base = Field::build(spec.q, spec.n);
  Embedding emb = embed_subfield(K, base);
  FieldElement t = emb(base.from_encoding(spec.t_enc));
  std::vector<std::uint32_t> tab(K.size(), 0);
  for (std::uint64_t e = 0; e < K.size(); ++e) {
    FieldElement y = K.from_encoding(e);
    ++tab[(y * y).encoding()];
  }
  mpz_class total = 1;  // point at infinity
  for (std::uint64_t e = 0; e < K.size(); ++e) {
    FieldElement x = K.from_encoding(e);
    FieldElement f = x - t;
    for (int i = 1; i <= 2 * spec.g; ++i) f = f * (x - K.constant(i));
    total += tab[f.encoding()];
  }
  return total;
}

}  // namespace

TEST_CASE("spec validation") {
  CHECK_THROWS_AS(validate_curve_spec({3, 1, 2, 0}), DomainError);
  try {
    validate_curve_spec({3, 1, 2, 0});
  } catch (const DomainError& e) {
    CHECK(e.code() == errc::genus_prime_conflict);
  }
  CHECK_THROWS_AS(validate_curve_spec({5, 1, 1, 1}), DomainError);
  CHECK_THROWS_AS(validate_curve_spec({5, 1, 1, 2}), DomainError);
  try {
    validate_curve_spec({5, 1, 1, 2});
  } catch (const DomainError& e) {
    CHECK(e.code() == errc::not_squarefree);
  }
  CHECK_NOTHROW(validate_curve_spec({5, 1, 1, 0}));
  CHECK_NOTHROW(validate_curve_spec({5, 1, 1, 3}));
  CHECK_THROWS_AS(validate_curve_spec({4, 1, 1, 0}), DomainError);

  auto ts = valid_t_encodings(5, 1, 1);
  CHECK(ts == std::vector<std::uint64_t>{0, 3, 4});
  auto ts2 = valid_t_encodings(5, 1, 2);
  CHECK(ts2 == std::vector<std::uint64_t>{0});
  CHECK(valid_t_encodings(5, 2, 1).size() == 23);  // 25 minus markers 1, 2
}

TEST_CASE("point counts match the square-table oracle") {
  CHECK(count_points({5, 1, 1, 0}, 1) == 8);
  CHECK(count_points({5, 1, 1, 0}, 2) == 32);
  CHECK(count_points({5, 1, 1, 4}, 1) == 4);

  std::vector<std::pair<CurveSpec, int>> cases = {
      {{5, 1, 1, 0}, 1}, {{5, 1, 1, 0}, 2}, {{5, 1, 1, 3}, 2},
      {{5, 1, 1, 4}, 1}, {{5, 2, 1, 5}, 1}, {{5, 2, 1, 7}, 2},
      {{7, 1, 2, 0}, 1}, {{7, 1, 2, 0}, 2}, {{7, 1, 2, 6}, 2},
      {{5, 1, 2, 0}, 2}, {{11, 1, 2, 5}, 2}, {{13, 1, 3, 0}, 3},
  };
  for (const auto& [spec, m] : cases) {
    CHECK(count_points(spec, m, std::uint64_t{1} << 26) == oracle_count(spec, m));
  }
}

TEST_CASE("zeta numerator: genus one worked example") {
  WeilPoly z = zeta_numerator({5, 1, 1, 0});
  CHECK(z.h == ip({5, 2, 1}));
  CHECK(z.w == 5);
  CHECK(z.g == 1);
  // t = 3 yields the same numerator; t = 4 the reflected one.
  CHECK(zeta_numerator({5, 1, 1, 3}).h == ip({5, 2, 1}));
  CHECK(zeta_numerator({5, 1, 1, 4}).h == ip({5, -2, 1}));
}

TEST_CASE("zeta numerator determines higher point counts") {
  // N_m = Q^m + 1 - sum alpha_i^m must hold for m beyond those used in the
  // construction; check m = g+1 via exact power sums from the coefficients.
  for (CurveSpec spec : {CurveSpec{5, 1, 2, 0}, CurveSpec{7, 1, 2, 5},
                         CurveSpec{5, 2, 1, 5}}) {
    WeilPoly z = zeta_numerator(spec, std::uint64_t{1} << 26);
    int deg = 2 * z.g;
    // Power sums from Newton's identities run forward.
    std::vector<mpz_class> c(static_cast<std::size_t>(deg) + 1);
    for (int i = 0; i <= deg; ++i) {
      c[static_cast<std::size_t>(i)] = z.h[static_cast<std::size_t>(deg - i)];
      if (i % 2 != 0) c[static_cast<std::size_t>(i)] = -c[static_cast<std::size_t>(i)];
    }  // c[i] = e_i
    int mmax = z.g + 1;
    std::vector<mpz_class> s(static_cast<std::size_t>(mmax) + 1);
    for (int k = 1; k <= mmax; ++k) {
      mpz_class acc = 0;
      for (int i = 1; i < k; ++i) {
        mpz_class term = s[static_cast<std::size_t>(k - i)] *
                         c[static_cast<std::size_t>(i)];
        if (i % 2 == 0) acc += term;
        else acc -= term;
      }
      mpz_class ek = k <= deg ? c[static_cast<std::size_t>(k)] : mpz_class(0);
      s[static_cast<std::size_t>(k)] =
          (k % 2 == 0 ? mpz_class(-k) : mpz_class(k)) * ek - acc;
    }
    mpz_class Qm;
    mpz_pow_ui(Qm.get_mpz_t(), z.w.get_mpz_t(),
               static_cast<unsigned long>(mmax));
    mpz_class predicted = Qm + 1 - s[static_cast<std::size_t>(mmax)];
    CHECK(predicted == count_points(spec, mmax, std::uint64_t{1} << 26));
  }
}

TEST_CASE("validate_weil accepts genuine zeta numerators") {
  for (CurveSpec spec : {CurveSpec{5, 1, 1, 0}, CurveSpec{5, 1, 2, 0},
                         CurveSpec{7, 1, 2, 0}, CurveSpec{11, 1, 2, 5},
                         CurveSpec{13, 1, 3, 0}}) {
    WeilPoly z = zeta_numerator(spec, std::uint64_t{1} << 26);
    WeilValidation v = validate_weil(z.h, z.w);
    CHECK(v.functional_equation);
    CHECK(v.roots_on_circle);
    CHECK(v.coefficient_bounds);
    CHECK(v.ok());
    CHECK(v.max_unit_error < 1e-9);
  }
}

TEST_CASE("validate_weil rejects non-Weil polynomials") {
  // Real roots off the circle; coefficient bound violated.
  WeilValidation v1 = validate_weil(ip({5, 7, 1}), 5);
  CHECK(v1.functional_equation);
  CHECK_FALSE(v1.roots_on_circle);
  CHECK_FALSE(v1.coefficient_bounds);
  CHECK_FALSE(v1.ok());

  // Functional equation broken.
  WeilValidation v2 = validate_weil(ip({6, 1, 1}), 5);
  CHECK_FALSE(v2.functional_equation);
  CHECK_FALSE(v2.ok());

  // Unit-circle polynomial with the wrong weight.
  WeilValidation v3 = validate_weil(ip({1, 0, 1}), 5);
  CHECK_FALSE(v3.functional_equation);

  // Odd degree or non-monic input fails wholesale.
  CHECK_FALSE(validate_weil(ip({5, 1}), 5).ok());
  CHECK_FALSE(validate_weil(ip({5, 2, 2}), 5).ok());
}

TEST_CASE("validate_weil circle check is exact at the boundary") {
  // (T^2 - 25)^2: repeated real roots +-5 exactly on the circle of radius
  // sqrt(25).  The numeric eigenvalue estimate alone cannot certify repeated
  // roots to 1e-9, so this exercises the exact certificate path.
  WeilValidation v1 = validate_weil(ip({625, 0, -50, 0, 1}), 25);
  CHECK(v1.functional_equation);
  CHECK(v1.roots_on_circle);
  CHECK(v1.max_unit_error < 1e-9);

  // T^4 - 51 T^2 + 625 satisfies the functional equation for w = 25 but its
  // real subfield polynomial S^2 - 101 has a root with s^2 = 101 > 100 = 4w,
  // i.e. real roots just off the circle.  The exact check must reject.
  WeilValidation v2 = validate_weil(ip({625, 0, -51, 0, 1}), 25);
  CHECK(v2.functional_equation);
  CHECK_FALSE(v2.roots_on_circle);

  // T^2 - 5 has both roots on the circle but anti-symmetric coefficients, so
  // the functional equation fails and the numeric fallback decides the
  // circle flag.
  WeilValidation v3 = validate_weil(ip({-5, 0, 1}), 5);
  CHECK_FALSE(v3.functional_equation);
  CHECK(v3.roots_on_circle);
  CHECK_FALSE(v3.ok());

  // (T^2 - 5)^3 also fails the functional equation (odd multiplicity); the
  // squarefree deflation keeps the numeric fallback sharp.
  IntPoly cube = intpoly::mul(intpoly::mul(ip({-5, 0, 1}), ip({-5, 0, 1})),
                              ip({-5, 0, 1}));
  WeilValidation v4 = validate_weil(cube, 5);
  CHECK_FALSE(v4.functional_equation);
  CHECK(v4.roots_on_circle);
  CHECK(v4.max_unit_error < 1e-9);
}

TEST_CASE("zeta numerators are CM symmetric and feed the real subfield") {
  WeilPoly z = zeta_numerator({7, 1, 2, 0});
  IntPoly hr = real_subfield_poly(z.h, z.w);
  CHECK(intpoly::degree(hr) == 2);
  CHECK(hr.back() == 1);
  // Totally real check: both roots of h_real are real.
  CHECK(intpoly::count_real_roots(hr) == 2);
  CHECK(intpoly::count_real_roots(z.h) == 0);
}
