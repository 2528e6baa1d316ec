#include "weylforge/weylcert.hpp"

#include <utility>

#include "weylforge/errors.hpp"
#include "weylforge/nt_util.hpp"

namespace weylforge {

namespace {

bool functional_equation_holds(const IntPoly& h, const mpz_class& w, int g) {
  for (int j = 0; j < g; ++j) {
    mpz_class wpow;
    mpz_pow_ui(wpow.get_mpz_t(), w.get_mpz_t(),
               static_cast<unsigned long>(g - j));
    if (h[static_cast<std::size_t>(j)] !=
        h[static_cast<std::size_t>(2 * g - j)] * wpow)
      return false;
  }
  return true;
}

void require_monic_even(const IntPoly& h, const mpz_class& w,
                        const char* where) {
  int n = intpoly::degree(h);
  if (n < 2 || n % 2 != 0 || h.back() != 1 || w <= 0)
    throw DomainError(errc::bad_config,
                      std::string(where) +
                          " requires a monic polynomial of even degree >= 2 "
                          "and a positive weight");
}

}  // namespace

bool cm_check(const IntPoly& h, const mpz_class& w) {
  require_monic_even(h, w, "cm_check");
  int g = intpoly::degree(h) / 2;
  if (!functional_equation_holds(h, w, g)) return false;
  if (intpoly::count_real_roots(h) != 0) return false;
  // No root +-sqrt(w); implied by the previous line but kept explicit since
  // it is the degenerate case the downstream theory must exclude.
  IntPoly circle{-w, mpz_class(0), mpz_class(1)};
  if (intpoly::resultant(h, circle) == 0) return false;
  IntPoly hr = real_subfield_poly(h, w);
  return intpoly::count_real_roots(hr) == g;
}

// ---------------------------------------------------------------------------

std::string to_string(QuarticGalois label) {
  switch (label) {
    case QuarticGalois::S4: return "S4";
    case QuarticGalois::A4: return "A4";
    case QuarticGalois::D4: return "D4";
    case QuarticGalois::C4: return "C4";
    case QuarticGalois::V4: return "V4";
  }
  return "?";
}

namespace {

// All integer roots of a monic integer polynomial, via the exact
// irreducibility machinery (recursing into the factorization witnesses).
std::vector<mpz_class> integer_roots(const IntPoly& p) {
  int d = intpoly::degree(p);
  if (d <= 0) return {};
  if (d == 1) return {-p[0]};
  if (d == 2) {
    mpz_class disc = p[1] * p[1] - 4 * p[0];
    if (disc < 0 || !is_square(disc)) return {};
    mpz_class s = sqrt(disc);
    // Roots of a monic integer quadratic are integers when rational.
    return {(-p[1] + s) / 2, (-p[1] - s) / 2};
  }
  IrreducibilityResult r = irreducibility_over_q(p);
  if (r.status != IrredStatus::Reducible || !r.witness) return {};
  std::vector<mpz_class> roots = integer_roots(r.witness->first);
  std::vector<mpz_class> more = integer_roots(r.witness->second);
  roots.insert(roots.end(), more.begin(), more.end());
  return roots;
}

// True iff x is a square in Q(sqrt(D)): x a rational square, or x*D one.
bool square_in_quadratic(const mpz_class& x, const mpz_class& D) {
  if (x >= 0 && is_square(x)) return true;
  mpz_class xd = x * D;
  return xd >= 0 && is_square(xd);
}

}  // namespace

QuarticGalois quartic_galois_oracle(const IntPoly& h) {
  if (intpoly::degree(h) != 4 || h.back() != 1)
    throw DomainError(errc::not_quartic,
                      "the Galois oracle requires a monic quartic");
  IrreducibilityResult irr = irreducibility_over_q(h);
  if (irr.status != IrredStatus::Irreducible)
    throw DomainError(errc::not_irreducible,
                      "the Galois oracle requires an irreducible quartic");
  const mpz_class &b0 = h[0], &b1 = h[1], &b2 = h[2], &b3 = h[3];
  // Resolvent cubic; its splitting behaviour separates the five groups.
  IntPoly res{-(b3 * b3 * b0 - 4 * b2 * b0 + b1 * b1), b3 * b1 - 4 * b0, -b2,
              mpz_class(1)};
  std::vector<mpz_class> roots = integer_roots(res);
  mpz_class D = intpoly::discriminant(h);
  if (roots.empty()) {
    // Irreducible resolvent: S4 or A4 by the discriminant square class.
    return (D > 0 && is_square(D)) ? QuarticGalois::A4 : QuarticGalois::S4;
  }
  if (roots.size() >= 3) return QuarticGalois::V4;
  // Exactly one rational root beta: C4 or D4 (Kappe-Warren): C4 iff both
  // x^2 + b3 x + (b2 - beta) and x^2 - beta x + b0 split over Q(sqrt(D)).
  const mpz_class& beta = roots[0];
  mpz_class d1 = b3 * b3 - 4 * (b2 - beta);
  mpz_class d2 = beta * beta - 4 * b0;
  bool both = square_in_quadratic(d1, D) && square_in_quadratic(d2, D);
  return both ? QuarticGalois::C4 : QuarticGalois::D4;
}

// ---------------------------------------------------------------------------

std::string to_string(CertStatus status) {
  switch (status) {
    case CertStatus::Certified: return "certified";
    case CertStatus::Refuted: return "refuted";
    case CertStatus::Inconclusive: return "inconclusive";
  }
  return "?";
}

namespace {

bool is_kernel_witness(const SignedCycleType& t, int g) {
  if (t.kind != TypeKind::Regular || !t.all_lengths_one()) return false;
  int om = t.minus_count();
  return om == 1 || (om % 2 == 1 && om > 0 && om < g);
}

}  // namespace

WeylCertificate certify_weyl(const IntPoly& h, const mpz_class& w,
                             const CertifyOptions& opts) {
  require_monic_even(h, w, "certify_weyl");
  int g = intpoly::degree(h) / 2;
  WeylCertificate cert;
  WeylEvidence& ev = cert.evidence;

  // Stage 1: irreducibility over Q.
  try {
    ev.irreducibility = irreducibility_over_q(h, {opts.prime_budget});
  } catch (const DomainError& e) {
    if (e.code() != errc::not_squarefree) throw;
    ev.irreducibility.status = IrredStatus::Reducible;
    cert.status = CertStatus::Refuted;
    cert.reason = "h has a repeated factor, hence is reducible";
    return cert;
  }
  if (ev.irreducibility.status == IrredStatus::Reducible) {
    cert.status = CertStatus::Refuted;
    cert.reason = "h is reducible over Q";
    return cert;
  }
  if (ev.irreducibility.status == IrredStatus::Inconclusive) {
    cert.status = CertStatus::Inconclusive;
    cert.reason = "irreducibility undecided within the prime budget";
    return cert;
  }

  // Stage 2: CM field test (exact).
  ev.cm_field = cm_check(h, w);
  if (!ev.cm_field) {
    cert.status = CertStatus::Refuted;
    cert.reason = "h is not a CM polynomial of weight w";
    return cert;
  }
  ev.h_real = real_subfield_poly(h, w);
  mpz_class dh = intpoly::discriminant(h);
  mpz_class dhr = intpoly::discriminant(ev.h_real);

  // Stage 3: the projection to S_g must be surjective.
  if (g == 1) {
    ev.sg_projection = true;
    ev.sg_method = "trivial";
  } else {
    IrreducibilityResult rr;
    try {
      rr = irreducibility_over_q(ev.h_real, {opts.prime_budget});
    } catch (const DomainError& e) {
      if (e.code() != errc::not_squarefree) throw;
      rr.status = IrredStatus::Reducible;
    }
    if (rr.status == IrredStatus::Reducible) {
      cert.status = CertStatus::Refuted;
      cert.reason = "the real subfield polynomial is reducible";
      return cert;
    }
    if (rr.status == IrredStatus::Inconclusive) {
      cert.status = CertStatus::Inconclusive;
      cert.reason =
          "irreducibility of the real subfield polynomial undecided within "
          "the prime budget";
      return cert;
    }
    if (g == 2) {
      ev.sg_projection = true;
      ev.sg_method = "real-subfield-irreducible";
    } else if (g == 3) {
      if (dhr > 0 && is_square(dhr)) {
        cert.status = CertStatus::Refuted;
        cert.reason =
            "the real subfield polynomial has square discriminant (cyclic "
            "cubic image)";
        return cert;
      }
      ev.sg_projection = true;
      ev.sg_method = "discriminant-nonsquare";
    } else {
      // g >= 4: transitive (irreducible) plus two cycle-type witnesses, a
      // (g-1)-cycle and a transposition, force the image to be all of S_g.
      bool long_cycle = false, transposition = false;
      std::uint64_t l = 1;
      for (int i = 0; i < opts.prime_budget && !(long_cycle && transposition);
           ++i) {
        l = next_prime(l);
        if (mpz_mod_u64(dhr, l) == 0) continue;
        std::vector<std::pair<int, int>> pat =
            factor_mod(ev.h_real, l).degree_pattern();
        if (pat.size() == 2 && pat[0] == std::make_pair(1, 1) &&
            pat[1] == std::make_pair(g - 1, 1))
          long_cycle = true;
        if (pat.size() == 2 && pat[0] == std::make_pair(1, g - 2) &&
            pat[1] == std::make_pair(2, 1))
          transposition = true;
      }
      if (!(long_cycle && transposition)) {
        cert.status = CertStatus::Inconclusive;
        cert.reason =
            "no S_g cycle-type witnesses found within the prime budget";
        return cert;
      }
      ev.sg_projection = true;
      ev.sg_method = "transitive-with-cycle-witnesses";
    }
  }

  // Stage 4: kernel witness.  An all-ones signed type with an odd number of
  // '-' signs omega, omega = 1 or 0 < omega < g, generates the full sign
  // kernel (Z/2)^g as an S_g-module.
  std::uint64_t l = 1;
  mpz_class ram = dh * dhr;
  for (int i = 0; i < opts.prime_budget; ++i) {
    l = next_prime(l);
    ++ev.primes_scanned;
    if (mpz_mod_u64(ram, l) == 0) continue;
    SignedCycleType t = signed_cycle_type_with(h, ev.h_real, l, dh, dhr, w);
    if (is_kernel_witness(t, g)) {
      ev.kernel_witness_prime = l;
      ev.kernel_witness = t;
      cert.status = CertStatus::Certified;
      cert.reason.clear();
      return cert;
    }
  }
  cert.status = CertStatus::Inconclusive;
  cert.reason = "no kernel witness among the scanned primes";
  return cert;
}

}  // namespace weylforge
