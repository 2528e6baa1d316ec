#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "weylforge/intpoly.hpp"

namespace weylforge {

// ---------------------------------------------------------------------------
// Exact CM test for a weight-w polynomial h of even degree 2g:
//   * h satisfies the functional equation c_j = c_{2g-j} w^{g-j},
//   * h has no real roots (in particular no root +-sqrt(w)),
//   * the real subfield polynomial has g distinct real roots.
// All three conditions are decided in exact arithmetic (Sturm counts and
// resultants).  Errors: BadConfig for non-monic h, odd degree, or w <= 0.
bool cm_check(const IntPoly& h, const mpz_class& w);

// ---------------------------------------------------------------------------
// Exact Galois group of an irreducible monic integer quartic, via the
// resolvent cubic and the Kappe-Warren criterion for the C4/D4 split.
// Errors: NotQuartic unless h is monic of degree 4; NotIrreducible when h
// factors over Q.
enum class QuarticGalois { S4, A4, D4, C4, V4 };

std::string to_string(QuarticGalois label);

QuarticGalois quartic_galois_oracle(const IntPoly& h);

// ---------------------------------------------------------------------------
// Certification that the Galois group of h is the full group
// W_g = (Z/2)^g x| S_g of signed permutations.
//
// Pipeline (every positive or negative verdict rests on exact arithmetic):
//   1. irreducibility of h over Q (budgeted; definite for degree <= 8),
//   2. CM test as above,
//   3. surjectivity of the projection onto S_g for the real subfield
//      polynomial (trivial for g = 1, irreducibility for g = 2,
//      irreducibility + nonsquare discriminant for g = 3, transitive +
//      cycle-type witnesses for g >= 4),
//   4. a kernel witness: an unramified prime whose signed cycle type has all
//      lengths 1 and an odd number omega of '-' signs with omega = 1 or
//      0 < omega < g.  Such an element generates the full sign kernel
//      (Z/2)^g as an S_g-module, which pins the group to W_g.
//
// Refuted is only returned on an exact disproof (reducible, not CM, or a
// too-small S_g projection); running out of prime budget yields Inconclusive.
// Increasing the budget can therefore only settle verdicts, never flip them.
enum class CertStatus { Certified, Refuted, Inconclusive };

std::string to_string(CertStatus status);

struct CertifyOptions {
  // Number of primes visited in each witness scan (kernel criterion and, for
  // g >= 4, the S_g projection); also the budget handed to the
  // irreducibility tiers.
  int prime_budget = 200;
};

struct WeylEvidence {
  IrreducibilityResult irreducibility;
  bool cm_field = false;
  IntPoly h_real;  // set once the CM test has passed
  bool sg_projection = false;
  std::string sg_method;
  std::uint64_t kernel_witness_prime = 0;  // 0 = no witness found
  std::optional<SignedCycleType> kernel_witness;
  int primes_scanned = 0;  // primes visited during the kernel scan
};

struct WeylCertificate {
  CertStatus status = CertStatus::Inconclusive;
  std::string reason;
  WeylEvidence evidence;
};

WeylCertificate certify_weyl(const IntPoly& h, const mpz_class& w,
                             const CertifyOptions& opts = {});

}  // namespace weylforge
