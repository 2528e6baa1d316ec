#include "weylforge/census.hpp"

#include <cmath>

#include "weylforge/errors.hpp"
#include "weylforge/nt_util.hpp"

namespace weylforge {

namespace {

struct CensusInputs {
  int g = 0;
  mpz_class w, dh, dhr, ram;
};

CensusInputs prepare(const IntPoly& h, const IntPoly& h_real) {
  int n = intpoly::degree(h);
  if (n < 2 || n % 2 != 0 || h.back() != 1)
    throw DomainError(errc::bad_config,
                      "census requires a monic polynomial of even degree >= 2");
  CensusInputs in;
  in.g = n / 2;
  if (h[0] <= 0 || mpz_root(in.w.get_mpz_t(), h[0].get_mpz_t(),
                            static_cast<unsigned long>(in.g)) == 0)
    throw DomainError(errc::not_cm_symmetric,
                      "constant term is not an exact g-th power");
  in.dh = intpoly::discriminant(h);
  in.dhr = intpoly::degree(h_real) >= 1 ? intpoly::discriminant(h_real)
                                        : mpz_class(1);
  in.ram = in.dh * in.dhr;
  return in;
}

bool is_split_type(const SignedCycleType& t) {
  if (t.kind != TypeKind::Regular || !t.all_lengths_one()) return false;
  return t.minus_count() == 0;
}

}  // namespace

CensusReport split_census(const IntPoly& h, const IntPoly& h_real,
                          std::uint64_t X) {
  if (X > kCensusSieveCap)
    throw DomainError(errc::budget_exceeded,
                      "census bound exceeds the sieve cap");
  CensusInputs in = prepare(h, h_real);
  CensusReport rep;
  rep.h = h;
  rep.h_real = h_real;
  rep.X = X;
  rep.D = abs(in.dh);
  mpz_class order = mpz_pow(2, static_cast<unsigned long>(in.g));
  for (int i = 2; i <= in.g; ++i) order *= i;
  rep.expected_density = mpq_class(1, order);
  rep.expected_density.canonicalize();

  for (std::uint64_t p : primes_up_to(X)) {
    ++rep.primes_scanned;
    if (mpz_mod_u64(in.ram, p) == 0) {
      ++rep.ramified;
      continue;
    }
    SignedCycleType t =
        signed_cycle_type_with(h, h_real, p, in.dh, in.dhr, in.w);
    ++rep.by_type[t];
    if (is_split_type(t)) {
      ++rep.split_completely;
      rep.split_primes.push_back(p);
    }
  }
  int unramified = rep.primes_scanned - rep.ramified;
  if (unramified > 0) {
    rep.density_exact = mpq_class(rep.split_completely, unramified);
    rep.density_exact.canonicalize();
    rep.density_estimate = rep.density_exact.get_d();
  }
  return rep;
}

Lemma31Result lemma31_condition1(const CensusReport& report, double c_g) {
  if (c_g <= 0)
    throw DomainError(errc::bad_config, "c_g must be positive");
  if (report.D <= 2)
    throw DomainError(errc::degenerate_discriminant,
                      "ln ln D is undefined or nonpositive for D <= 2");
  double logD = mpz_log(report.D);
  Lemma31Result out;
  out.bound = 2.0 * std::pow(logD, 5);
  if (static_cast<double>(report.X) < out.bound)
    throw DomainError(errc::insufficient_census,
                      "census bound is below 2 (ln D)^5");
  out.threshold = c_g * std::pow(logD, 5) / std::log(logD);
  for (std::uint64_t p : report.split_primes)
    if (static_cast<double>(p) <= out.bound) ++out.count;
  out.holds = static_cast<double>(out.count) >= out.threshold;
  return out;
}

DiscWindowResult disc_window(const mpz_class& D, std::uint64_t q, int n, int g,
                             const mpq_class& c1, const mpq_class& c2) {
  if (D <= 0 || q < 2 || n < 1 || g < 1 || c1 <= 0 || c2 <= 0)
    throw DomainError(errc::bad_config,
                      "disc_window requires positive parameters");
  DiscWindowResult out;
  unsigned long E = static_cast<unsigned long>(32) *
                    static_cast<unsigned long>(g) *
                    static_cast<unsigned long>(g);
  // Lower: c1 q^{n/(32 g^2)} <= D  <=>  c1num^E q^n <= (D c1den)^E.
  mpz_class qn = mpz_pow(mpz_class(q), static_cast<unsigned long>(n));
  mpz_class lhs = mpz_pow(c1.get_num(), E) * qn;
  mpz_class rhs = mpz_pow(D * c1.get_den(), E);
  out.lower_holds = lhs <= rhs;
  // Upper: D <= c2 q^{n g^2}.
  mpz_class qng2 = mpz_pow(mpz_class(q), static_cast<unsigned long>(n) *
                                             static_cast<unsigned long>(g) *
                                             static_cast<unsigned long>(g));
  out.upper_holds = D * c2.get_den() <= c2.get_num() * qng2;
  out.holds = out.lower_holds && out.upper_holds;
  return out;
}

std::optional<std::uint64_t> find_split_prime_below(const IntPoly& h,
                                                    const IntPoly& h_real,
                                                    std::uint64_t bound) {
  CensusInputs in = prepare(h, h_real);
  std::uint64_t p = 1;
  while (true) {
    p = next_prime(p);
    if (p > bound) return std::nullopt;
    if (mpz_mod_u64(in.ram, p) == 0) continue;
    SignedCycleType t =
        signed_cycle_type_with(h, h_real, p, in.dh, in.dhr, in.w);
    if (is_split_type(t)) return p;
  }
}

}  // namespace weylforge
