#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "weylforge/intpoly.hpp"

namespace weylforge {

// Largest census bound the sieve accepts.
inline constexpr std::uint64_t kCensusSieveCap = 100'000'000;

// Split-prime census of the pair (h, h_real) up to X.  "Split completely"
// means the all-plus identity signed type (g cycles of length 1, all '+').
// The density estimate is taken over unramified primes; D is the order
// discriminant |disc(h)|.  All logarithms downstream are natural logs.
struct CensusReport {
  IntPoly h;
  IntPoly h_real;
  std::uint64_t X = 0;
  int primes_scanned = 0;
  int split_completely = 0;
  int ramified = 0;
  std::map<SignedCycleType, int> by_type;  // unramified primes only
  std::vector<std::uint64_t> split_primes;
  mpq_class density_exact;   // split / unramified (0 when no unramified primes)
  double density_estimate = 0.0;
  mpq_class expected_density;  // 1 / (2^g g!)
  mpz_class D;                 // |disc(h)|
};

// Errors: BudgetExceeded when X > kCensusSieveCap; BadConfig for a malformed
// h; NotCMSymmetric when the constant term of h is not a perfect g-th power
// (no weight to classify against).
CensusReport split_census(const IntPoly& h, const IntPoly& h_real,
                          std::uint64_t X);

// Condition: at least c_g (ln D)^5 / ln ln D primes p <= 2 (ln D)^5 split
// completely.  Errors: InsufficientCensus when report.X < 2 (ln D)^5;
// DegenerateD when D <= 2 (ln ln D undefined or nonpositive).
struct Lemma31Result {
  bool holds = false;
  double threshold = 0.0;  // c_g (ln D)^5 / ln ln D
  double bound = 0.0;      // 2 (ln D)^5
  int count = 0;           // split primes <= bound
};

Lemma31Result lemma31_condition1(const CensusReport& report, double c_g);

// Window test c1 q^{n/(32 g^2)} <= D <= c2 q^{n g^2} with exact rational
// arithmetic (the fractional power is compared via D^{32 g^2} against
// c1^{32 g^2} q^n).
struct DiscWindowResult {
  bool holds = false;
  bool lower_holds = false;
  bool upper_holds = false;
};

DiscWindowResult disc_window(const mpz_class& D, std::uint64_t q, int n, int g,
                             const mpq_class& c1, const mpq_class& c2);

// Smallest completely split prime <= bound (ascending scan, ramified primes
// skipped), or nullopt.
std::optional<std::uint64_t> find_split_prime_below(const IntPoly& h,
                                                    const IntPoly& h_real,
                                                    std::uint64_t bound);

}  // namespace weylforge
