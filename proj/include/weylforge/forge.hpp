#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "weylforge/census.hpp"
#include "weylforge/curve.hpp"
#include "weylforge/intpoly.hpp"
#include "weylforge/sympstat.hpp"
#include "weylforge/weylcert.hpp"

namespace weylforge {

enum class ConditionKind { SplitCompletely, RepeatedRoot, InertPair, TypeEquals };

std::string to_string(ConditionKind k);

// A prescribed factorization behaviour of h modulo one prime.  Within a
// constraint set the primes must be pairwise distinct, different from q, and
// odd (except RepeatedRoot, which only inspects squarefreeness mod l and is
// meaningful at l = 2 as well).
struct LocalCondition {
  std::uint64_t l = 0;
  ConditionKind kind = ConditionKind::SplitCompletely;
  SignedCycleType type;  // payload for TypeEquals

  static LocalCondition split_completely(std::uint64_t l) {
    return {l, ConditionKind::SplitCompletely, {}};
  }
  static LocalCondition repeated_root(std::uint64_t l) {
    return {l, ConditionKind::RepeatedRoot, {}};
  }
  static LocalCondition inert_pair(std::uint64_t l) {
    return {l, ConditionKind::InertPair, {}};
  }
  static LocalCondition type_equals(std::uint64_t l, SignedCycleType t) {
    return {l, ConditionKind::TypeEquals, std::move(t)};
  }
};

// Errors: NotPrime; ConflictingConstraints (repeated prime, prime equal to q,
// or prime 2 with a kind other than RepeatedRoot).
void validate_constraints(std::uint64_t q,
                          const std::vector<LocalCondition>& constraints);

// Whether h (of weight w) satisfies the condition: SplitCompletely = 2g
// distinct linear factors mod l; RepeatedRoot = non-squarefree mod l;
// InertPair = some irreducible quadratic factor self-paired under the
// reciprocal pairing x <-> w/x; TypeEquals = exact signed cycle type match.
bool condition_holds(const IntPoly& h, const mpz_class& w,
                     const LocalCondition& c);

struct ScanOptions {
  bool certify = true;
  int prime_budget = 200;      // certification budget per candidate
  std::uint64_t census_x = 0;  // census bound; 0 skips the census
  std::uint64_t enum_budget = kDefaultEnumBudget;
  std::uint64_t stride = 1;    // keep every stride-th valid t (deterministic)
};

struct CandidateRecord {
  std::uint64_t t_enc = 0;
  WeilPoly weil;
  mpz_class D;  // |disc(h)|
  std::optional<WeylCertificate> certificate;
  std::optional<CensusReport> census;
  std::vector<LocalCondition> conditions_met;
};

// All valid family members over F_{q^n} whose h satisfies every constraint,
// ascending in t; certification and census are attached per ScanOptions.
// Errors: constraint validation errors; BudgetExceeded.
std::vector<CandidateRecord> scan_family(
    std::uint64_t q, int n, int g,
    const std::vector<LocalCondition>& constraints, const ScanOptions& opts = {});

// Distribution of signed cycle types at l across the whole family
// (provenance FamilyEmpirical; Ramified curves binned under their own key).
TypeDistribution family_type_distribution(
    std::uint64_t q, int n, int g, std::uint64_t l,
    std::uint64_t budget = kDefaultEnumBudget);

struct SequenceParams {
  mpq_class ramify_exponent{1, 32};  // ramifying product target q^{n e}
  int window_exponent = 5;           // auxiliary window (n^k, 2 n^k)
  bool desk_window = false;          // window (n+1, 4(n+1)) instead
  double c_g = 1.0;                  // constant for the census count condition
  std::uint64_t census_cap = 2'000'000;  // clamp on the per-candidate census
  int prime_budget = 200;
  std::uint64_t enum_budget = kDefaultEnumBudget;

  static SequenceParams full(int g);  // exponent 1/(32 g^2), window (n^5, 2n^5)
  static SequenceParams desk(int g);  // exponent 1/(8 g^2), window (n+1, 4(n+1))
};

struct SequenceEntry {
  int n = 0;
  bool gap = false;         // no candidate certified at this n
  std::string gap_reason;   // set when gap
  std::vector<std::uint64_t> ramify_primes;
  std::uint64_t aux_prime = 0;  // 0 when the unconstrained fallback was used
  std::optional<CandidateRecord> record;
  std::optional<Lemma31Result> lemma31;
  std::string lemma31_note;  // set when the condition could not be evaluated
  std::optional<DiscWindowResult> window;
};

// One entry per n: ramifying primes chosen greedily with product in
// [q^{n e} / 2, 2 q^{n e}], auxiliary split primes from the window tried one
// at a time (falling back to the ramify-only scan when none yields a
// certified candidate), selection by split count desc / D asc / t asc.
// Errors: EmptyWindow (no usable auxiliary prime, or the ramifying product
// window cannot be met); BadConfig (n_list not strictly ascending); scan
// errors propagate.
std::vector<SequenceEntry> build_sequence(std::uint64_t q, int g,
                                          const std::vector<int>& n_list,
                                          const SequenceParams& params);

}  // namespace weylforge
