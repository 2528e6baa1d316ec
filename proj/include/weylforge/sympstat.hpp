#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include <gmpxx.h>

#include "weylforge/intpoly.hpp"

namespace weylforge {

// Largest group order the exact enumeration accepts.
inline constexpr std::uint64_t kEnumerationCap = 1'000'000;

// Element of the symplectic similitude group GSp_{2g}(F_l) for the standard
// form J = [[0, I_g], [-I_g, 0]]: M^T J M = gamma J, checked on construction.
struct SymplecticMatrix {
  int g = 0;
  std::uint64_t l = 0;
  std::uint64_t gamma = 0;
  std::vector<std::uint64_t> a;  // row-major (2g) x (2g), entries in [0, l)

  // Errors: BadConfig when the entries do not satisfy the similitude
  // invariant (or the dimensions are wrong); BadMultiplier when gamma = 0.
  static SymplecticMatrix make(int g, std::uint64_t l,
                               std::vector<std::uint64_t> entries);

  std::uint64_t at(int i, int j) const {
    return a[static_cast<std::size_t>(i) * static_cast<std::size_t>(2 * g) +
             static_cast<std::size_t>(j)];
  }
};

SymplecticMatrix sp_mul(const SymplecticMatrix& A, const SymplecticMatrix& B);

// The fixed coset representative diag(gamma I_g, I_g).
SymplecticMatrix similitude_representative(int g, std::uint64_t l,
                                           std::uint64_t gamma);

// |Sp_{2g}(F_l)| = prod_{i=1..g} (l^{2i} - 1) l^{2i-1}.
mpz_class sp_order(int g, std::uint64_t l);

// Characteristic polynomial of M over F_l (Berkowitz, division-free), monic,
// little-endian.
flpoly::Poly sp_charpoly(const SymplecticMatrix& M);

// Random element of the gamma-coset: diag(gamma I, I) times a random walk of
// `walk_length` transvection steps in Sp_{2g}(F_l).  Errors: BadMultiplier
// (gamma = 0 mod l); BadConfig (l not an odd prime, g < 1).
SymplecticMatrix sp_sample(int g, std::uint64_t l, std::uint64_t gamma,
                           std::mt19937_64& rng, int walk_length = 128);

// Signed cycle type of the eigenvalue pairing alpha <-> gamma/alpha: paired
// distinct irreducible factors of degree k give (k, +), self-reciprocal
// factors of degree 2k give (k, -), any repeated factor gives NonRegular.
SignedCycleType matrix_type(const SymplecticMatrix& M);

// Every element of Sp_{2g}(F_l), by closure over transvection generators
// (verified against the order formula).  Errors: EnumerationTooLarge.
std::vector<SymplecticMatrix> sp_enumerate(int g, std::uint64_t l);

enum class Provenance { ExactEnumeration, MonteCarlo, FamilyEmpirical };

struct TypeDistribution {
  std::map<SignedCycleType, mpq_class> weights;  // sums to exactly 1
  std::uint64_t sample_count = 0;                // 0 for exact distributions
  Provenance provenance = Provenance::ExactEnumeration;
  std::map<SignedCycleType, double> std_error;  // Monte Carlo only
};

struct SampleMode {
  enum class Kind { Exact, MonteCarlo };
  Kind kind = Kind::Exact;
  std::uint64_t samples = 100'000;
  std::uint64_t seed = 0;

  static SampleMode exact() { return {}; }
  static SampleMode monte_carlo(std::uint64_t n, std::uint64_t seed) {
    return {Kind::MonteCarlo, n, seed};
  }
};

// Type distribution of the gamma-coset of Sp_{2g}(F_l).
TypeDistribution coset_type_distribution(int g, std::uint64_t l,
                                         std::uint64_t gamma,
                                         const SampleMode& mode);

// Weight of the all-plus identity type in Sp_{2g}(F_l) (gamma = 1); exact
// rational in Exact mode, empirical fraction in MonteCarlo mode.
mpq_class split_class_fraction(int g, std::uint64_t l,
                               const SampleMode& mode = SampleMode::exact());

// Total variation distance (1/2) sum |d1 - d2| over the union of types.
double tv_distance(const TypeDistribution& d1, const TypeDistribution& d2);

// Restriction to Regular types, renormalized; used when comparing family
// statistics (which exclude ramified primes) with coset statistics (which
// contain non-regular elements).
TypeDistribution condition_on_regular(const TypeDistribution& d);

}  // namespace weylforge
