#ifndef WEYLFORGE_NT_UTIL_HPP
#define WEYLFORGE_NT_UTIL_HPP

#include <cstdint>
#include <random>
#include <vector>

#include <gmpxx.h>

namespace weylforge {

// Machine-word modular arithmetic. Moduli are assumed < 2^62 so that the
// 128-bit intermediate in mul_mod never overflows.

inline std::uint64_t add_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    std::uint64_t s = a + b;
    if (s >= m) s -= m;
    return s;
}

inline std::uint64_t sub_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return a >= b ? a - b : a + m - b;
}

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(
        static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

// Inverse of a mod m for m prime; a must be nonzero mod m.
std::uint64_t inv_mod(std::uint64_t a, std::uint64_t m);

// Deterministic Miller-Rabin, valid for all 64-bit inputs.
bool is_prime_u64(std::uint64_t n);

// All primes <= limit, ascending.
std::vector<std::uint64_t> primes_up_to(std::uint64_t limit);

// Smallest prime strictly greater than n.
std::uint64_t next_prime(std::uint64_t n);

// splitmix64; used to derive independent RNG streams from a master seed.
std::uint64_t splitmix64(std::uint64_t x);

// Per-task stream derivation: hash (seed, task_index) into an mt19937_64.
std::mt19937_64 derive_stream(std::uint64_t master_seed, std::uint64_t task_index);

// Arbitrary-precision helpers.

mpz_class mpz_pow(const mpz_class& base, unsigned long exp);

// True iff n is a perfect square (n >= 0).
bool is_square(const mpz_class& n);

// n mod l reduced into [0, l).
std::uint64_t mpz_mod_u64(const mpz_class& n, std::uint64_t l);

// Natural log of |n| for huge n (via mantissa + exponent).
double mpz_log(const mpz_class& n);

}  // namespace weylforge

#endif
