#include "weylforge/nt_util.hpp"

#include <cmath>
#include <stdexcept>

namespace weylforge {

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    if (m == 1) return 0;
    std::uint64_t result = 1;
    base %= m;
    while (exp > 0) {
        if (exp & 1) result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return result;
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t m) {
    // m prime; Fermat.
    a %= m;
    if (a == 0) throw std::invalid_argument("inv_mod: zero element");
    return pow_mod(a, m - 2, m);
}

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                            23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    // These bases are a proven deterministic set for n < 2^64.
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                            23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 0; i < r - 1; ++i) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t limit) {
    std::vector<std::uint64_t> out;
    if (limit < 2) return out;
    std::vector<bool> composite(limit + 1, false);
    for (std::uint64_t i = 2; i * i <= limit; ++i) {
        if (!composite[i]) {
            for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
        }
    }
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (!composite[i]) out.push_back(i);
    }
    return out;
}

std::uint64_t next_prime(std::uint64_t n) {
    std::uint64_t c = n + 1;
    if (c <= 2) return 2;
    if (c % 2 == 0) ++c;
    while (!is_prime_u64(c)) c += 2;
    return c;
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

std::mt19937_64 derive_stream(std::uint64_t master_seed, std::uint64_t task_index) {
    std::uint64_t s = splitmix64(master_seed ^ splitmix64(task_index));
    return std::mt19937_64(s);
}

mpz_class mpz_pow(const mpz_class& base, unsigned long exp) {
    mpz_class out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exp);
    return out;
}

bool is_square(const mpz_class& n) {
    if (n < 0) return false;
    return mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

std::uint64_t mpz_mod_u64(const mpz_class& n, std::uint64_t l) {
    mpz_class r = n % static_cast<unsigned long>(l);
    if (r < 0) r += static_cast<unsigned long>(l);
    return r.get_ui();
}

double mpz_log(const mpz_class& n) {
    signed long exp = 0;
    double mant = mpz_get_d_2exp(&exp, n.get_mpz_t());
    return std::log(std::fabs(mant)) + static_cast<double>(exp) * std::log(2.0);
}

}  // namespace weylforge
