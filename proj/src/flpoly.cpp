#include "weylforge/flpoly.hpp"

#include <algorithm>
#include <stdexcept>

#include "weylforge/errors.hpp"
#include "weylforge/nt_util.hpp"

namespace weylforge::flpoly {

void normalize(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

int degree(const Poly& p) { return static_cast<int>(p.size()) - 1; }

bool is_zero(const Poly& p) { return p.empty(); }

Poly from_coeffs(std::vector<std::uint64_t> c, std::uint64_t l) {
  for (auto& v : c) v %= l;
  normalize(c);
  return c;
}

Poly constant(std::uint64_t c, std::uint64_t l) {
  c %= l;
  if (c == 0) return {};
  return {c};
}

Poly monomial(int deg, std::uint64_t coeff, std::uint64_t l) {
  coeff %= l;
  if (coeff == 0) return {};
  Poly p(static_cast<std::size_t>(deg) + 1, 0);
  p[static_cast<std::size_t>(deg)] = coeff;
  return p;
}

Poly add(const Poly& a, const Poly& b, std::uint64_t l) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    std::uint64_t x = i < a.size() ? a[i] : 0;
    std::uint64_t y = i < b.size() ? b[i] : 0;
    r[i] = add_mod(x, y, l);
  }
  normalize(r);
  return r;
}

Poly sub(const Poly& a, const Poly& b, std::uint64_t l) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    std::uint64_t x = i < a.size() ? a[i] : 0;
    std::uint64_t y = i < b.size() ? b[i] : 0;
    r[i] = sub_mod(x, y, l);
  }
  normalize(r);
  return r;
}

Poly mul(const Poly& a, const Poly& b, std::uint64_t l) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      r[i + j] = add_mod(r[i + j], mul_mod(a[i], b[j], l), l);
    }
  }
  normalize(r);
  return r;
}

Poly scalar_mul(const Poly& a, std::uint64_t c, std::uint64_t l) {
  c %= l;
  if (c == 0) return {};
  Poly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = mul_mod(a[i], c, l);
  normalize(r);
  return r;
}

Poly derivative(const Poly& a, std::uint64_t l) {
  if (a.size() <= 1) return {};
  Poly r(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i) {
    r[i - 1] = mul_mod(a[i], i % l, l);
  }
  normalize(r);
  return r;
}

std::uint64_t eval(const Poly& a, std::uint64_t x, std::uint64_t l) {
  x %= l;
  std::uint64_t acc = 0;
  for (std::size_t i = a.size(); i-- > 0;) {
    acc = add_mod(mul_mod(acc, x, l), a[i], l);
  }
  return acc;
}

std::pair<Poly, Poly> divmod(const Poly& num, const Poly& den, std::uint64_t l) {
  if (den.empty()) throw std::invalid_argument("flpoly::divmod: zero divisor");
  if (num.size() < den.size()) return {{}, num};
  Poly rem = num;
  Poly quo(num.size() - den.size() + 1, 0);
  std::uint64_t lc_inv = inv_mod(den.back(), l);
  for (std::size_t i = num.size(); i-- >= den.size();) {
    if (i >= rem.size() || rem[i] == 0) {
      if (i == den.size() - 1) break;
      continue;
    }
    std::uint64_t c = mul_mod(rem[i], lc_inv, l);
    std::size_t shift = i - (den.size() - 1);
    quo[shift] = c;
    for (std::size_t j = 0; j < den.size(); ++j) {
      rem[shift + j] = sub_mod(rem[shift + j], mul_mod(c, den[j], l), l);
    }
    if (i == den.size() - 1) break;
  }
  normalize(quo);
  normalize(rem);
  return {quo, rem};
}

Poly mod(const Poly& num, const Poly& den, std::uint64_t l) {
  return divmod(num, den, l).second;
}

Poly make_monic(const Poly& a, std::uint64_t l) {
  if (a.empty()) return a;
  if (a.back() == 1) return a;
  return scalar_mul(a, inv_mod(a.back(), l), l);
}

Poly gcd(const Poly& a, const Poly& b, std::uint64_t l) {
  Poly x = a, y = b;
  while (!y.empty()) {
    Poly r = mod(x, y, l);
    x = std::move(y);
    y = std::move(r);
  }
  return make_monic(x, l);
}

ExtGcd ext_gcd(const Poly& a, const Poly& b, std::uint64_t l) {
  Poly r0 = a, r1 = b;
  Poly s0 = constant(1, l), s1 = {};
  Poly t0 = {}, t1 = constant(1, l);
  while (!r1.empty()) {
    auto [q, r] = divmod(r0, r1, l);
    Poly s2 = sub(s0, mul(q, s1, l), l);
    Poly t2 = sub(t0, mul(q, t1, l), l);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (!r0.empty() && r0.back() != 1) {
    std::uint64_t inv = inv_mod(r0.back(), l);
    r0 = scalar_mul(r0, inv, l);
    s0 = scalar_mul(s0, inv, l);
    t0 = scalar_mul(t0, inv, l);
  }
  return {std::move(r0), std::move(s0), std::move(t0)};
}

Poly mulmod(const Poly& a, const Poly& b, const Poly& m, std::uint64_t l) {
  return mod(mul(a, b, l), m, l);
}

Poly pow_mod(const Poly& base, std::uint64_t e, const Poly& m, std::uint64_t l) {
  Poly result = mod(constant(1, l), m, l);
  Poly b = mod(base, m, l);
  while (e > 0) {
    if (e & 1) result = mulmod(result, b, m, l);
    b = mulmod(b, b, m, l);
    e >>= 1;
  }
  return result;
}

Poly pow_mod(const Poly& base, const mpz_class& e, const Poly& m, std::uint64_t l) {
  if (e < 0) throw std::invalid_argument("flpoly::pow_mod: negative exponent");
  Poly result = mod(constant(1, l), m, l);
  Poly b = mod(base, m, l);
  std::size_t nbits = mpz_sizeinbase(e.get_mpz_t(), 2);
  if (e == 0) return result;
  for (std::size_t i = nbits; i-- > 0;) {
    result = mulmod(result, result, m, l);
    if (mpz_tstbit(e.get_mpz_t(), i)) result = mulmod(result, b, m, l);
  }
  return result;
}

bool poly_less(const Poly& a, const Poly& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

bool is_irreducible(const Poly& f, std::uint64_t l) {
  int m = degree(f);
  if (m < 1) return false;
  if (m == 1) return true;
  Poly x = monomial(1, 1, l);
  // Frobenius iterates h_k = x^(l^k) mod f.
  std::vector<Poly> frob(static_cast<std::size_t>(m) + 1);
  frob[0] = mod(x, f, l);
  for (int k = 1; k <= m; ++k) {
    frob[static_cast<std::size_t>(k)] =
        pow_mod(frob[static_cast<std::size_t>(k) - 1], l, f, l);
  }
  if (frob[static_cast<std::size_t>(m)] != mod(x, f, l)) return false;
  for (int r = 2; r <= m; ++r) {
    if (m % r != 0) continue;
    bool r_prime = true;
    for (int d = 2; d * d <= r; ++d) {
      if (r % d == 0) {
        r_prime = false;
        break;
      }
    }
    if (!r_prime) continue;
    Poly g = gcd(sub(frob[static_cast<std::size_t>(m / r)], x, l), f, l);
    if (degree(g) != 0) return false;
  }
  return true;
}

namespace {

// Decode a nonnegative integer into base-l digits, used to enumerate trial
// polynomials in a fixed order for the deterministic splitting routines.
Poly poly_from_encoding(std::uint64_t e, std::uint64_t l) {
  Poly p;
  while (e > 0) {
    p.push_back(e % l);
    e /= l;
  }
  return p;
}

constexpr std::uint64_t kSplitTrialCap = 1 << 20;

void edf_odd(const Poly& f, int d, std::uint64_t l, std::vector<Poly>& out) {
  if (degree(f) == d) {
    out.push_back(make_monic(f, l));
    return;
  }
  mpz_class ld;
  mpz_ui_pow_ui(ld.get_mpz_t(), l, static_cast<unsigned long>(d));
  mpz_class expo = (ld - 1) / 2;
  Poly one = constant(1, l);
  for (std::uint64_t e = l; e < l + kSplitTrialCap; ++e) {
    Poly a = poly_from_encoding(e, l);
    Poly s = pow_mod(a, expo, f, l);
    Poly g = gcd(sub(s, one, l), f, l);
    int dg = degree(g);
    if (dg > 0 && dg < degree(f)) {
      edf_odd(g, d, l, out);
      edf_odd(divmod(f, g, l).first, d, l, out);
      return;
    }
  }
  throw std::logic_error("flpoly: equal-degree splitting trial budget exhausted");
}

void edf_two(const Poly& f, int d, std::vector<Poly>& out) {
  const std::uint64_t l = 2;
  if (degree(f) == d) {
    out.push_back(f);
    return;
  }
  for (std::uint64_t e = 2; e < 2 + kSplitTrialCap; ++e) {
    Poly a = mod(poly_from_encoding(e, l), f, l);
    Poly acc = a;
    Poly trace = a;
    for (int i = 1; i < d; ++i) {
      acc = mulmod(acc, acc, f, l);
      trace = add(trace, acc, l);
    }
    Poly g = gcd(trace, f, l);
    int dg = degree(g);
    if (dg > 0 && dg < degree(f)) {
      edf_two(g, d, out);
      edf_two(divmod(f, g, l).first, d, out);
      return;
    }
  }
  throw std::logic_error("flpoly: equal-degree splitting trial budget exhausted");
}

// Distinct-degree then equal-degree factorization of a squarefree monic f.
std::vector<Poly> factor_squarefree(Poly f, std::uint64_t l) {
  std::vector<Poly> out;
  Poly x = monomial(1, 1, l);
  Poly h = mod(x, f, l);
  int k = 0;
  while (2 * (k + 1) <= degree(f)) {
    ++k;
    h = pow_mod(h, l, f, l);
    Poly g = gcd(sub(h, x, l), f, l);
    if (degree(g) > 0) {
      if (l == 2) {
        edf_two(g, k, out);
      } else {
        edf_odd(g, k, l, out);
      }
      f = divmod(f, g, l).first;
      h = mod(h, f, l);
    }
  }
  if (degree(f) > 0) out.push_back(f);
  return out;
}

// For f with zero derivative (every exponent divisible by l), returns u with
// f(x) = u(x^l); over the prime field the coefficient Frobenius is trivial.
Poly lth_root(const Poly& f, std::uint64_t l) {
  Poly u;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] == 0) continue;
    if (i % l != 0) throw std::logic_error("flpoly: lth_root on non-l-power poly");
    std::size_t j = i / l;
    if (u.size() <= j) u.resize(j + 1, 0);
    u[j] = f[i];
  }
  normalize(u);
  return u;
}

Poly squarefree_part(Poly f, std::uint64_t l) {
  for (;;) {
    Poly fd = derivative(f, l);
    if (is_zero(fd)) {
      f = lth_root(f, l);
      continue;
    }
    Poly g = gcd(f, fd, l);
    return divmod(f, g, l).first;
  }
}

}  // namespace

std::vector<std::pair<Poly, int>> factor(const Poly& f, std::uint64_t l) {
  if (is_zero(f)) throw std::invalid_argument("flpoly::factor: zero polynomial");
  std::uint64_t lead = f.back();
  Poly work = make_monic(f, l);
  std::vector<std::pair<Poly, int>> result;
  while (degree(work) > 0) {
    Poly s = squarefree_part(work, l);
    for (Poly& p : factor_squarefree(s, l)) {
      int e = 0;
      for (;;) {
        auto [q, r] = divmod(work, p, l);
        if (!is_zero(r)) break;
        work = q;
        ++e;
      }
      result.emplace_back(std::move(p), e);
    }
  }
  std::sort(result.begin(), result.end(),
            [](const auto& a, const auto& b) { return poly_less(a.first, b.first); });
  // Multiply back to confirm the factorization.
  Poly check = constant(lead, l);
  for (const auto& [p, e] : result) {
    for (int i = 0; i < e; ++i) check = mul(check, p, l);
  }
  if (check != f) throw std::logic_error("flpoly: factorization check failed");
  return result;
}

std::vector<std::uint64_t> roots(const Poly& f, std::uint64_t l) {
  if (is_zero(f)) throw std::invalid_argument("flpoly::roots: zero polynomial");
  if (degree(f) == 0) return {};
  Poly x = monomial(1, 1, l);
  Poly xl = pow_mod(x, l, f, l);
  Poly g = gcd(sub(xl, x, l), f, l);
  std::vector<std::uint64_t> rts;
  if (degree(g) > 0) {
    for (const auto& [p, e] : factor(g, l)) {
      (void)e;
      // p = x + c, root -c mod l.
      std::uint64_t c = p.size() > 1 ? p[0] : 0;
      rts.push_back(c == 0 ? 0 : l - c);
    }
  }
  std::sort(rts.begin(), rts.end());
  return rts;
}

}  // namespace weylforge::flpoly
