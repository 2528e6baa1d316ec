#include "weylforge/intpoly.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "weylforge/errors.hpp"
#include "weylforge/nt_util.hpp"

namespace weylforge {

namespace intpoly {

void normalize(IntPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

int degree(const IntPoly& p) { return static_cast<int>(p.size()) - 1; }

bool is_zero(const IntPoly& p) { return p.empty(); }

IntPoly from_coeffs(std::vector<mpz_class> c) {
  normalize(c);
  return c;
}

IntPoly add(const IntPoly& a, const IntPoly& b) {
  IntPoly r(std::max(a.size(), b.size()), mpz_class(0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  normalize(r);
  return r;
}

IntPoly sub(const IntPoly& a, const IntPoly& b) {
  IntPoly r(std::max(a.size(), b.size()), mpz_class(0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  normalize(r);
  return r;
}

IntPoly mul(const IntPoly& a, const IntPoly& b) {
  if (a.empty() || b.empty()) return {};
  IntPoly r(a.size() + b.size() - 1, mpz_class(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  normalize(r);
  return r;
}

IntPoly neg(const IntPoly& a) {
  IntPoly r = a;
  for (auto& c : r) c = -c;
  return r;
}

IntPoly scalar_mul(const IntPoly& a, const mpz_class& c) {
  if (c == 0) return {};
  IntPoly r = a;
  for (auto& x : r) x *= c;
  return r;
}

IntPoly derivative(const IntPoly& a) {
  if (a.size() <= 1) return {};
  IntPoly r(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i) {
    r[i - 1] = a[i] * static_cast<unsigned long>(i);
  }
  normalize(r);
  return r;
}

mpz_class eval(const IntPoly& a, const mpz_class& x) {
  mpz_class acc = 0;
  for (std::size_t i = a.size(); i-- > 0;) acc = acc * x + a[i];
  return acc;
}

std::pair<IntPoly, IntPoly> divmod_monic(const IntPoly& num, const IntPoly& den) {
  if (den.empty() || den.back() != 1) {
    throw std::invalid_argument("divmod_monic: divisor must be monic");
  }
  if (num.size() < den.size()) return {{}, num};
  IntPoly rem = num;
  IntPoly quo(num.size() - den.size() + 1, mpz_class(0));
  for (std::size_t i = num.size(); i-- >= den.size();) {
    if (rem[i] != 0) {
      mpz_class c = rem[i];
      std::size_t shift = i - (den.size() - 1);
      quo[shift] = c;
      for (std::size_t j = 0; j < den.size(); ++j) rem[shift + j] -= c * den[j];
    }
    if (i == den.size() - 1) break;
  }
  normalize(quo);
  normalize(rem);
  return {quo, rem};
}

std::optional<IntPoly> divide_exact_monic(const IntPoly& num, const IntPoly& den) {
  auto [q, r] = divmod_monic(num, den);
  if (!is_zero(r)) return std::nullopt;
  return q;
}

flpoly::Poly reduce_mod(const IntPoly& a, std::uint64_t l) {
  flpoly::Poly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = mpz_mod_u64(a[i], l);
  flpoly::normalize(r);
  return r;
}

mpz_class resultant(const IntPoly& a, const IntPoly& b) {
  int m = degree(a), n = degree(b);
  if (m < 0 || n < 0) return 0;
  if (m == 0 && n == 0) return 1;
  mpz_class res;
  if (m == 0) {
    mpz_pow_ui(res.get_mpz_t(), a[0].get_mpz_t(), static_cast<unsigned long>(n));
    return res;
  }
  if (n == 0) {
    mpz_pow_ui(res.get_mpz_t(), b[0].get_mpz_t(), static_cast<unsigned long>(m));
    return res;
  }
  // Sylvester matrix, fraction-free Gaussian elimination (Bareiss).
  int N = m + n;
  std::vector<std::vector<mpz_class>> S(
      static_cast<std::size_t>(N),
      std::vector<mpz_class>(static_cast<std::size_t>(N), mpz_class(0)));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= m; ++j) {
      S[static_cast<std::size_t>(i)][static_cast<std::size_t>(i + j)] =
          a[static_cast<std::size_t>(m - j)];
    }
  }
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j <= n; ++j) {
      S[static_cast<std::size_t>(n + i)][static_cast<std::size_t>(i + j)] =
          b[static_cast<std::size_t>(n - j)];
    }
  }
  int sign = 1;
  mpz_class prev = 1;
  for (int k = 0; k < N - 1; ++k) {
    auto uk = static_cast<std::size_t>(k);
    if (S[uk][uk] == 0) {
      int swap_row = -1;
      for (int r = k + 1; r < N; ++r) {
        if (S[static_cast<std::size_t>(r)][uk] != 0) {
          swap_row = r;
          break;
        }
      }
      if (swap_row < 0) return 0;
      std::swap(S[uk], S[static_cast<std::size_t>(swap_row)]);
      sign = -sign;
    }
    for (int i = k + 1; i < N; ++i) {
      auto ui = static_cast<std::size_t>(i);
      for (int j = k + 1; j < N; ++j) {
        auto uj = static_cast<std::size_t>(j);
        mpz_class t = S[ui][uj] * S[uk][uk] - S[ui][uk] * S[uk][uj];
        mpz_divexact(S[ui][uj].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      S[ui][uk] = 0;
    }
    prev = S[uk][uk];
  }
  mpz_class det = S[static_cast<std::size_t>(N - 1)][static_cast<std::size_t>(N - 1)];
  return sign < 0 ? mpz_class(-det) : det;
}

mpz_class discriminant(const IntPoly& h) {
  int d = degree(h);
  if (d < 1) throw std::invalid_argument("discriminant: degree must be >= 1");
  if (h.back() != 1) throw std::invalid_argument("discriminant: poly must be monic");
  if (d == 1) return 1;
  mpz_class r = resultant(h, derivative(h));
  // (-1)^{d(d-1)/2}
  if (((static_cast<long>(d) * (d - 1)) / 2) % 2 != 0) r = -r;
  return r;
}

namespace {

using QPoly = std::vector<mpq_class>;

void q_normalize(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

QPoly q_mod(const QPoly& num, const QPoly& den) {
  QPoly rem = num;
  while (rem.size() >= den.size() && !rem.empty()) {
    mpq_class c = rem.back() / den.back();
    std::size_t shift = rem.size() - den.size();
    for (std::size_t j = 0; j < den.size(); ++j) rem[shift + j] -= c * den[j];
    rem.pop_back();  // leading term cancels exactly
    q_normalize(rem);
    if (rem.size() < den.size()) break;
  }
  return rem;
}

int sign_of(const mpq_class& x) { return sgn(x); }

QPoly to_qpoly(const IntPoly& h) {
  QPoly p(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) p[i] = mpq_class(h[i]);
  return p;
}

std::vector<QPoly> sturm_chain(const IntPoly& h) {
  std::vector<QPoly> chain;
  chain.push_back(to_qpoly(h));
  chain.push_back(to_qpoly(derivative(h)));
  while (!chain.back().empty()) {
    QPoly r = q_mod(chain[chain.size() - 2], chain.back());
    if (r.empty()) break;
    for (auto& c : r) c = -c;
    chain.push_back(std::move(r));
  }
  return chain;
}

// Sign variations of the chain at -inf (sign = lc * (-1)^deg) or +inf (lc).
int variations_at_infinity(const std::vector<QPoly>& chain, bool minus_inf) {
  int count = 0, last = 0;
  for (const QPoly& p : chain) {
    if (p.empty()) continue;
    int s = sign_of(p.back());
    if (minus_inf && (p.size() - 1) % 2 != 0) s = -s;
    if (last != 0 && s != 0 && s != last) ++count;
    if (s != 0) last = s;
  }
  return count;
}

int variations_at_point(const std::vector<QPoly>& chain, const mpq_class& x) {
  int count = 0, last = 0;
  for (const QPoly& p : chain) {
    if (p.empty()) continue;
    mpq_class v = 0;
    for (std::size_t i = p.size(); i-- > 0;) v = v * x + p[i];
    int s = sign_of(v);
    if (last != 0 && s != 0 && s != last) ++count;
    if (s != 0) last = s;
  }
  return count;
}

// Monic gcd over Q; empty result means gcd is a nonzero constant.
QPoly q_gcd(QPoly a, QPoly b) {
  q_normalize(a);
  q_normalize(b);
  while (!b.empty()) {
    QPoly r = q_mod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (a.size() <= 1) return {};
  mpq_class lc = a.back();
  for (auto& c : a) c /= lc;
  return a;
}

}  // namespace

int count_real_roots(const IntPoly& h) {
  if (degree(h) <= 0) return 0;
  std::vector<QPoly> chain = sturm_chain(h);
  return variations_at_infinity(chain, true) - variations_at_infinity(chain, false);
}

int count_real_roots_above(const IntPoly& h, const mpq_class& bound) {
  IntPoly p = h;
  // Strip any root at the bound itself: Sturm's V(a) - V(b) counts roots in
  // (a, b], so work with a polynomial nonzero at `bound` to keep the open
  // lower endpoint unambiguous even in the non-squarefree case.
  while (degree(p) > 0) {
    mpq_class v = 0;
    for (std::size_t i = p.size(); i-- > 0;) v = v * bound + p[i];
    if (v != 0) break;
    // Exact synthetic division by (x - bound); p has rational root `bound`,
    // so clearing denominators keeps coefficients integral when bound is.
    QPoly q(p.size() - 1);
    mpq_class carry = 0;
    for (std::size_t i = p.size(); i-- > 1;) {
      carry = carry * bound + mpq_class(p[i]);
      q[i - 1] = carry;
    }
    IntPoly next(q.size());
    mpz_class lcm = 1;
    for (const auto& c : q) lcm = lcm / gcd(lcm, c.get_den()) * c.get_den();
    for (std::size_t i = 0; i < q.size(); ++i) {
      mpq_class scaled = q[i] * lcm;
      next[i] = scaled.get_num();
    }
    p = std::move(next);
    normalize(p);
  }
  if (degree(p) <= 0) return 0;
  std::vector<QPoly> chain = sturm_chain(p);
  return variations_at_point(chain, bound) - variations_at_infinity(chain, false);
}

int squarefree_part_degree(const IntPoly& h) {
  int d = degree(h);
  if (d <= 0) return 0;
  QPoly g = q_gcd(to_qpoly(h), to_qpoly(derivative(h)));
  int gd = g.empty() ? 0 : static_cast<int>(g.size()) - 1;
  return d - gd;
}

IntPoly squarefree_part(const IntPoly& h) {
  int d = degree(h);
  if (d <= 0) return h;
  if (h.back() != 1)
    throw DomainError(errc::internal_error, "squarefree_part requires a monic polynomial");
  QPoly g = q_gcd(to_qpoly(h), to_qpoly(derivative(h)));
  if (g.empty()) return h;
  // Monic divisors of a monic integer polynomial have integer coefficients,
  // so the quotient below is exact over the integers.
  IntPoly gi(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g[i].get_den() != 1)
      throw DomainError(errc::internal_error, "non-integer monic gcd of integer polynomials");
    gi[i] = g[i].get_num();
  }
  std::optional<IntPoly> q = divide_exact_monic(h, gi);
  if (!q)
    throw DomainError(errc::internal_error, "gcd does not divide its argument");
  return *q;
}

}  // namespace intpoly

// ---------------------------------------------------------------------------

SignedCycleType SignedCycleType::regular(std::vector<std::pair<int, int>> c) {
  std::sort(c.begin(), c.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    return a.second > b.second;  // '+' (=+1) before '-' (=-1)
  });
  return {TypeKind::Regular, std::move(c)};
}

bool SignedCycleType::all_lengths_one() const {
  for (const auto& [len, sign] : cycles) {
    (void)sign;
    if (len != 1) return false;
  }
  return true;
}

int SignedCycleType::minus_count() const {
  int c = 0;
  for (const auto& [len, sign] : cycles) {
    (void)len;
    if (sign < 0) ++c;
  }
  return c;
}

int SignedCycleType::total_length() const {
  int c = 0;
  for (const auto& [len, sign] : cycles) {
    (void)sign;
    c += len;
  }
  return c;
}

std::string SignedCycleType::to_string() const {
  if (kind == TypeKind::Ramified) return "ram";
  if (kind == TypeKind::NonRegular) return "nonreg";
  std::string s;
  for (std::size_t i = 0; i < cycles.size(); ++i) {
    if (i > 0) s += ',';
    s += std::to_string(cycles[i].first);
    s += cycles[i].second > 0 ? '+' : '-';
  }
  return s;
}

SignedCycleType SignedCycleType::parse(const std::string& str) {
  if (str == "ram") return ramified();
  if (str == "nonreg") return nonregular();
  std::vector<std::pair<int, int>> cycles;
  std::size_t pos = 0;
  while (pos < str.size()) {
    std::size_t end = str.find(',', pos);
    if (end == std::string::npos) end = str.size();
    std::string tok = str.substr(pos, end - pos);
    if (tok.size() < 2 || (tok.back() != '+' && tok.back() != '-')) {
      throw DomainError(errc::bad_config, "bad signed cycle token: '" + tok + "'");
    }
    int len = 0;
    for (std::size_t i = 0; i + 1 < tok.size(); ++i) {
      if (tok[i] < '0' || tok[i] > '9') {
        throw DomainError(errc::bad_config, "bad signed cycle token: '" + tok + "'");
      }
      len = len * 10 + (tok[i] - '0');
    }
    if (len < 1) {
      throw DomainError(errc::bad_config, "cycle length must be positive");
    }
    cycles.emplace_back(len, tok.back() == '+' ? 1 : -1);
    pos = end + 1;
  }
  if (cycles.empty()) {
    throw DomainError(errc::bad_config, "empty signed cycle type");
  }
  return regular(std::move(cycles));
}

bool SignedCycleType::operator<(const SignedCycleType& o) const {
  if (kind != o.kind) return static_cast<int>(kind) < static_cast<int>(o.kind);
  return cycles < o.cycles;
}

std::vector<std::pair<int, int>> FactorPattern::degree_pattern() const {
  std::vector<std::pair<int, int>> out;
  for (const auto& [p, e] : factors) {
    out.emplace_back(flpoly::degree(p), e);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool FactorPattern::squarefree() const {
  for (const auto& [p, e] : factors) {
    (void)p;
    if (e > 1) return false;
  }
  return true;
}

FactorPattern factor_mod(const IntPoly& h, std::uint64_t l) {
  if (!is_prime_u64(l)) {
    throw DomainError(errc::not_prime,
                      "modulus " + std::to_string(l) + " is not prime");
  }
  flpoly::Poly hbar = intpoly::reduce_mod(h, l);
  if (flpoly::is_zero(hbar)) {
    throw DomainError(errc::bad_config, "polynomial vanishes mod l");
  }
  FactorPattern fp;
  fp.l = l;
  if (flpoly::degree(hbar) > 0) fp.factors = flpoly::factor(hbar, l);
  return fp;
}

IntPoly real_subfield_poly(const IntPoly& h, const mpz_class& w) {
  int n = intpoly::degree(h);
  if (n <= 0 || n % 2 != 0) {
    throw DomainError(errc::not_cm_symmetric,
                      "degree must be a positive even number");
  }
  if (h.back() != 1) {
    throw DomainError(errc::not_cm_symmetric, "polynomial must be monic");
  }
  if (w <= 0) {
    throw DomainError(errc::not_cm_symmetric, "weight must be positive");
  }
  int g = n / 2;
  // Functional equation c_j = c_{2g-j} * w^{g-j} for j = 0..g-1.
  for (int j = 0; j < g; ++j) {
    mpz_class wpow;
    mpz_pow_ui(wpow.get_mpz_t(), w.get_mpz_t(), static_cast<unsigned long>(g - j));
    if (h[static_cast<std::size_t>(j)] !=
        h[static_cast<std::size_t>(2 * g - j)] * wpow) {
      throw DomainError(errc::not_cm_symmetric,
                        "functional equation fails at coefficient " +
                            std::to_string(j));
    }
  }
  // Peel off r_j against the basis P_j(T) = T^{g-j} (T^2 + w)^j, j = g..0.
  std::vector<IntPoly> t2w_pow(static_cast<std::size_t>(g) + 1);
  t2w_pow[0] = {mpz_class(1)};
  IntPoly t2w = {w, mpz_class(0), mpz_class(1)};
  for (int j = 1; j <= g; ++j) {
    t2w_pow[static_cast<std::size_t>(j)] =
        intpoly::mul(t2w_pow[static_cast<std::size_t>(j) - 1], t2w);
  }
  IntPoly residual = h;
  IntPoly real(static_cast<std::size_t>(g) + 1, mpz_class(0));
  for (int j = g; j >= 0; --j) {
    mpz_class rj = 0;
    if (static_cast<std::size_t>(g + j) < residual.size()) {
      rj = residual[static_cast<std::size_t>(g + j)];
    }
    real[static_cast<std::size_t>(j)] = rj;
    if (rj != 0) {
      IntPoly pj = t2w_pow[static_cast<std::size_t>(j)];
      // Shift by T^{g-j}.
      IntPoly shifted(static_cast<std::size_t>(g - j), mpz_class(0));
      shifted.insert(shifted.end(), pj.begin(), pj.end());
      residual = intpoly::sub(residual, intpoly::scalar_mul(shifted, rj));
    }
  }
  if (!intpoly::is_zero(residual)) {
    throw std::logic_error("real_subfield_poly: nonzero residual");
  }
  intpoly::normalize(real);
  return real;
}

SignedCycleType signed_cycle_type(const IntPoly& h, const IntPoly& h_real,
                                  std::uint64_t l) {
  mpz_class dh = intpoly::discriminant(h);
  mpz_class dhr = intpoly::degree(h_real) >= 1
                      ? intpoly::discriminant(h_real)
                      : mpz_class(1);
  int g = intpoly::degree(h) / 2;
  mpz_class w;
  if (intpoly::is_zero(h) || h[0] <= 0 ||
      mpz_root(w.get_mpz_t(), h[0].get_mpz_t(),
               static_cast<unsigned long>(g)) == 0) {
    throw DomainError(errc::not_cm_symmetric,
                      "constant term is not an exact g-th power");
  }
  return signed_cycle_type_with(h, h_real, l, dh, dhr, w);
}

SignedCycleType signed_cycle_type_with(const IntPoly& h, const IntPoly& h_real,
                                       std::uint64_t l, const mpz_class& dh,
                                       const mpz_class& dhr, const mpz_class& w) {
  if (!is_prime_u64(l)) {
    throw DomainError(errc::not_prime,
                      "modulus " + std::to_string(l) + " is not prime");
  }
  if (dh == 0 || dhr == 0) {
    throw DomainError(errc::not_squarefree,
                      "polynomial is not squarefree");
  }
  int n = intpoly::degree(h);
  int g = intpoly::degree(h_real);
  if (n != 2 * g || g < 1) {
    throw DomainError(errc::not_cm_symmetric,
                      "degree mismatch between h and h_real");
  }
  if (mpz_divisible_ui_p(dh.get_mpz_t(), l) ||
      mpz_divisible_ui_p(dhr.get_mpz_t(), l)) {
    return SignedCycleType::ramified();
  }
  std::uint64_t wl = mpz_mod_u64(w, l);

  flpoly::Poly hbar = intpoly::reduce_mod(h, l);
  flpoly::Poly hrbar = intpoly::reduce_mod(h_real, l);
  if (flpoly::degree(hbar) != n || flpoly::degree(hrbar) != g) {
    throw std::logic_error("signed_cycle_type: monic reduction lost degree");
  }
  auto hfac = flpoly::factor(hbar, l);
  auto hrfac = flpoly::factor(hrbar, l);
  for (const auto& [p, e] : hfac) {
    (void)p;
    if (e != 1) throw std::logic_error("signed_cycle_type: hbar not squarefree");
  }
  for (const auto& [p, e] : hrfac) {
    (void)p;
    if (e != 1) throw std::logic_error("signed_cycle_type: hrbar not squarefree");
  }

  // Lift polynomial N_u(T) = T^k u(T + w/T) = sum_j b_j T^{k-j} (T^2 + w)^j.
  std::vector<flpoly::Poly> lifts;
  for (const auto& [u, e] : hrfac) {
    (void)e;
    int k = flpoly::degree(u);
    flpoly::Poly acc;
    flpoly::Poly t2w = flpoly::from_coeffs({wl, 0, 1}, l);
    flpoly::Poly t2w_pow = flpoly::constant(1, l);
    std::vector<flpoly::Poly> pows(static_cast<std::size_t>(k) + 1);
    for (int j = 0; j <= k; ++j) {
      pows[static_cast<std::size_t>(j)] = t2w_pow;
      t2w_pow = flpoly::mul(t2w_pow, t2w, l);
    }
    for (int j = 0; j <= k; ++j) {
      std::uint64_t bj = static_cast<std::size_t>(j) < u.size()
                             ? u[static_cast<std::size_t>(j)]
                             : 0;
      if (bj == 0) continue;
      flpoly::Poly term = flpoly::scalar_mul(
          flpoly::mul(flpoly::monomial(k - j, 1, l),
                      pows[static_cast<std::size_t>(j)], l),
          bj, l);
      acc = flpoly::add(acc, term, l);
    }
    lifts.push_back(std::move(acc));
  }

  // Associate each factor v of hbar with the unique u whose lift it divides.
  std::vector<std::vector<int>> grouped(hrfac.size());
  for (std::size_t vi = 0; vi < hfac.size(); ++vi) {
    const flpoly::Poly& v = hfac[vi].first;
    int owner = -1;
    for (std::size_t ui = 0; ui < lifts.size(); ++ui) {
      if (flpoly::is_zero(flpoly::mod(lifts[ui], v, l))) {
        if (owner >= 0) {
          throw DomainError(errc::inconsistent_lift,
                            "factor of h lies over two factors of h_real at l = " +
                                std::to_string(l));
        }
        owner = static_cast<int>(ui);
      }
    }
    if (owner < 0) {
      throw DomainError(errc::inconsistent_lift,
                        "factor of h lies over no factor of h_real at l = " +
                            std::to_string(l));
    }
    grouped[static_cast<std::size_t>(owner)].push_back(static_cast<int>(vi));
  }

  std::vector<std::pair<int, int>> cycles;
  for (std::size_t ui = 0; ui < hrfac.size(); ++ui) {
    int k = flpoly::degree(hrfac[ui].first);
    const auto& vs = grouped[ui];
    if (vs.size() == 2 &&
        flpoly::degree(hfac[static_cast<std::size_t>(vs[0])].first) == k &&
        flpoly::degree(hfac[static_cast<std::size_t>(vs[1])].first) == k) {
      cycles.emplace_back(k, 1);
    } else if (vs.size() == 1 &&
               flpoly::degree(hfac[static_cast<std::size_t>(vs[0])].first) ==
                   2 * k) {
      cycles.emplace_back(k, -1);
    } else {
      throw DomainError(errc::inconsistent_lift,
                        "inconsistent factor grouping above l = " +
                            std::to_string(l));
    }
  }
  SignedCycleType t = SignedCycleType::regular(std::move(cycles));
  if (t.total_length() != g) {
    throw DomainError(errc::inconsistent_lift, "cycle lengths do not sum to g");
  }
  return t;
}

// ---------------------------------------------------------------------------
// Irreducibility over Q.

namespace {

// All positive divisors of |n|, or nullopt when |n| is too large to factor
// quickly by trial division.
std::optional<std::vector<mpz_class>> small_divisors(const mpz_class& n) {
  mpz_class a = abs(n);
  if (a == 0) return std::vector<mpz_class>{};
  if (a > mpz_class("1000000000000")) return std::nullopt;
  std::uint64_t v = mpz_get_ui(a.get_mpz_t());
  std::vector<std::pair<std::uint64_t, int>> fac;
  for (std::uint64_t p = 2; p * p <= v; p += (p == 2 ? 1 : 2)) {
    if (v % p == 0) {
      int e = 0;
      while (v % p == 0) {
        v /= p;
        ++e;
      }
      fac.emplace_back(p, e);
    }
  }
  if (v > 1) fac.emplace_back(v, 1);
  std::vector<mpz_class> divs = {mpz_class(1)};
  for (const auto& [p, e] : fac) {
    std::size_t base = divs.size();
    mpz_class pe = 1;
    for (int i = 1; i <= e; ++i) {
      pe *= static_cast<unsigned long>(p);
      for (std::size_t j = 0; j < base; ++j) divs.push_back(divs[j] * pe);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

// Lifts a mod-p coefficient vector to a balanced/unbalanced IntPoly in [0, p).
IntPoly lift_poly(const flpoly::Poly& f) {
  IntPoly r(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    r[i] = mpz_class(static_cast<unsigned long>(f[i]));
  }
  return r;
}

IntPoly reduce_into(const IntPoly& f, const mpz_class& mod) {
  IntPoly r = f;
  for (auto& c : r) {
    c %= mod;
    if (c < 0) c += mod;
  }
  intpoly::normalize(r);
  return r;
}

IntPoly balance(const IntPoly& f, const mpz_class& mod) {
  IntPoly r = reduce_into(f, mod);
  for (auto& c : r) {
    if (2 * c > mod) c -= mod;
  }
  intpoly::normalize(r);
  return r;
}

// Linear Hensel lift of the pair (g0, h0) with F = G*H mod p^k, all monic.
// Bezout data s*g0 + t*h0 = 1 mod p.
void hensel_pair(const IntPoly& F, const flpoly::Poly& g0, const flpoly::Poly& h0,
                 const flpoly::Poly& s, const flpoly::Poly& t, std::uint64_t p,
                 const mpz_class& pk, IntPoly& G, IntPoly& H) {
  G = lift_poly(g0);
  H = lift_poly(h0);
  mpz_class pj = static_cast<unsigned long>(p);
  while (pj < pk) {
    IntPoly defect = intpoly::sub(reduce_into(F, pk), intpoly::mul(G, H));
    // Every coefficient of the defect is divisible by p^j.
    flpoly::Poly d(defect.size());
    for (std::size_t i = 0; i < defect.size(); ++i) {
      mpz_class q, r;
      mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), defect[i].get_mpz_t(),
                  pj.get_mpz_t());
      if (r != 0) throw std::logic_error("hensel_pair: defect not divisible");
      d[i] = mpz_mod_u64(q, p);
    }
    flpoly::normalize(d);
    // Solve u*h0 + v*g0 = d (mod p) with deg u < deg g0, deg v < deg h0.
    flpoly::Poly u = flpoly::mod(flpoly::mul(t, d, p), g0, p);
    flpoly::Poly num = flpoly::sub(d, flpoly::mul(u, h0, p), p);
    auto [v, rem] = flpoly::divmod(num, g0, p);
    if (!flpoly::is_zero(rem)) {
      throw std::logic_error("hensel_pair: correction division failed");
    }
    IntPoly up = intpoly::scalar_mul(lift_poly(u), pj);
    IntPoly vp = intpoly::scalar_mul(lift_poly(v), pj);
    mpz_class pj1 = pj * static_cast<unsigned long>(p);
    G = reduce_into(intpoly::add(G, up), pj1 < pk ? pj1 : pk);
    H = reduce_into(intpoly::add(H, vp), pj1 < pk ? pj1 : pk);
    pj = pj1;
  }
}

// Lifts the full list of pairwise-coprime monic mod-p factors of F to mod p^k.
void hensel_tree(const IntPoly& F, const std::vector<flpoly::Poly>& factors,
                 std::size_t lo, std::size_t hi, std::uint64_t p,
                 const mpz_class& pk, std::vector<IntPoly>& out) {
  if (hi - lo == 1) {
    out[lo] = reduce_into(F, pk);
    return;
  }
  std::size_t mid = lo + (hi - lo) / 2;
  flpoly::Poly g0 = flpoly::constant(1, p);
  for (std::size_t i = lo; i < mid; ++i) g0 = flpoly::mul(g0, factors[i], p);
  flpoly::Poly h0 = flpoly::constant(1, p);
  for (std::size_t i = mid; i < hi; ++i) h0 = flpoly::mul(h0, factors[i], p);
  auto bez = flpoly::ext_gcd(g0, h0, p);
  if (flpoly::degree(bez.g) != 0) {
    throw std::logic_error("hensel_tree: factors not coprime");
  }
  IntPoly G, H;
  hensel_pair(F, g0, h0, bez.s, bez.t, p, pk, G, H);
  hensel_tree(G, factors, lo, mid, p, pk, out);
  hensel_tree(H, factors, mid, hi, p, pk, out);
}

}  // namespace

IrreducibilityResult irreducibility_over_q(const IntPoly& h,
                                           const IrredOptions& opts) {
  int n = intpoly::degree(h);
  if (n < 1) {
    throw DomainError(errc::bad_config, "degree must be at least 1");
  }
  if (h.back() != 1) {
    throw DomainError(errc::bad_config, "polynomial must be monic");
  }
  IrreducibilityResult res;
  if (n == 1) {
    res.status = IrredStatus::Irreducible;
    res.method = IrredMethod::Degree;
    return res;
  }
  mpz_class disc = intpoly::discriminant(h);
  if (disc == 0) {
    throw DomainError(errc::not_squarefree,
                      "discriminant vanishes: polynomial is not squarefree");
  }

  // Tier 0: rational (integer) roots.  Monic, so candidate roots divide c_0.
  auto divs = small_divisors(h[0]);
  bool screen_complete = divs.has_value();
  if (h[0] == 0) {
    IntPoly t = {mpz_class(0), mpz_class(1)};
    auto q = intpoly::divide_exact_monic(h, t);
    res.status = IrredStatus::Reducible;
    res.method = IrredMethod::RationalRoot;
    res.witness = std::make_pair(t, *q);
    return res;
  }
  if (screen_complete) {
    for (const mpz_class& d : *divs) {
      for (int sign : {1, -1}) {
        mpz_class cand = sign > 0 ? d : mpz_class(-d);
        if (intpoly::eval(h, cand) == 0) {
          IntPoly lin = {mpz_class(-cand), mpz_class(1)};
          auto q = intpoly::divide_exact_monic(h, lin);
          res.status = IrredStatus::Reducible;
          res.method = IrredMethod::RationalRoot;
          res.witness = std::make_pair(lin, *q);
          return res;
        }
      }
    }
    if (n <= 3) {
      // A reducible monic cubic or quadratic has an integer root.
      res.status = IrredStatus::Irreducible;
      res.method = IrredMethod::RationalRoot;
      return res;
    }
  }

  // Tier 1: irreducibility mod l certifies irreducibility over Q.
  int tried = 0;
  std::uint64_t l = 2;
  while (tried < opts.prime_budget) {
    if (!mpz_divisible_ui_p(disc.get_mpz_t(), l)) {
      ++tried;
      flpoly::Poly hbar = intpoly::reduce_mod(h, l);
      if (flpoly::is_irreducible(hbar, l)) {
        res.status = IrredStatus::Irreducible;
        res.method = IrredMethod::ModPCertificate;
        res.certificate_prime = l;
        res.primes_tried = tried;
        return res;
      }
    }
    l = next_prime(l);
  }
  res.primes_tried = tried;

  // Tier 2: Hensel lifting plus factor recombination; definite for deg <= 8.
  if (n > 8) {
    res.status = IrredStatus::Inconclusive;
    return res;
  }
  std::uint64_t p = 3;
  while (mpz_divisible_ui_p(disc.get_mpz_t(), p)) p = next_prime(p);
  auto pfac = flpoly::factor(intpoly::reduce_mod(h, p), p);
  std::vector<flpoly::Poly> fs;
  for (auto& [f, e] : pfac) {
    if (e != 1) throw std::logic_error("zassenhaus: mod-p factor not simple");
    fs.push_back(f);
  }
  std::size_t r = fs.size();
  if (r == 1) {
    res.status = IrredStatus::Irreducible;
    res.method = IrredMethod::ModPCertificate;
    res.certificate_prime = p;
    return res;
  }

  // Coefficient bound for monic factors: 2^n * ||h||_2, doubled for balancing.
  mpz_class norm2 = 0;
  for (const auto& c : h) norm2 += c * c;
  mpz_class sq;
  mpz_sqrt(sq.get_mpz_t(), norm2.get_mpz_t());
  mpz_class bound = (sq + 1) << static_cast<unsigned>(n);
  mpz_class target = 2 * bound + 1;
  mpz_class pk = static_cast<unsigned long>(p);
  while (pk < target) pk *= static_cast<unsigned long>(p);

  std::vector<IntPoly> lifted(r);
  hensel_tree(h, fs, 0, r, p, pk, lifted);

  // Deterministic subset recombination: sizes ascending, masks ascending; for
  // size exactly r/2 keep only masks containing factor 0 (complement symmetry).
  for (std::size_t size = 1; 2 * size <= r; ++size) {
    for (std::uint32_t mask = 1; mask < (1u << r); ++mask) {
      if (static_cast<std::size_t>(__builtin_popcount(mask)) != size) continue;
      if (2 * size == r && (mask & 1u) == 0) continue;
      IntPoly cand = {mpz_class(1)};
      for (std::size_t i = 0; i < r; ++i) {
        if (mask & (1u << i)) cand = reduce_into(intpoly::mul(cand, lifted[i]), pk);
      }
      cand = balance(cand, pk);
      if (intpoly::degree(cand) < 1 || cand.back() != 1) continue;
      auto q = intpoly::divide_exact_monic(h, cand);
      if (q.has_value()) {
        res.status = IrredStatus::Reducible;
        res.method = IrredMethod::Zassenhaus;
        res.certificate_prime = p;
        res.witness = std::make_pair(cand, *q);
        return res;
      }
    }
  }
  res.status = IrredStatus::Irreducible;
  res.method = IrredMethod::Zassenhaus;
  res.certificate_prime = p;
  return res;
}

}  // namespace weylforge
