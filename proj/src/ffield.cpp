#include "weylforge/ffield.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "weylforge/errors.hpp"
#include "weylforge/nt_util.hpp"

namespace weylforge {

namespace {

void check_same(const FieldElement& a, const FieldElement& b) {
  if (!a.descriptor() || !b.descriptor() ||
      !(*a.descriptor() == *b.descriptor())) {
    throw DomainError(errc::descriptor_mismatch,
                      "field elements belong to different fields");
  }
}

flpoly::Poly to_poly(const FieldElement& a) {
  flpoly::Poly p = a.coeffs();
  flpoly::normalize(p);
  return p;
}

std::vector<std::uint64_t> pad(flpoly::Poly p, int m) {
  p.resize(static_cast<std::size_t>(m), 0);
  return p;
}

}  // namespace

bool FieldElement::is_zero() const {
  for (auto c : coeffs_) {
    if (c != 0) return false;
  }
  return true;
}

std::uint64_t FieldElement::encoding() const {
  std::uint64_t e = 0;
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    e = e * desc_->q + coeffs_[i];
  }
  return e;
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
  check_same(*this, o);
  std::vector<std::uint64_t> c(coeffs_.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    c[i] = add_mod(coeffs_[i], o.coeffs_[i], desc_->q);
  }
  return FieldElement(desc_, std::move(c));
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
  check_same(*this, o);
  std::vector<std::uint64_t> c(coeffs_.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    c[i] = sub_mod(coeffs_[i], o.coeffs_[i], desc_->q);
  }
  return FieldElement(desc_, std::move(c));
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
  check_same(*this, o);
  flpoly::Poly prod =
      flpoly::mulmod(to_poly(*this), to_poly(o), desc_->modulus, desc_->q);
  return FieldElement(desc_, pad(std::move(prod), desc_->m));
}

FieldElement FieldElement::operator-() const {
  std::vector<std::uint64_t> c(coeffs_.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    c[i] = coeffs_[i] == 0 ? 0 : desc_->q - coeffs_[i];
  }
  return FieldElement(desc_, std::move(c));
}

bool FieldElement::operator==(const FieldElement& o) const {
  return desc_ && o.desc_ && *desc_ == *o.desc_ && coeffs_ == o.coeffs_;
}

FieldElement FieldElement::inverse() const {
  if (is_zero()) {
    throw DomainError(errc::division_by_zero, "inverse of zero field element");
  }
  // Extended Euclid in F_q[x] against the modulus.
  const std::uint64_t q = desc_->q;
  flpoly::Poly r0 = desc_->modulus, r1 = to_poly(*this);
  flpoly::Poly s0 = {}, s1 = flpoly::constant(1, q);
  while (!flpoly::is_zero(r1)) {
    auto [quo, rem] = flpoly::divmod(r0, r1, q);
    flpoly::Poly s2 = flpoly::sub(s0, flpoly::mul(quo, s1, q), q);
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  // r0 = gcd (a nonzero constant since the modulus is irreducible).
  if (flpoly::degree(r0) != 0) {
    throw std::logic_error("ffield: inverse found nontrivial gcd with modulus");
  }
  flpoly::Poly inv = flpoly::scalar_mul(s0, inv_mod(r0[0], q), q);
  inv = flpoly::mod(inv, desc_->modulus, q);
  return FieldElement(desc_, pad(std::move(inv), desc_->m));
}

FieldElement FieldElement::pow(std::uint64_t e) const {
  FieldElement result(desc_, pad(flpoly::constant(1, desc_->q), desc_->m));
  FieldElement b = *this;
  while (e > 0) {
    if (e & 1) result = result * b;
    b = b * b;
    e >>= 1;
  }
  return result;
}

Field Field::build(std::uint64_t q, int m, std::uint64_t budget) {
  if (!is_prime_u64(q) || q == 2) {
    throw DomainError(errc::not_prime,
                      "q = " + std::to_string(q) + " is not an odd prime");
  }
  if (m < 1) throw DomainError(errc::bad_config, "extension degree must be >= 1");
  mpz_class sz;
  mpz_ui_pow_ui(sz.get_mpz_t(), q, static_cast<unsigned long>(m));
  if (sz > budget) {
    throw DomainError(errc::budget_exceeded,
                      "field size q^m = " + sz.get_str() +
                          " exceeds enumeration budget " + std::to_string(budget));
  }
  std::uint64_t size = mpz_get_ui(sz.get_mpz_t());

  // Canonical modulus: first irreducible x^m + (base-q digits of enc),
  // scanning enc upward.
  flpoly::Poly modulus;
  std::uint64_t lower_count = 1;
  for (int i = 0; i < m; ++i) lower_count *= q;
  for (std::uint64_t enc = 0; enc < lower_count; ++enc) {
    flpoly::Poly cand(static_cast<std::size_t>(m) + 1, 0);
    std::uint64_t e = enc;
    for (int i = 0; i < m; ++i) {
      cand[static_cast<std::size_t>(i)] = e % q;
      e /= q;
    }
    cand[static_cast<std::size_t>(m)] = 1;
    if (flpoly::is_irreducible(cand, q)) {
      modulus = std::move(cand);
      break;
    }
  }
  if (modulus.empty()) {
    throw std::logic_error("ffield: no irreducible modulus found");
  }
  auto desc = std::make_shared<FieldDescriptor>();
  desc->q = q;
  desc->m = m;
  desc->modulus = std::move(modulus);
  desc->size = size;
  return Field(std::move(desc));
}

FieldElement Field::zero() const {
  return FieldElement(desc_, std::vector<std::uint64_t>(desc_->m, 0));
}

FieldElement Field::one() const { return constant(1); }

FieldElement Field::constant(std::uint64_t c) const {
  std::vector<std::uint64_t> v(desc_->m, 0);
  v[0] = c % desc_->q;
  return FieldElement(desc_, std::move(v));
}

FieldElement Field::generator() const {
  if (desc_->m == 1) return zero();  // class of x modulo x
  std::vector<std::uint64_t> v(desc_->m, 0);
  v[1] = 1;
  return FieldElement(desc_, std::move(v));
}

FieldElement Field::element(std::vector<std::uint64_t> coeffs) const {
  if (coeffs.size() != static_cast<std::size_t>(desc_->m)) {
    throw DomainError(errc::descriptor_mismatch,
                      "coefficient vector length does not match field degree");
  }
  for (auto& c : coeffs) c %= desc_->q;
  return FieldElement(desc_, std::move(coeffs));
}

FieldElement Field::from_encoding(std::uint64_t e) const {
  if (e >= desc_->size) {
    throw DomainError(errc::descriptor_mismatch,
                      "element encoding out of range");
  }
  std::vector<std::uint64_t> v(desc_->m, 0);
  for (int i = 0; i < desc_->m; ++i) {
    v[static_cast<std::size_t>(i)] = e % desc_->q;
    e /= desc_->q;
  }
  return FieldElement(desc_, std::move(v));
}

int quadratic_character(const FieldElement& a) {
  if (a.is_zero()) return 0;
  const auto& d = *a.descriptor();
  FieldElement p = a.pow((d.size - 1) / 2);
  std::uint64_t enc = p.encoding();
  if (enc == 1) return 1;
  // -1 has encoding q - 1 (the constant q - 1).
  if (enc == d.q - 1) return -1;
  throw std::logic_error("ffield: quadratic character out of range");
}

// ---------------------------------------------------------------------------
// Polynomials with FieldElement coefficients, used only for root finding.

namespace {

using KPoly = std::vector<FieldElement>;

void kp_normalize(KPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

int kp_degree(const KPoly& p) { return static_cast<int>(p.size()) - 1; }

KPoly kp_sub(const KPoly& a, const KPoly& b, const Field& K) {
  KPoly r(std::max(a.size(), b.size()), K.zero());
  for (std::size_t i = 0; i < r.size(); ++i) {
    FieldElement x = i < a.size() ? a[i] : K.zero();
    FieldElement y = i < b.size() ? b[i] : K.zero();
    r[i] = x - y;
  }
  kp_normalize(r);
  return r;
}

KPoly kp_mul(const KPoly& a, const KPoly& b, const Field& K) {
  if (a.empty() || b.empty()) return {};
  KPoly r(a.size() + b.size() - 1, K.zero());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      r[i + j] = r[i + j] + a[i] * b[j];
    }
  }
  kp_normalize(r);
  return r;
}

std::pair<KPoly, KPoly> kp_divmod(const KPoly& num, const KPoly& den,
                                  const Field& K) {
  if (den.empty()) throw std::invalid_argument("kp_divmod: zero divisor");
  if (num.size() < den.size()) return {{}, num};
  KPoly rem = num;
  KPoly quo(num.size() - den.size() + 1, K.zero());
  FieldElement lc_inv = den.back().inverse();
  for (std::size_t i = num.size(); i-- >= den.size();) {
    if (rem[i].is_zero()) {
      if (i == den.size() - 1) break;
      continue;
    }
    FieldElement c = rem[i] * lc_inv;
    std::size_t shift = i - (den.size() - 1);
    quo[shift] = c;
    for (std::size_t j = 0; j < den.size(); ++j) {
      rem[shift + j] = rem[shift + j] - c * den[j];
    }
    if (i == den.size() - 1) break;
  }
  kp_normalize(quo);
  kp_normalize(rem);
  return {quo, rem};
}

KPoly kp_monic(const KPoly& a) {
  if (a.empty()) return a;
  KPoly r = a;
  FieldElement inv = a.back().inverse();
  for (auto& c : r) c = c * inv;
  return r;
}

KPoly kp_gcd(KPoly a, KPoly b, const Field& K) {
  while (!b.empty()) {
    KPoly r = kp_divmod(a, b, K).second;
    a = std::move(b);
    b = std::move(r);
  }
  return kp_monic(a);
}

KPoly kp_mulmod(const KPoly& a, const KPoly& b, const KPoly& m, const Field& K) {
  return kp_divmod(kp_mul(a, b, K), m, K).second;
}

KPoly kp_powmod(const KPoly& base, std::uint64_t e, const KPoly& m,
                const Field& K) {
  KPoly result = kp_divmod({K.one()}, m, K).second;
  KPoly b = kp_divmod(base, m, K).second;
  while (e > 0) {
    if (e & 1) result = kp_mulmod(result, b, m, K);
    b = kp_mulmod(b, b, m, K);
    e >>= 1;
  }
  return result;
}

// Splits a product of distinct monic linear factors; deterministic shifts.
void kp_split_linears(const KPoly& f, const Field& K,
                      std::vector<FieldElement>& out) {
  int d = kp_degree(f);
  if (d <= 0) return;
  if (d == 1) {
    out.push_back(-(kp_monic(f)[0]));
    return;
  }
  std::uint64_t half = (K.size() - 1) / 2;
  for (std::uint64_t t = 0; t < K.size(); ++t) {
    KPoly shifted = {K.from_encoding(t), K.one()};  // y + a
    KPoly s = kp_powmod(shifted, half, f, K);
    KPoly g = kp_gcd(kp_sub(s, {K.one()}, K), f, K);
    int dg = kp_degree(g);
    if (dg > 0 && dg < d) {
      kp_split_linears(g, K, out);
      kp_split_linears(kp_divmod(f, g, K).first, K, out);
      return;
    }
  }
  throw std::logic_error("ffield: linear splitting trials exhausted");
}

}  // namespace

std::vector<FieldElement> roots_in_field(const flpoly::Poly& f, const Field& K) {
  KPoly G;
  G.reserve(f.size());
  for (auto c : f) G.push_back(K.constant(c));
  kp_normalize(G);
  if (kp_degree(G) <= 0) return {};
  KPoly y = {K.zero(), K.one()};
  KPoly yq = kp_powmod(y, K.size(), G, K);
  KPoly lin = kp_gcd(kp_sub(yq, y, K), G, K);
  std::vector<FieldElement> rts;
  kp_split_linears(lin, K, rts);
  std::sort(rts.begin(), rts.end(), [](const FieldElement& a, const FieldElement& b) {
    return a.encoding() < b.encoding();
  });
  return rts;
}

// ---------------------------------------------------------------------------
// Coherent subfield embeddings.
//
// The canonical image G_d in `big` of the generator of the canonical field
// F_{q^d} is defined level by level, divisors ascending: G_d is the smallest
// root (by element encoding) of the canonical degree-d modulus in `big` that
// is compatible with all lower levels, i.e. for every proper divisor d' > 1 of
// d, evaluating the canonical image of gen_{d'} inside F_{q^d} at G_d must
// reproduce G_{d'}.  This makes every triangle of embeddings commute, which a
// plain smallest-root choice does not guarantee.

namespace {

// Internal canonical reconstructions are of fields no larger than one already
// validated against the caller's budget, so they skip the budget check.
constexpr std::uint64_t kInternalBudget = ~std::uint64_t{0};

FieldElement canonical_gen_image(const Field& big, int d,
                                 std::map<int, FieldElement>& memo);

// Coordinates (over F_q) of the canonical image of gen_{q^s} inside the
// canonical field F_{q^d}, for s | d, s < d.
std::vector<std::uint64_t> gen_image_coords(std::uint64_t q, int s, int d) {
  Field fd = Field::build(q, d, kInternalBudget);
  Field fs = Field::build(q, s, kInternalBudget);
  Embedding e = embed_subfield(fd, fs);
  return e(fs.generator()).coeffs();
}

FieldElement canonical_gen_image(const Field& big, int d,
                                 std::map<int, FieldElement>& memo) {
  auto it = memo.find(d);
  if (it != memo.end()) return it->second;
  Field fd = Field::build(big.q(), d, kInternalBudget);
  std::vector<FieldElement> cands = roots_in_field(fd.modulus(), big);
  for (int dp = 2; dp < d; ++dp) {
    if (d % dp != 0) continue;
    FieldElement target = canonical_gen_image(big, dp, memo);
    std::vector<std::uint64_t> coords = gen_image_coords(big.q(), dp, d);
    std::vector<FieldElement> kept;
    for (const FieldElement& y : cands) {
      // Evaluate sum coords[i] * y^i in big.
      FieldElement acc = big.zero();
      FieldElement p = big.one();
      for (std::size_t i = 0; i < coords.size(); ++i) {
        if (coords[i] != 0) acc = acc + big.constant(coords[i]) * p;
        if (i + 1 < coords.size()) p = p * y;
      }
      if (acc == target) kept.push_back(y);
    }
    cands = std::move(kept);
  }
  if (cands.empty()) {
    throw std::logic_error("ffield: coherent embedding candidate set empty");
  }
  memo.emplace(d, cands.front());
  return cands.front();
}

}  // namespace

FieldElement Embedding::operator()(const FieldElement& a) const {
  if (!a.descriptor() || !(*a.descriptor() == *domain_.descriptor())) {
    throw DomainError(errc::descriptor_mismatch,
                      "embedding applied to element of the wrong field");
  }
  FieldElement acc = codomain_.zero();
  const auto& c = a.coeffs();
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] != 0) acc = acc + codomain_.constant(c[i]) * gen_powers_[i];
  }
  return acc;
}

Embedding embed_subfield(const Field& big, const Field& small) {
  if (big.q() != small.q()) {
    throw DomainError(errc::not_a_subfield,
                      "fields have different characteristic");
  }
  if (big.m() % small.m() != 0) {
    throw DomainError(errc::not_a_subfield,
                      "degree " + std::to_string(small.m()) +
                          " does not divide " + std::to_string(big.m()));
  }
  std::vector<FieldElement> powers;
  if (small.m() == big.m()) {
    FieldElement g = big.generator();
    FieldElement p = big.one();
    for (int i = 0; i < small.m(); ++i) {
      powers.push_back(p);
      p = p * g;
    }
    return Embedding(small, big, std::move(powers));
  }
  if (small.m() == 1) {
    powers.push_back(big.one());
    return Embedding(small, big, std::move(powers));
  }
  std::map<int, FieldElement> memo;
  FieldElement G = canonical_gen_image(big, small.m(), memo);
  FieldElement p = big.one();
  for (int i = 0; i < small.m(); ++i) {
    powers.push_back(p);
    p = p * G;
  }
  return Embedding(small, big, std::move(powers));
}

}  // namespace weylforge
