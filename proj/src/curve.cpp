#include "weylforge/curve.hpp"

#include <stdexcept>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "weylforge/errors.hpp"
#include "weylforge/nt_util.hpp"

namespace weylforge {

namespace {

void check_genus(std::uint64_t q, int g) {
  if (g < 1) throw DomainError(errc::bad_config, "genus must be >= 1");
  if (q <= 2 * static_cast<std::uint64_t>(g)) {
    throw DomainError(errc::genus_prime_conflict,
                      "q = " + std::to_string(q) + " <= 2g = " +
                          std::to_string(2 * g) +
                          ": markers 1..2g collide in F_q");
  }
}

bool t_is_marker(const Field& base, std::uint64_t t_enc, int g) {
  // Markers are the constants 1..2g, whose encodings equal their values
  // reduced mod q (they are distinct since q > 2g).
  for (int i = 1; i <= 2 * g; ++i) {
    if (t_enc == static_cast<std::uint64_t>(i) % base.q()) return true;
  }
  return false;
}

}  // namespace

void validate_curve_spec(const CurveSpec& spec, std::uint64_t budget) {
  check_genus(spec.q, spec.g);
  if (spec.n < 1) throw DomainError(errc::bad_config, "n must be >= 1");
  Field base = Field::build(spec.q, spec.n, budget);
  if (spec.t_enc >= base.size()) {
    throw DomainError(errc::bad_config, "t encoding out of range");
  }
  if (t_is_marker(base, spec.t_enc, spec.g)) {
    throw DomainError(errc::not_squarefree,
                      "t collides with a marker: the right-hand side has a "
                      "repeated root");
  }
}

std::vector<std::uint64_t> valid_t_encodings(std::uint64_t q, int n, int g,
                                             std::uint64_t budget) {
  check_genus(q, g);
  if (n < 1) throw DomainError(errc::bad_config, "n must be >= 1");
  Field base = Field::build(q, n, budget);
  std::vector<std::uint64_t> out;
  out.reserve(base.size());
  for (std::uint64_t e = 0; e < base.size(); ++e) {
    if (!t_is_marker(base, e, g)) out.push_back(e);
  }
  return out;
}

mpz_class count_points(const CurveSpec& spec, int m, std::uint64_t budget) {
  validate_curve_spec(spec, budget);
  if (m < 1) throw DomainError(errc::bad_config, "m must be >= 1");
  Field K = Field::build(spec.q, spec.n * m, budget);
  Field base = Field::build(spec.q, spec.n, budget);
  Embedding emb = embed_subfield(K, base);
  FieldElement t = emb(base.from_encoding(spec.t_enc));

  // Quadratic character table via the square map: chi(a) = 1 iff a is a
  // nonzero square, -1 for nonsquares, 0 at zero.
  std::vector<signed char> chi(K.size(), -1);
  chi[0] = 0;
  for (std::uint64_t e = 1; e < K.size(); ++e) {
    FieldElement a = K.from_encoding(e);
    chi[(a * a).encoding()] = 1;
  }

  std::vector<FieldElement> markers;
  for (int i = 1; i <= 2 * spec.g; ++i) markers.push_back(K.constant(i));

  long long total = 0;
  for (std::uint64_t e = 0; e < K.size(); ++e) {
    FieldElement x = K.from_encoding(e);
    FieldElement f = x - t;
    for (const FieldElement& mk : markers) f = f * (x - mk);
    total += chi[f.encoding()];
  }
  mpz_class N = 1;
  N += static_cast<unsigned long>(K.size());
  N += static_cast<long>(total);
  return N;
}

WeilPoly zeta_numerator(const CurveSpec& spec, std::uint64_t budget) {
  validate_curve_spec(spec, budget);
  const int g = spec.g;
  mpz_class Q;
  mpz_ui_pow_ui(Q.get_mpz_t(), spec.q, static_cast<unsigned long>(spec.n));

  // Power sums s_m = Q^m + 1 - N_m of the Frobenius eigenvalues.
  std::vector<mpz_class> s(static_cast<std::size_t>(g) + 1);
  for (int m = 1; m <= g; ++m) {
    mpz_class Qm;
    mpz_pow_ui(Qm.get_mpz_t(), Q.get_mpz_t(), static_cast<unsigned long>(m));
    s[static_cast<std::size_t>(m)] = Qm + 1 - count_points(spec, m, budget);
  }

  // Newton's identities: k e_k = sum_{i=1}^{k} (-1)^{i-1} e_{k-i} s_i.
  std::vector<mpz_class> e(static_cast<std::size_t>(g) + 1);
  e[0] = 1;
  for (int k = 1; k <= g; ++k) {
    mpz_class acc = 0;
    for (int i = 1; i <= k; ++i) {
      mpz_class term = e[static_cast<std::size_t>(k - i)] * s[static_cast<std::size_t>(i)];
      if (i % 2 == 0) acc -= term;
      else acc += term;
    }
    mpz_class q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), acc.get_mpz_t(),
                mpz_class(k).get_mpz_t());
    if (r != 0) throw std::logic_error("zeta_numerator: Newton division failed");
    e[static_cast<std::size_t>(k)] = q;
  }

  // h = sum_k (-1)^k e_k T^{2g-k} for k = 0..g; the rest via the functional
  // equation c_j = c_{2g-j} w^{g-j}.
  IntPoly h(static_cast<std::size_t>(2 * g) + 1, mpz_class(0));
  for (int k = 0; k <= g; ++k) {
    mpz_class c = e[static_cast<std::size_t>(k)];
    if (k % 2 != 0) c = -c;
    h[static_cast<std::size_t>(2 * g - k)] = c;
  }
  for (int j = g - 1; j >= 0; --j) {
    mpz_class wpow;
    mpz_pow_ui(wpow.get_mpz_t(), Q.get_mpz_t(), static_cast<unsigned long>(g - j));
    h[static_cast<std::size_t>(j)] = h[static_cast<std::size_t>(2 * g - j)] * wpow;
  }
  return WeilPoly{std::move(h), Q, g};
}

WeilValidation validate_weil(const IntPoly& h, const mpz_class& w,
                             double tolerance) {
  WeilValidation out;
  int n = intpoly::degree(h);
  if (n < 2 || n % 2 != 0 || h.back() != 1 || w <= 0) {
    return out;  // all checks false
  }
  int g = n / 2;

  out.functional_equation = true;
  for (int j = 0; j < g; ++j) {
    mpz_class wpow;
    mpz_pow_ui(wpow.get_mpz_t(), w.get_mpz_t(),
               static_cast<unsigned long>(g - j));
    if (h[static_cast<std::size_t>(j)] !=
        h[static_cast<std::size_t>(2 * g - j)] * wpow) {
      out.functional_equation = false;
      break;
    }
  }

  // Exact binomial coefficient bounds: c_{2g-i}^2 <= C(2g,i)^2 w^i.
  out.coefficient_bounds = true;
  for (int i = 0; i <= 2 * g; ++i) {
    mpz_class binom;
    mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(2 * g),
                 static_cast<unsigned long>(i));
    mpz_class wpow;
    mpz_pow_ui(wpow.get_mpz_t(), w.get_mpz_t(), static_cast<unsigned long>(i));
    const mpz_class& c = h[static_cast<std::size_t>(2 * g - i)];
    if (c * c > binom * binom * wpow) {
      out.coefficient_bounds = false;
      break;
    }
  }

  // Companion-matrix eigenvalues, computed on the squarefree part of h (same
  // root set, so the modulus check is unchanged): repeated eigenvalues of a
  // companion matrix are defective and would degrade the error to ~sqrt(eps).
  // Substituting T = w^{1/2} z first puts the roots on the unit circle and
  // keeps the matrix well conditioned; |alpha| = w^{1/2} becomes |z| = 1.
  IntPoly hs = intpoly::squarefree_part(h);
  int ns = intpoly::degree(hs);
  double sqw = std::sqrt(w.get_d());
  Eigen::MatrixXd C = Eigen::MatrixXd::Zero(ns, ns);
  for (int i = 1; i < ns; ++i) C(i, i - 1) = 1.0;
  for (int i = 0; i < ns; ++i) {
    double scaled =
        hs[static_cast<std::size_t>(i)].get_d() / std::pow(sqw, ns - i);
    C(i, ns - 1) = -scaled;
  }
  Eigen::EigenSolver<Eigen::MatrixXd> es(C, /*computeEigenvectors=*/false);
  double worst = 0.0;
  for (int i = 0; i < ns; ++i) {
    double rel = std::abs(std::abs(es.eigenvalues()[i]) - 1.0);
    if (rel > worst) worst = rel;
  }
  out.max_unit_error = worst;

  if (out.functional_equation) {
    // Exact certificate.  With the functional equation verified, h(T) =
    // prod_j (T^2 - s_j T + w) where the s_j run over the roots of the real
    // subfield polynomial, and every root of T^2 - sT + w has modulus
    // exactly w^{1/2} iff s is real with s^2 <= 4w.  Both conditions are
    // decidable in exact arithmetic: all roots of hr real (Sturm count
    // against the distinct-root degree) and no root of the Y = S^2 transform
    // exceeding 4w (Sturm above a rational bound).
    IntPoly hr = real_subfield_poly(h, w);
    bool all_real =
        intpoly::count_real_roots(hr) == intpoly::squarefree_part_degree(hr);
    bool in_range = false;
    if (all_real) {
      // hr(S) = A(S^2) + S B(S^2); r(Y) = A(Y)^2 - Y B(Y)^2 has roots s_j^2.
      IntPoly A, B;
      for (std::size_t i = 0; i < hr.size(); ++i) {
        if (i % 2 == 0)
          A.push_back(hr[i]);
        else
          B.push_back(hr[i]);
      }
      intpoly::normalize(A);
      intpoly::normalize(B);
      IntPoly yb2 = intpoly::mul(B, B);
      yb2.insert(yb2.begin(), mpz_class(0));
      IntPoly r = intpoly::sub(intpoly::mul(A, A), yb2);
      in_range = intpoly::count_real_roots_above(r, mpq_class(4 * w)) == 0;
    }
    out.roots_on_circle = all_real && in_range;
  } else {
    // Without the coefficient symmetry there is no real subfield polynomial
    // to certify against; fall back to the numeric eigenvalue check.
    out.roots_on_circle = worst <= tolerance;
  }
  return out;
}

}  // namespace weylforge
