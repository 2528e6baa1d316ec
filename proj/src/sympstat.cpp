#include "weylforge/sympstat.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <unordered_set>
#include <utility>

#include "weylforge/errors.hpp"
#include "weylforge/flpoly.hpp"
#include "weylforge/nt_util.hpp"

namespace weylforge {

namespace {

using Mat = std::vector<std::uint64_t>;  // row-major n x n

// J = [[0, I_g], [-I_g, 0]] as a dense matrix mod l.
Mat standard_j(int g, std::uint64_t l) {
  int n = 2 * g;
  Mat J(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < g; ++i) {
    J[static_cast<std::size_t>(i) * n + (g + i)] = 1;
    J[static_cast<std::size_t>(g + i) * n + i] = l - 1;
  }
  return J;
}

Mat mat_mul(const Mat& A, const Mat& B, int n, std::uint64_t l) {
  Mat C(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      std::uint64_t aik = A[static_cast<std::size_t>(i) * n + k];
      if (aik == 0) continue;
      for (int j = 0; j < n; ++j)
        C[static_cast<std::size_t>(i) * n + j] =
            add_mod(C[static_cast<std::size_t>(i) * n + j],
                    mul_mod(aik, B[static_cast<std::size_t>(k) * n + j], l), l);
    }
  return C;
}

Mat mat_transpose(const Mat& A, int n) {
  Mat T(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      T[static_cast<std::size_t>(j) * n + i] =
          A[static_cast<std::size_t>(i) * n + j];
  return T;
}

// Unbiased uniform draw in [0, n) from the standardized mt19937_64 stream.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
  std::uint64_t r = (~std::uint64_t{0} % n) + 1;  // 2^64 mod n (n = 2^k -> 0)
  if (r == n) r = 0;
  std::uint64_t x;
  do {
    x = rng();
  } while (r != 0 && x >= std::uint64_t{0} - r);
  return x % n;
}

struct Transvection {
  std::vector<std::uint64_t> v;   // direction
  std::vector<std::uint64_t> jv;  // J v
  std::uint64_t lambda;           // 1 or l-1
};

// Direction vectors e_i, f_i, e_i + f_i, e_i + e_j, f_i + f_j, e_i + f_j.
std::vector<std::vector<std::uint64_t>> transvection_directions(int g) {
  int n = 2 * g;
  std::vector<std::vector<std::uint64_t>> dirs;
  auto unit = [&](int i) {
    std::vector<std::uint64_t> v(static_cast<std::size_t>(n), 0);
    v[static_cast<std::size_t>(i)] = 1;
    return v;
  };
  auto sum2 = [&](int i, int j) {
    std::vector<std::uint64_t> v(static_cast<std::size_t>(n), 0);
    v[static_cast<std::size_t>(i)] = 1;
    v[static_cast<std::size_t>(j)] = 1;
    return v;
  };
  for (int i = 0; i < n; ++i) dirs.push_back(unit(i));
  for (int i = 0; i < g; ++i) dirs.push_back(sum2(i, g + i));
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j) {
      if (i < j) {
        dirs.push_back(sum2(i, j));
        dirs.push_back(sum2(g + i, g + j));
      }
      if (i != j) dirs.push_back(sum2(i, g + j));
    }
  return dirs;
}

std::vector<Transvection> transvection_generators(int g, std::uint64_t l) {
  int n = 2 * g;
  Mat J = standard_j(g, l);
  std::vector<Transvection> gens;
  for (auto& v : transvection_directions(g)) {
    std::vector<std::uint64_t> jv(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k)
        jv[static_cast<std::size_t>(i)] =
            add_mod(jv[static_cast<std::size_t>(i)],
                    mul_mod(J[static_cast<std::size_t>(i) * n + k],
                            v[static_cast<std::size_t>(k)], l),
                    l);
    gens.push_back({v, jv, 1});
    if (l > 2) gens.push_back({v, jv, l - 1});
  }
  return gens;
}

// In-place right multiplication M <- M T_{v,lambda} as the rank-1 update
// M += lambda (M v) (J v)^T.
void apply_transvection(Mat& M, const Transvection& t, int n, std::uint64_t l) {
  std::vector<std::uint64_t> mv(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i) {
    std::uint64_t acc = 0;
    for (int k = 0; k < n; ++k)
      acc = add_mod(acc,
                    mul_mod(M[static_cast<std::size_t>(i) * n + k],
                            t.v[static_cast<std::size_t>(k)], l),
                    l);
    mv[static_cast<std::size_t>(i)] = mul_mod(acc, t.lambda, l);
  }
  for (int i = 0; i < n; ++i) {
    if (mv[static_cast<std::size_t>(i)] == 0) continue;
    for (int j = 0; j < n; ++j)
      M[static_cast<std::size_t>(i) * n + j] =
          add_mod(M[static_cast<std::size_t>(i) * n + j],
                  mul_mod(mv[static_cast<std::size_t>(i)],
                          t.jv[static_cast<std::size_t>(j)], l),
                  l);
  }
}

SignedCycleType all_plus_type(int g) {
  std::vector<std::pair<int, int>> c(static_cast<std::size_t>(g), {1, +1});
  return SignedCycleType::regular(std::move(c));
}

}  // namespace

SymplecticMatrix SymplecticMatrix::make(int g, std::uint64_t l,
                                        std::vector<std::uint64_t> entries) {
  if (g < 1 || l < 2 || !is_prime_u64(l))
    throw DomainError(errc::bad_config,
                      "symplectic matrices need g >= 1 and prime l");
  int n = 2 * g;
  if (entries.size() != static_cast<std::size_t>(n) * n)
    throw DomainError(errc::bad_config, "matrix has the wrong shape");
  for (auto& e : entries)
    if (e >= l) e %= l;
  Mat J = standard_j(g, l);
  Mat P = mat_mul(mat_transpose(entries, n), mat_mul(J, entries, n, l), n, l);
  std::uint64_t gamma = P[static_cast<std::size_t>(0) * n + g];  // J[0][g] = 1
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (P[static_cast<std::size_t>(i) * n + j] !=
          mul_mod(gamma, J[static_cast<std::size_t>(i) * n + j], l))
        throw DomainError(errc::bad_config,
                          "matrix is not a symplectic similitude");
  if (gamma == 0)
    throw DomainError(errc::bad_multiplier, "similitude multiplier is zero");
  SymplecticMatrix M;
  M.g = g;
  M.l = l;
  M.gamma = gamma;
  M.a = std::move(entries);
  return M;
}

SymplecticMatrix sp_mul(const SymplecticMatrix& A, const SymplecticMatrix& B) {
  if (A.g != B.g || A.l != B.l)
    throw DomainError(errc::descriptor_mismatch,
                      "matrix product across different groups");
  return SymplecticMatrix::make(A.g, A.l, mat_mul(A.a, B.a, 2 * A.g, A.l));
}

SymplecticMatrix similitude_representative(int g, std::uint64_t l,
                                           std::uint64_t gamma) {
  gamma %= l;
  if (gamma == 0)
    throw DomainError(errc::bad_multiplier, "similitude multiplier is zero");
  int n = 2 * g;
  Mat R(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < g; ++i) R[static_cast<std::size_t>(i) * n + i] = gamma;
  for (int i = g; i < n; ++i) R[static_cast<std::size_t>(i) * n + i] = 1;
  return SymplecticMatrix::make(g, l, std::move(R));
}

mpz_class sp_order(int g, std::uint64_t l) {
  mpz_class order = 1;
  mpz_class L = static_cast<unsigned long>(l);
  for (int i = 1; i <= g; ++i) {
    order *= mpz_pow(L, 2 * static_cast<unsigned long>(i)) - 1;
    order *= mpz_pow(L, 2 * static_cast<unsigned long>(i) - 1);
  }
  return order;
}

flpoly::Poly sp_charpoly(const SymplecticMatrix& M) {
  int n = 2 * M.g;
  std::uint64_t l = M.l;
  // Berkowitz: iterate over leading principal minors with Toeplitz products;
  // V holds the charpoly coefficients of the current block, descending.
  std::vector<std::uint64_t> V{1};
  for (int r = 1; r <= n; ++r) {
    std::vector<std::uint64_t> t(static_cast<std::size_t>(r) + 1);
    t[0] = 1;
    t[1] = (l - M.at(r - 1, r - 1) % l) % l;
    std::vector<std::uint64_t> vec(static_cast<std::size_t>(r - 1));
    for (int i = 0; i < r - 1; ++i)
      vec[static_cast<std::size_t>(i)] = M.at(i, r - 1);
    for (int k = 2; k <= r; ++k) {
      std::uint64_t dot = 0;
      for (int i = 0; i < r - 1; ++i)
        dot = add_mod(dot,
                      mul_mod(M.at(r - 1, i), vec[static_cast<std::size_t>(i)],
                              l),
                      l);
      t[static_cast<std::size_t>(k)] = (l - dot) % l;
      if (k < r) {
        std::vector<std::uint64_t> next(static_cast<std::size_t>(r - 1), 0);
        for (int i = 0; i < r - 1; ++i)
          for (int j = 0; j < r - 1; ++j)
            next[static_cast<std::size_t>(i)] =
                add_mod(next[static_cast<std::size_t>(i)],
                        mul_mod(M.at(i, j), vec[static_cast<std::size_t>(j)],
                                l),
                        l);
        vec = std::move(next);
      }
    }
    std::vector<std::uint64_t> Vnew(static_cast<std::size_t>(r) + 1, 0);
    for (std::size_t j = 0; j < Vnew.size(); ++j)
      for (std::size_t i = 0; i <= j && i < t.size(); ++i)
        if (j - i < V.size())
          Vnew[j] = add_mod(Vnew[j], mul_mod(t[i], V[j - i], l), l);
    V = std::move(Vnew);
  }
  std::reverse(V.begin(), V.end());
  return V;  // monic of degree n; leading coefficient V.back() = 1
}

namespace {

flpoly::Poly gamma_reciprocal(const flpoly::Poly& f, std::uint64_t gamma,
                              std::uint64_t l) {
  std::size_t d = f.size() - 1;
  std::uint64_t inv0 = inv_mod(f[0], l);
  flpoly::Poly out(f.size());
  std::uint64_t gp = 1;
  // out[j] = f[d-j] gamma^{d-j} / f[0]; build powers from the top down.
  for (std::size_t j = d + 1; j-- > 0;) {
    out[j] = mul_mod(mul_mod(f[d - j], gp, l), inv0, l);
    gp = mul_mod(gp, gamma % l, l);
  }
  return out;
}

SymplecticMatrix walk_from(int g, std::uint64_t l, std::uint64_t gamma,
                           const std::vector<Transvection>& gens,
                           std::mt19937_64& rng, int walk_length) {
  int n = 2 * g;
  Mat S(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i) S[static_cast<std::size_t>(i) * n + i] = 1;
  for (int step = 0; step < walk_length; ++step)
    apply_transvection(S, gens[uniform_below(rng, gens.size())], n, l);
  SymplecticMatrix R = similitude_representative(g, l, gamma);
  return SymplecticMatrix::make(g, l, mat_mul(R.a, S, n, l));
}

}  // namespace

SymplecticMatrix sp_sample(int g, std::uint64_t l, std::uint64_t gamma,
                           std::mt19937_64& rng, int walk_length) {
  if (g < 1 || l <= 2 || !is_prime_u64(l))
    throw DomainError(errc::bad_config, "sampling needs g >= 1 and odd prime l");
  gamma %= l;
  if (gamma == 0)
    throw DomainError(errc::bad_multiplier, "similitude multiplier is zero");
  return walk_from(g, l, gamma, transvection_generators(g, l), rng,
                   walk_length);
}

SignedCycleType matrix_type(const SymplecticMatrix& M) {
  flpoly::Poly f = sp_charpoly(M);
  std::vector<std::pair<flpoly::Poly, int>> factors = flpoly::factor(f, M.l);
  for (const auto& [v, mult] : factors)
    if (mult > 1) return SignedCycleType::nonregular();
  std::vector<std::pair<int, int>> cycles;
  std::vector<bool> used(factors.size(), false);
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (used[i]) continue;
    used[i] = true;
    const flpoly::Poly& v = factors[i].first;
    flpoly::Poly vr = gamma_reciprocal(v, M.gamma, M.l);
    int d = static_cast<int>(v.size()) - 1;
    if (vr == v) {
      if (d % 2 != 0)
        throw DomainError(errc::internal_error,
                          "odd self-reciprocal factor of a similitude");
      cycles.emplace_back(d / 2, -1);
      continue;
    }
    bool matched = false;
    for (std::size_t j = i + 1; j < factors.size(); ++j) {
      if (!used[j] && factors[j].first == vr) {
        used[j] = true;
        matched = true;
        break;
      }
    }
    if (!matched)
      throw DomainError(errc::internal_error,
                        "unpaired factor of a similitude charpoly");
    cycles.emplace_back(d, +1);
  }
  return SignedCycleType::regular(std::move(cycles));
}

std::vector<SymplecticMatrix> sp_enumerate(int g, std::uint64_t l) {
  mpz_class order = sp_order(g, l);
  if (order > static_cast<unsigned long>(kEnumerationCap))
    throw DomainError(errc::enumeration_too_large,
                      "group order exceeds the enumeration cap");
  int n = 2 * g;
  // Base-l packing of the entries fits a u64 whenever the order fits the cap.
  auto key_of = [&](const Mat& A) {
    std::uint64_t key = 0;
    for (std::size_t i = A.size(); i-- > 0;) key = key * l + A[i];
    return key;
  };
  std::vector<Transvection> gens = transvection_generators(g, l);
  Mat I(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i) I[static_cast<std::size_t>(i) * n + i] = 1;
  std::unordered_set<std::uint64_t> seen{key_of(I)};
  std::queue<Mat> frontier;
  frontier.push(I);
  std::vector<SymplecticMatrix> out;
  out.push_back(SymplecticMatrix::make(g, l, I));
  while (!frontier.empty()) {
    Mat cur = std::move(frontier.front());
    frontier.pop();
    for (const Transvection& t : gens) {
      Mat next = cur;
      apply_transvection(next, t, n, l);
      if (seen.insert(key_of(next)).second) {
        out.push_back(SymplecticMatrix::make(g, l, next));
        frontier.push(next);
      }
    }
  }
  if (mpz_class(static_cast<unsigned long>(out.size())) != order)
    throw DomainError(errc::internal_error,
                      "transvection closure missed the symplectic group");
  return out;
}

TypeDistribution coset_type_distribution(int g, std::uint64_t l,
                                         std::uint64_t gamma,
                                         const SampleMode& mode) {
  gamma %= l;
  if (gamma == 0)
    throw DomainError(errc::bad_multiplier, "similitude multiplier is zero");
  TypeDistribution dist;
  std::map<SignedCycleType, std::uint64_t> tally;
  if (mode.kind == SampleMode::Kind::Exact) {
    std::vector<SymplecticMatrix> group = sp_enumerate(g, l);
    SymplecticMatrix R = similitude_representative(g, l, gamma);
    for (const SymplecticMatrix& M : group) ++tally[matrix_type(sp_mul(R, M))];
    dist.provenance = Provenance::ExactEnumeration;
    dist.sample_count = 0;
    mpq_class total(sp_order(g, l));
    for (const auto& [t, c] : tally) {
      mpq_class w(static_cast<unsigned long>(c));
      w /= total;
      w.canonicalize();
      dist.weights[t] = w;
    }
    return dist;
  }
  if (mode.samples == 0)
    throw DomainError(errc::bad_config, "Monte Carlo needs samples > 0");
  if (l <= 2 || !is_prime_u64(l))
    throw DomainError(errc::bad_config, "sampling needs an odd prime l");
  std::vector<Transvection> gens = transvection_generators(g, l);
  std::mt19937_64 rng(mode.seed);
  for (std::uint64_t i = 0; i < mode.samples; ++i)
    ++tally[matrix_type(walk_from(g, l, gamma, gens, rng, 128))];
  dist.provenance = Provenance::MonteCarlo;
  dist.sample_count = mode.samples;
  for (const auto& [t, c] : tally) {
    mpq_class w(static_cast<unsigned long>(c),
                static_cast<unsigned long>(mode.samples));
    w.canonicalize();
    dist.weights[t] = w;
    double p = w.get_d();
    dist.std_error[t] =
        std::sqrt(p * (1.0 - p) / static_cast<double>(mode.samples));
  }
  return dist;
}

mpq_class split_class_fraction(int g, std::uint64_t l, const SampleMode& mode) {
  TypeDistribution dist = coset_type_distribution(g, l, 1, mode);
  auto it = dist.weights.find(all_plus_type(g));
  return it == dist.weights.end() ? mpq_class(0) : it->second;
}

double tv_distance(const TypeDistribution& d1, const TypeDistribution& d2) {
  mpq_class total = 0;
  for (const auto& [t, w] : d1.weights) {
    auto it = d2.weights.find(t);
    mpq_class other = it == d2.weights.end() ? mpq_class(0) : it->second;
    total += abs(w - other);
  }
  for (const auto& [t, w] : d2.weights)
    if (d1.weights.find(t) == d1.weights.end()) total += w;
  total /= 2;
  return total.get_d();
}

TypeDistribution condition_on_regular(const TypeDistribution& d) {
  TypeDistribution out;
  out.provenance = d.provenance;
  out.sample_count = d.sample_count;
  mpq_class mass = 0;
  for (const auto& [t, w] : d.weights)
    if (t.kind == TypeKind::Regular) mass += w;
  if (mass == 0) return out;
  for (const auto& [t, w] : d.weights)
    if (t.kind == TypeKind::Regular) {
      mpq_class scaled = w / mass;
      scaled.canonicalize();
      out.weights[t] = scaled;
    }
  return out;
}

}  // namespace weylforge
