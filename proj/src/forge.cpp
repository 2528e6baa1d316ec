#include "weylforge/forge.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "weylforge/errors.hpp"
#include "weylforge/flpoly.hpp"
#include "weylforge/nt_util.hpp"

namespace weylforge {

std::string to_string(ConditionKind k) {
  switch (k) {
    case ConditionKind::SplitCompletely: return "SplitCompletely";
    case ConditionKind::RepeatedRoot: return "RepeatedRoot";
    case ConditionKind::InertPair: return "InertPair";
    case ConditionKind::TypeEquals: return "TypeEquals";
  }
  return "?";
}

void validate_constraints(std::uint64_t q,
                          const std::vector<LocalCondition>& constraints) {
  std::set<std::uint64_t> seen;
  for (const LocalCondition& c : constraints) {
    if (!is_prime_u64(c.l))
      throw DomainError(errc::not_prime,
                        "constraint modulus " + std::to_string(c.l) +
                            " is not prime");
    if (!seen.insert(c.l).second)
      throw DomainError(errc::conflicting_constraints,
                        "prime " + std::to_string(c.l) + " constrained twice");
    if (c.l == q)
      throw DomainError(errc::conflicting_constraints,
                        "constraint prime equals the field characteristic");
    if (c.l == 2 && c.kind != ConditionKind::RepeatedRoot)
      throw DomainError(errc::conflicting_constraints,
                        "prime 2 admits only the RepeatedRoot condition");
  }
}

namespace {

// f(T) -> reversed coefficients scaled by powers of gamma, made monic: the
// image of f under the pairing x <-> gamma / x.
flpoly::Poly reciprocal_image(const flpoly::Poly& f, std::uint64_t gamma,
                              std::uint64_t l) {
  std::size_t d = f.size() - 1;
  std::uint64_t inv0 = inv_mod(f[0], l);
  flpoly::Poly out(f.size());
  std::uint64_t gp = 1;
  for (std::size_t j = d + 1; j-- > 0;) {
    out[j] = mul_mod(mul_mod(f[d - j], gp, l), inv0, l);
    gp = mul_mod(gp, gamma % l, l);
  }
  return out;
}

}  // namespace

bool condition_holds(const IntPoly& h, const mpz_class& w,
                     const LocalCondition& c) {
  FactorPattern fp = factor_mod(h, c.l);
  switch (c.kind) {
    case ConditionKind::SplitCompletely: {
      if (!fp.squarefree()) return false;
      for (const auto& [f, mult] : fp.factors)
        if (static_cast<int>(f.size()) - 1 != 1) return false;
      return true;
    }
    case ConditionKind::RepeatedRoot:
      return !fp.squarefree();
    case ConditionKind::InertPair: {
      std::uint64_t gamma = mpz_mod_u64(w, c.l);
      if (gamma == 0) return false;
      for (const auto& [f, mult] : fp.factors)
        if (static_cast<int>(f.size()) - 1 == 2 &&
            reciprocal_image(f, gamma, c.l) == f)
          return true;
      return false;
    }
    case ConditionKind::TypeEquals: {
      IntPoly hr = real_subfield_poly(h, w);
      // A vanishing discriminant ramifies every prime.
      if (intpoly::discriminant(h) == 0 ||
          (intpoly::degree(hr) >= 2 && intpoly::discriminant(hr) == 0))
        return c.type == SignedCycleType::ramified();
      return signed_cycle_type(h, hr, c.l) == c.type;
    }
  }
  return false;
}

std::vector<CandidateRecord> scan_family(
    std::uint64_t q, int n, int g,
    const std::vector<LocalCondition>& constraints, const ScanOptions& opts) {
  validate_constraints(q, constraints);
  if (opts.stride == 0)
    throw DomainError(errc::bad_config, "stride must be >= 1");
  std::vector<std::uint64_t> ts = valid_t_encodings(q, n, g, opts.enum_budget);
  std::vector<CandidateRecord> out;
  for (std::size_t i = 0; i < ts.size(); i += opts.stride) {
    CurveSpec spec{q, n, g, ts[i]};
    WeilPoly wp = zeta_numerator(spec, opts.enum_budget);
    bool keep = true;
    for (const LocalCondition& c : constraints)
      if (!condition_holds(wp.h, wp.w, c)) {
        keep = false;
        break;
      }
    if (!keep) continue;
    CandidateRecord rec;
    rec.t_enc = ts[i];
    rec.weil = wp;
    rec.D = abs(intpoly::discriminant(wp.h));
    rec.conditions_met = constraints;
    if (opts.certify)
      rec.certificate = certify_weyl(wp.h, wp.w, CertifyOptions{opts.prime_budget});
    if (opts.census_x > 0)
      rec.census =
          split_census(wp.h, real_subfield_poly(wp.h, wp.w), opts.census_x);
    out.push_back(std::move(rec));
  }
  return out;
}

TypeDistribution family_type_distribution(std::uint64_t q, int n, int g,
                                          std::uint64_t l,
                                          std::uint64_t budget) {
  if (!is_prime_u64(l))
    throw DomainError(errc::not_prime,
                      "modulus " + std::to_string(l) + " is not prime");
  if (l == q || l == 2)
    throw DomainError(errc::bad_config,
                      "type distributions need an odd prime different from q");
  std::vector<std::uint64_t> ts = valid_t_encodings(q, n, g, budget);
  std::map<SignedCycleType, std::uint64_t> tally;
  for (std::uint64_t t : ts) {
    WeilPoly wp = zeta_numerator({q, n, g, t}, budget);
    IntPoly hr = real_subfield_poly(wp.h, wp.w);
    // Members with repeated Frobenius eigenvalues ramify every prime.
    if (intpoly::discriminant(wp.h) == 0 ||
        (intpoly::degree(hr) >= 2 && intpoly::discriminant(hr) == 0))
      ++tally[SignedCycleType::ramified()];
    else
      ++tally[signed_cycle_type(wp.h, hr, l)];
  }
  TypeDistribution dist;
  dist.provenance = Provenance::FamilyEmpirical;
  dist.sample_count = ts.size();
  for (const auto& [t, c] : tally) {
    mpq_class w(static_cast<unsigned long>(c),
                static_cast<unsigned long>(ts.size()));
    w.canonicalize();
    dist.weights[t] = w;
  }
  return dist;
}

SequenceParams SequenceParams::full(int g) {
  SequenceParams p;
  p.ramify_exponent = mpq_class(1, 32 * g * g);
  p.window_exponent = 5;
  p.desk_window = false;
  return p;
}

SequenceParams SequenceParams::desk(int g) {
  SequenceParams p;
  p.ramify_exponent = mpq_class(1, 8 * g * g);
  p.desk_window = true;
  return p;
}

namespace {

// Greedy smallest primes (skipping q) whose product lands in
// [q^{n e} / 2, 2 q^{n e}]; exact comparisons via e = num/den.
std::vector<std::uint64_t> ramify_primes(std::uint64_t q, int n,
                                         const mpq_class& e) {
  unsigned long num = static_cast<unsigned long>(e.get_num().get_ui()) *
                      static_cast<unsigned long>(n);
  unsigned long den = static_cast<unsigned long>(e.get_den().get_ui());
  mpz_class target = mpz_pow(mpz_class(static_cast<unsigned long>(q)), num);
  mpz_class two_den = mpz_pow(mpz_class(2), den);
  std::vector<std::uint64_t> primes;
  mpz_class P = 1;
  std::uint64_t p = 2;
  // P < q^{n e} / 2  <=>  (2 P)^den < q^{n num}
  while (mpz_pow(2 * P, den) < target) {
    do {
      p = next_prime(p);
    } while (p == q);
    mpz_class P2 = P * static_cast<unsigned long>(p);
    // P2 <= 2 q^{n e}  <=>  P2^den <= 2^den q^{n num}
    if (mpz_pow(P2, den) > two_den * target)
      throw DomainError(errc::empty_window,
                        "no prime completes the ramifying product window");
    P = P2;
    primes.push_back(p);
  }
  return primes;
}

std::vector<std::uint64_t> window_primes(int n, const SequenceParams& params,
                                         std::uint64_t q,
                                         const std::vector<std::uint64_t>& ram) {
  std::uint64_t lo, hi;  // open interval (lo, hi)
  if (params.desk_window) {
    lo = static_cast<std::uint64_t>(n) + 1;
    hi = 4 * (static_cast<std::uint64_t>(n) + 1);
  } else {
    lo = 1;
    for (int i = 0; i < params.window_exponent; ++i)
      lo *= static_cast<std::uint64_t>(n);
    hi = 2 * lo;
  }
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = next_prime(lo); p < hi; p = next_prime(p)) {
    if (p == q || p == 2) continue;
    if (std::find(ram.begin(), ram.end(), p) != ram.end()) continue;
    out.push_back(p);
  }
  if (out.empty())
    throw DomainError(errc::empty_window,
                      "no usable prime in the auxiliary window (" +
                          std::to_string(lo) + ", " + std::to_string(hi) + ")");
  return out;
}

bool is_certified(const CandidateRecord& r) {
  return r.certificate && r.certificate->status == CertStatus::Certified;
}

std::vector<CandidateRecord> certified_only(std::vector<CandidateRecord> recs) {
  std::vector<CandidateRecord> out;
  for (auto& r : recs)
    if (is_certified(r)) out.push_back(std::move(r));
  return out;
}

std::uint64_t census_bound(const mpz_class& D, std::uint64_t cap) {
  if (D <= 2) return 10;  // degenerate; the census stays a stub
  double b = 2.0 * std::pow(mpz_log(D), 5);
  if (b >= static_cast<double>(cap)) return cap;
  return static_cast<std::uint64_t>(b) + 1;
}

}  // namespace

std::vector<SequenceEntry> build_sequence(std::uint64_t q, int g,
                                          const std::vector<int>& n_list,
                                          const SequenceParams& params) {
  for (std::size_t i = 0; i + 1 < n_list.size(); ++i)
    if (n_list[i] >= n_list[i + 1])
      throw DomainError(errc::bad_config, "n_list must be strictly ascending");
  std::vector<SequenceEntry> out;
  for (int n : n_list) {
    SequenceEntry ent;
    ent.n = n;
    if (n < 1) throw DomainError(errc::bad_config, "n must be >= 1");
    ent.ramify_primes = ramify_primes(q, n, params.ramify_exponent);
    std::vector<LocalCondition> base;
    for (std::uint64_t l : ent.ramify_primes)
      base.push_back(LocalCondition::repeated_root(l));
    ScanOptions sopts;
    sopts.certify = true;
    sopts.prime_budget = params.prime_budget;
    sopts.enum_budget = params.enum_budget;

    std::vector<CandidateRecord> cands;
    for (std::uint64_t aux : window_primes(n, params, q, ent.ramify_primes)) {
      std::vector<LocalCondition> cs = base;
      cs.push_back(LocalCondition::split_completely(aux));
      cands = certified_only(scan_family(q, n, g, cs, sopts));
      if (!cands.empty()) {
        ent.aux_prime = aux;
        break;
      }
    }
    if (cands.empty())  // no auxiliary prime worked: drop the split constraint
      cands = certified_only(scan_family(q, n, g, base, sopts));
    if (cands.empty()) {
      ent.gap = true;
      ent.gap_reason = "no candidate certified at n = " + std::to_string(n);
      out.push_back(std::move(ent));
      continue;
    }

    for (CandidateRecord& c : cands)
      c.census = split_census(c.weil.h, real_subfield_poly(c.weil.h, c.weil.w),
                              census_bound(c.D, params.census_cap));
    std::size_t best = 0;
    for (std::size_t i = 1; i < cands.size(); ++i) {
      const CandidateRecord& a = cands[i];
      const CandidateRecord& b = cands[best];
      int sa = a.census->split_completely, sb = b.census->split_completely;
      if (sa > sb || (sa == sb && (a.D < b.D || (a.D == b.D && a.t_enc < b.t_enc))))
        best = i;
    }
    CandidateRecord chosen = std::move(cands[best]);
    try {
      ent.lemma31 = lemma31_condition1(*chosen.census, params.c_g);
    } catch (const DomainError& e) {
      ent.lemma31_note = e.code() + ": " + e.what();
    }
    ent.window = disc_window(chosen.D, q, n, g, mpq_class(1), mpq_class(1));
    ent.record = std::move(chosen);
    out.push_back(std::move(ent));
  }
  return out;
}

}  // namespace weylforge
