// weylforge: command-line driver for the curve / certification / census /
// statistics library.  Every subcommand emits a deterministic artifact that
// embeds its own configuration and a version stamp; identical configurations
// produce byte-identical output.
//
// Exit codes: 0 success, 1 domain error (structured JSON on stdout),
// 2 usage/config error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "weylforge/census.hpp"
#include "weylforge/curve.hpp"
#include "weylforge/errors.hpp"
#include "weylforge/ffield.hpp"
#include "weylforge/forge.hpp"
#include "weylforge/intpoly.hpp"
#include "weylforge/nt_util.hpp"
#include "weylforge/serialize.hpp"
#include "weylforge/sympstat.hpp"
#include "weylforge/weylcert.hpp"

namespace wf = weylforge;
using wf::Json;

namespace {

// ---------------------------------------------------------------------------
// Output plumbing.  Artifacts are built fully in memory and written in one
// shot, so a failing run never leaves a partial artifact behind.

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw wf::DomainError(wf::errc::bad_config, "cannot open output file '" + path + "'");
  out << text;
  if (!out) throw wf::DomainError(wf::errc::bad_config, "write to '" + path + "' failed");
}

// Per-task stream seed: splitmix64(master XOR splitmix64(task)).  The stream
// itself is mt19937_64 seeded with this value, so third parties can reproduce
// any sample with a stock Mersenne twister.
std::uint64_t task_seed(std::uint64_t master, std::uint64_t task) {
  return wf::splitmix64(master ^ wf::splitmix64(task));
}

mpz_class parse_mpz(const std::string& s, const char* what) {
  mpz_class v;
  if (s.empty() || mpz_set_str(v.get_mpz_t(), s.c_str(), 10) != 0)
    throw wf::DomainError(wf::errc::bad_config,
                          std::string(what) + ": '" + s + "' is not a decimal integer");
  return v;
}

// Weight of a CM-style polynomial: explicit --w wins; otherwise the constant
// term must be an exact g-th power.
mpz_class resolve_weight(const wf::IntPoly& h, const std::string& w_str) {
  if (!w_str.empty()) return parse_mpz(w_str, "--w");
  int d = wf::intpoly::degree(h);
  if (d < 2 || d % 2 != 0)
    throw wf::DomainError(wf::errc::bad_config, "polynomial must have even degree >= 2");
  int g = d / 2;
  if (h[0] <= 0)
    throw wf::DomainError(wf::errc::not_cm_symmetric,
                          "constant term is not a positive g-th power; pass --w explicitly");
  mpz_class w;
  if (mpz_root(w.get_mpz_t(), h[0].get_mpz_t(), static_cast<unsigned long>(g)) == 0)
    throw wf::DomainError(wf::errc::not_cm_symmetric,
                          "constant term is not an exact g-th power; pass --w explicitly");
  return w;
}

Json weights_approx(const wf::TypeDistribution& d) {
  Json out = Json::object();
  for (const auto& [t, w] : d.weights) out[t.to_string()] = w.get_d();
  return out;
}

// ---------------------------------------------------------------------------
// Subcommand option bundles.

struct ZetaOpts {
  std::uint64_t q = 0;
  int n = 1;
  int g = 1;
  std::uint64_t t = 0;
  std::uint64_t budget = wf::kDefaultEnumBudget;
  std::string out;
};

struct CertifyOpts {
  std::string poly;
  std::string w;
  std::uint64_t q = 0;
  int n = 1;
  int prime_budget = 200;
  std::string out;
};

struct CensusOpts {
  std::string poly;
  std::string w;
  std::uint64_t x = 0;
  std::string csv;
  std::string out;
};

struct HaarOpts {
  int g = 1;
  std::uint64_t l = 0;
  std::uint64_t gamma = 1;
  std::string mode = "exact";
  std::uint64_t samples = 100'000;
  std::uint64_t master_seed = 0;
  std::uint64_t task_index = 0;
  bool seed_given = false;
  std::uint64_t seed = 0;
  std::string out;
};

struct EquidistOpts {
  std::uint64_t q = 0;
  int g = 1;
  std::uint64_t l = 0;
  std::vector<int> n_list;
  std::uint64_t samples = 100'000;
  std::uint64_t master_seed = 0;
  std::uint64_t budget = wf::kDefaultEnumBudget;
  std::string csv;
  std::string out;
};

struct ForgeOpts {
  std::uint64_t q = 0;
  int n = 1;
  int g = 1;
  std::vector<std::uint64_t> split;
  std::vector<std::uint64_t> repeated;
  std::vector<std::uint64_t> inert;
  std::vector<std::string> type;
  bool no_certify = false;
  int prime_budget = 200;
  std::uint64_t census_x = 0;
  std::uint64_t stride = 1;
  std::uint64_t budget = wf::kDefaultEnumBudget;
  std::string out;
};

struct SequenceOpts {
  std::uint64_t q = 0;
  int g = 1;
  std::vector<int> n_list;
  std::string preset = "desk";
  double c_g = -1.0;
  std::uint64_t census_cap = 0;
  int prime_budget = -1;
  std::uint64_t budget = wf::kDefaultEnumBudget;
  std::string out;
};

// ---------------------------------------------------------------------------
// Subcommand runners.

void run_zeta(const ZetaOpts& o) {
  wf::CurveSpec spec{o.q, o.n, o.g, o.t};
  wf::WeilPoly wp = wf::zeta_numerator(spec, o.budget);
  wf::WeilValidation v = wf::validate_weil(wp.h, wp.w);
  Json counts = Json::array();
  for (int m = 1; m <= o.g; ++m)
    counts.push_back(wf::count_points(spec, m, o.budget).get_str());
  Json doc{{"config", Json{{"subcommand", "zeta"},
                           {"q", o.q},
                           {"n", o.n},
                           {"g", o.g},
                           {"t", o.t},
                           {"budget", o.budget}}},
           {"version", wf::kVersionStamp},
           {"h", wf::to_json(wp.h)},
           {"w", wf::to_json(wp.w)},
           {"counts", counts},
           {"validation", wf::to_json(v)}};
  emit(wf::canonical(doc), o.out);
}

void run_certify(const CertifyOpts& o) {
  if (o.w.empty() && o.q == 0)
    throw CLI::ValidationError("certify", "exactly one of --w or --q/--n is required");
  wf::IntPoly h = wf::poly_from_string(o.poly);
  mpz_class w;
  if (!o.w.empty()) {
    w = parse_mpz(o.w, "--w");
  } else {
    if (!wf::is_prime_u64(o.q))
      throw wf::DomainError(wf::errc::not_prime, "--q must be prime");
    w = wf::mpz_pow(mpz_class(o.q), static_cast<unsigned long>(o.n));
  }
  wf::CertifyOptions copts;
  copts.prime_budget = o.prime_budget;
  wf::WeylCertificate cert = wf::certify_weyl(h, w, copts);
  Json doc{{"config", Json{{"subcommand", "certify"},
                           {"poly", wf::to_json(h)},
                           {"w", wf::to_json(w)},
                           {"prime_budget", o.prime_budget}}},
           {"version", wf::kVersionStamp},
           {"certificate", wf::to_json(cert)}};
  emit(wf::canonical(doc), o.out);
}

void run_census(const CensusOpts& o) {
  wf::IntPoly h = wf::poly_from_string(o.poly);
  mpz_class w = resolve_weight(h, o.w);
  wf::IntPoly hr = wf::real_subfield_poly(h, w);
  wf::CensusReport rep = wf::split_census(h, hr, o.x);
  Json doc{{"config", Json{{"subcommand", "census"},
                           {"poly", wf::to_json(h)},
                           {"w", wf::to_json(w)},
                           {"x", o.x}}},
           {"version", wf::kVersionStamp},
           {"report", wf::to_json(rep)}};
  std::string artifact = wf::canonical(doc);
  std::string csv = o.csv.empty() ? std::string() : wf::census_csv(rep);
  emit(artifact, o.out);
  if (!o.csv.empty()) emit(csv, o.csv);
}

void run_haar(const HaarOpts& o) {
  std::uint64_t seed =
      o.seed_given ? o.seed : task_seed(o.master_seed, o.task_index);
  wf::SampleMode mode = o.mode == "exact"
                            ? wf::SampleMode::exact()
                            : wf::SampleMode::monte_carlo(o.samples, seed);
  wf::TypeDistribution d = wf::coset_type_distribution(o.g, o.l, o.gamma, mode);
  Json config{{"subcommand", "haar"},
              {"g", o.g},
              {"l", o.l},
              {"gamma", o.gamma},
              {"mode", o.mode}};
  if (o.mode == "mc") {
    config["samples"] = o.samples;
    config["seed"] = seed;
  }
  Json doc{{"config", config},
           {"version", wf::kVersionStamp},
           {"distribution", wf::to_json(d)},
           {"weights_approx", weights_approx(d)}};
  emit(wf::canonical(doc), o.out);
}

void run_equidist(const EquidistOpts& o) {
  mpz_class order = wf::sp_order(o.g, o.l);
  bool exact = order <= wf::kEnumerationCap;
  Json rows = Json::array();
  std::string csv = "n,gamma,tv,tv_conditioned,family_members,coset_provenance\n";
  for (int n : o.n_list) {
    std::uint64_t gamma =
        wf::pow_mod(o.q % o.l, static_cast<std::uint64_t>(n), o.l);
    wf::TypeDistribution family =
        wf::family_type_distribution(o.q, n, o.g, o.l, o.budget);
    wf::SampleMode mode =
        exact ? wf::SampleMode::exact()
              : wf::SampleMode::monte_carlo(
                    o.samples,
                    task_seed(o.master_seed, static_cast<std::uint64_t>(n)));
    wf::TypeDistribution coset =
        wf::coset_type_distribution(o.g, o.l, gamma, mode);
    double tv = wf::tv_distance(family, coset);
    wf::TypeDistribution fam_reg = wf::condition_on_regular(family);
    wf::TypeDistribution cos_reg = wf::condition_on_regular(coset);
    bool cond_ok = !fam_reg.weights.empty() && !cos_reg.weights.empty();
    double tvc = cond_ok ? wf::tv_distance(fam_reg, cos_reg) : 0.0;
    Json row{{"n", n},
             {"gamma", gamma},
             {"tv", tv},
             {"tv_conditioned", cond_ok ? Json(tvc) : Json()},
             {"family", wf::to_json(family)},
             {"coset", wf::to_json(coset)}};
    rows.push_back(row);
    csv += std::to_string(n) + ',' + std::to_string(gamma) + ',' +
           std::to_string(tv) + ',' + (cond_ok ? std::to_string(tvc) : "") +
           ',' + std::to_string(family.sample_count) + ',' +
           wf::to_string(coset.provenance) + '\n';
  }
  Json config{{"subcommand", "equidist"},
              {"q", o.q},
              {"g", o.g},
              {"l", o.l},
              {"n_list", o.n_list},
              {"coset_mode", exact ? "exact" : "mc"}};
  if (!exact) {
    config["samples"] = o.samples;
    config["master_seed"] = o.master_seed;
  }
  Json doc{{"config", config},
           {"version", wf::kVersionStamp},
           {"rows", rows}};
  std::string artifact = wf::canonical(doc);
  emit(artifact, o.out);
  if (!o.csv.empty()) emit(csv, o.csv);
}

std::vector<wf::LocalCondition> forge_constraints(const ForgeOpts& o) {
  std::vector<wf::LocalCondition> cs;
  for (std::uint64_t l : o.split) cs.push_back(wf::LocalCondition::split_completely(l));
  for (std::uint64_t l : o.repeated) cs.push_back(wf::LocalCondition::repeated_root(l));
  for (std::uint64_t l : o.inert) cs.push_back(wf::LocalCondition::inert_pair(l));
  for (const std::string& s : o.type) {
    std::size_t colon = s.find(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 >= s.size())
      throw wf::DomainError(wf::errc::bad_config,
                            "--type expects L:TYPE, e.g. 3:1+,1- (got '" + s + "')");
    std::uint64_t l = 0;
    try {
      l = std::stoull(s.substr(0, colon));
    } catch (const std::exception&) {
      throw wf::DomainError(wf::errc::bad_config, "--type prime '" + s + "' is not a number");
    }
    cs.push_back(wf::LocalCondition::type_equals(
        l, wf::SignedCycleType::parse(s.substr(colon + 1))));
  }
  return cs;
}

void run_forge(const ForgeOpts& o) {
  std::vector<wf::LocalCondition> cs = forge_constraints(o);
  wf::ScanOptions opts;
  opts.certify = !o.no_certify;
  opts.prime_budget = o.prime_budget;
  opts.census_x = o.census_x;
  opts.enum_budget = o.budget;
  opts.stride = o.stride;
  std::vector<wf::CandidateRecord> records =
      wf::scan_family(o.q, o.n, o.g, cs, opts);
  Json conds = Json::array();
  for (const wf::LocalCondition& c : cs) conds.push_back(wf::to_json(c));
  Json meta{{"config", Json{{"subcommand", "forge"},
                            {"q", o.q},
                            {"n", o.n},
                            {"g", o.g},
                            {"constraints", conds},
                            {"certify", opts.certify},
                            {"prime_budget", o.prime_budget},
                            {"census_x", o.census_x},
                            {"stride", o.stride}}},
            {"version", wf::kVersionStamp},
            {"records", records.size()}};
  std::string artifact = meta.dump() + '\n';
  for (const wf::CandidateRecord& r : records)
    artifact += wf::to_json(r).dump() + '\n';
  emit(artifact, o.out);
}

void run_sequence(const SequenceOpts& o) {
  wf::SequenceParams p = o.preset == "full" ? wf::SequenceParams::full(o.g)
                                            : wf::SequenceParams::desk(o.g);
  if (o.c_g >= 0.0) p.c_g = o.c_g;
  if (o.census_cap > 0) p.census_cap = o.census_cap;
  if (o.prime_budget >= 0) p.prime_budget = o.prime_budget;
  p.enum_budget = o.budget;
  std::vector<wf::SequenceEntry> entries =
      wf::build_sequence(o.q, o.g, o.n_list, p);
  Json arr = Json::array();
  for (const wf::SequenceEntry& e : entries) arr.push_back(wf::to_json(e));
  Json doc{{"config", Json{{"subcommand", "sequence"},
                           {"q", o.q},
                           {"g", o.g},
                           {"n_list", o.n_list},
                           {"preset", o.preset},
                           {"c_g", p.c_g},
                           {"census_cap", p.census_cap},
                           {"prime_budget", p.prime_budget}}},
           {"version", wf::kVersionStamp},
           {"entries", arr}};
  emit(wf::canonical(doc), o.out);
}

// ---------------------------------------------------------------------------
// Built-in smoke suite over frozen small-case values.

int g_selftest_failures = 0;

void st_check(std::ostringstream& log, int idx, bool ok, const std::string& what) {
  log << (ok ? "ok " : "FAIL ") << idx << " - " << what << '\n';
  if (!ok) ++g_selftest_failures;
}

void run_selftest(const std::string& out) {
  std::ostringstream log;
  int i = 0;

  {
    wf::CurveSpec s0{5, 1, 1, 0};
    wf::WeilPoly wp = wf::zeta_numerator(s0);
    st_check(log, ++i, wf::count_points(s0) == 8, "y^2=x(x-1)(x-2)/F_5 has 8 points");
    st_check(log, ++i, wf::count_points(s0, 2) == 32, "same curve has 32 points over F_25");
    st_check(log, ++i, wp.h == wf::IntPoly({5, 2, 1}), "its numerator is T^2+2T+5");
    st_check(log, ++i, wf::validate_weil(wp.h, wp.w).ok(), "T^2+2T+5 passes Weil validation");
    wf::CurveSpec s4{5, 1, 1, 4};
    st_check(log, ++i, wf::count_points(s4) == 4, "t=4 member has 4 points");
    st_check(log, ++i, wf::zeta_numerator(s4).h == wf::IntPoly({5, -2, 1}),
             "t=4 numerator is T^2-2T+5");
  }
  {
    st_check(log, ++i, wf::split_class_fraction(1, 3) == 0,
             "split class fraction (g=1, l=3) is 0");
    st_check(log, ++i, wf::split_class_fraction(1, 5) == mpq_class(1, 4),
             "split class fraction (g=1, l=5) is 1/4");
    wf::TypeDistribution d =
        wf::coset_type_distribution(1, 3, 2, wf::SampleMode::exact());
    bool ok = d.weights.size() == 2 &&
              d.weights.at(wf::SignedCycleType::regular({{1, +1}})) == mpq_class(1, 2) &&
              d.weights.at(wf::SignedCycleType::regular({{1, -1}})) == mpq_class(1, 2);
    st_check(log, ++i, ok, "gamma=2 coset of Sp_2(F_3) splits 1/2 : 1/2");
  }
  {
    st_check(log, ++i,
             wf::quartic_galois_oracle({1, 1, 1, 1, 1}) == wf::QuarticGalois::C4,
             "T^4+T^3+T^2+T+1 has Galois group C4");
    st_check(log, ++i, wf::quartic_galois_oracle({1, 0, 0, 0, 1}) == wf::QuarticGalois::V4,
             "T^4+1 has Galois group V4");
    st_check(log, ++i, wf::quartic_galois_oracle({-2, 0, 0, 0, 1}) == wf::QuarticGalois::D4,
             "T^4-2 has Galois group D4");
    wf::WeylCertificate cert = wf::certify_weyl({5, 2, 1}, 5);
    st_check(log, ++i, cert.status == wf::CertStatus::Certified,
             "T^2+2T+5 certifies at weight 5");
  }
  {
    wf::IntPoly h{5, 2, 1};
    wf::IntPoly hr = wf::real_subfield_poly(h, 5);
    wf::CensusReport rep = wf::split_census(h, hr, 1000);
    std::vector<std::uint64_t> expected;
    for (std::uint64_t p : wf::primes_up_to(1000))
      if (p % 4 == 1) expected.push_back(p);
    st_check(log, ++i, rep.split_primes == expected,
             "split primes of T^2+2T+5 below 1000 are exactly p = 1 mod 4");
  }
  {
    double tv = wf::tv_distance(
        wf::family_type_distribution(5, 1, 1, 3),
        wf::coset_type_distribution(1, 3, 2, wf::SampleMode::exact()));
    st_check(log, ++i, tv == 0.5, "TV(family q=5 n=1 at l=3, gamma=2 coset) = 1/2");
  }

  log << (g_selftest_failures == 0 ? "selftest: all " : "selftest: FAILED ")
      << i << " checks" << (g_selftest_failures ? " (see FAIL lines)" : " passed")
      << '\n';
  emit(log.str(), out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "weylforge: zeta numerators of the marked hyperelliptic family, Weyl "
      "group certification, split-prime censuses, and symplectic coset "
      "statistics.\n\n"
      "Artifacts are canonical JSON (sorted keys, two-space indent) embedding "
      "the run configuration and a version stamp; identical configurations "
      "produce byte-identical output.  Randomized subcommands derive their "
      "stream seed as splitmix64(master_seed XOR splitmix64(task_index)) and "
      "feed it to a standard mt19937_64, so any sample can be reproduced "
      "independently.  Exit codes: 0 success, 1 domain error (structured "
      "JSON), 2 usage error."};
  app.require_subcommand(1);
  app.set_version_flag("--version", wf::kVersionStamp);
  app.set_config("--config", "", "Read options from an INI/TOML config file");

  ZetaOpts zo;
  auto* zeta = app.add_subcommand(
      "zeta", "Zeta numerator and Weil validation of one family member");
  zeta->add_option("--q", zo.q, "Base prime q > 2g")->required();
  zeta->add_option("--n", zo.n, "Extension degree (field F_{q^n})")->check(CLI::PositiveNumber);
  zeta->add_option("--g", zo.g, "Genus (1 or 2)")->check(CLI::PositiveNumber);
  zeta->add_option("--t", zo.t, "Element encoding of the moving root t")->required();
  zeta->add_option("--budget", zo.budget, "Enumeration budget (points scanned)");
  zeta->add_option("-o,--output", zo.out, "Output path (default stdout)");
  zeta->callback([&zo] { run_zeta(zo); });

  CertifyOpts co;
  auto* certify = app.add_subcommand(
      "certify", "Certify that a Weil polynomial has full Weyl group (Z/2)^g x| S_g");
  certify->add_option("--poly", co.poly,
                      "Comma-separated coefficients, constant term first")->required();
  auto* cw = certify->add_option("--w", co.w, "Weight (decimal integer)");
  auto* cq = certify->add_option("--q", co.q, "Base prime (weight = q^n)");
  certify->add_option("--n", co.n, "Extension degree for --q")->check(CLI::PositiveNumber);
  cw->excludes(cq);
  certify->add_option("--prime-budget", co.prime_budget, "Primes scanned per witness search")
      ->check(CLI::PositiveNumber);
  certify->add_option("-o,--output", co.out, "Output path (default stdout)");
  certify->callback([&co] { run_certify(co); });

  CensusOpts no;
  auto* census = app.add_subcommand(
      "census", "Split-prime census of a CM polynomial up to X");
  census->add_option("--poly", no.poly,
                     "Comma-separated coefficients, constant term first")->required();
  census->add_option("--w", no.w,
                     "Weight (default: g-th root of the constant term)");
  census->add_option("--x", no.x, "Census bound X")->required()->check(CLI::PositiveNumber);
  census->add_option("--csv", no.csv,
                     "Also write per-prime CSV rows 'p,type' to this path");
  census->add_option("-o,--output", no.out, "Output path (default stdout)");
  census->callback([&no] { run_census(no); });

  HaarOpts ho;
  auto* haar = app.add_subcommand(
      "haar", "Signed-type distribution of a gamma-coset of GSp_{2g}(F_l)");
  haar->add_option("--g", ho.g, "Genus")->required()->check(CLI::PositiveNumber);
  haar->add_option("--l", ho.l, "Odd prime l")->required();
  haar->add_option("--gamma", ho.gamma, "Similitude multiplier (nonzero mod l)");
  haar->add_option("--mode", ho.mode, "exact (full enumeration) or mc (Monte Carlo)")
      ->check(CLI::IsMember({"exact", "mc"}));
  haar->add_option("--samples", ho.samples, "Monte Carlo sample count");
  haar->add_option("--master-seed", ho.master_seed,
                   "Master seed; stream seed = splitmix64(master XOR splitmix64(task))");
  haar->add_option("--task-index", ho.task_index, "Task index for seed derivation");
  auto* hs = haar->add_option("--seed", ho.seed, "Explicit stream seed (overrides derivation)");
  haar->callback([&ho, hs] {
    ho.seed_given = hs->count() > 0;
    run_haar(ho);
  });
  haar->add_option("-o,--output", ho.out, "Output path (default stdout)");

  EquidistOpts eo;
  auto* equidist = app.add_subcommand(
      "equidist",
      "Per-n TV distance between family statistics at l and the q^n-coset");
  equidist->add_option("--q", eo.q, "Base prime")->required();
  equidist->add_option("--g", eo.g, "Genus")->check(CLI::PositiveNumber);
  equidist->add_option("--l", eo.l, "Odd prime l, distinct from q")->required();
  equidist->add_option("--n-list", eo.n_list, "Extension degrees, e.g. 1,2,3,4")
      ->required()->delimiter(',');
  equidist->add_option("--samples", eo.samples,
                       "Monte Carlo samples when the coset is too large to enumerate");
  equidist->add_option("--master-seed", eo.master_seed,
                       "Master seed (task index = n) for Monte Carlo cosets");
  equidist->add_option("--budget", eo.budget, "Enumeration budget for the family scan");
  equidist->add_option("--csv", eo.csv,
                       "Also write CSV rows 'n,gamma,tv,tv_conditioned,"
                       "family_members,coset_provenance' to this path");
  equidist->add_option("-o,--output", eo.out, "Output path (default stdout)");
  equidist->callback([&eo] { run_equidist(eo); });

  ForgeOpts fo;
  auto* forge = app.add_subcommand(
      "forge", "Scan the family under local conditions (JSON-lines output)");
  forge->add_option("--q", fo.q, "Base prime")->required();
  forge->add_option("--n", fo.n, "Extension degree")->check(CLI::PositiveNumber);
  forge->add_option("--g", fo.g, "Genus")->check(CLI::PositiveNumber);
  forge->add_option("--split", fo.split, "Prime where h must split completely (repeatable)");
  forge->add_option("--repeated", fo.repeated, "Prime where h must have a repeated root");
  forge->add_option("--inert", fo.inert, "Prime where h must have an inert pair");
  forge->add_option("--type", fo.type, "L:TYPE, exact signed cycle type at L, e.g. 3:1+,1-");
  forge->add_flag("--no-certify", fo.no_certify, "Skip Weyl certification");
  forge->add_option("--prime-budget", fo.prime_budget, "Certification prime budget")
      ->check(CLI::PositiveNumber);
  forge->add_option("--census-x", fo.census_x, "Attach a split census up to this bound");
  forge->add_option("--stride", fo.stride, "Keep every stride-th valid t");
  forge->add_option("--budget", fo.budget, "Enumeration budget");
  forge->add_option("-o,--output", fo.out, "Output path (default stdout)");
  forge->callback([&fo] { run_forge(fo); });

  SequenceOpts so;
  auto* sequence = app.add_subcommand(
      "sequence", "Build the certified sequence over n with ramifying/auxiliary primes");
  sequence->add_option("--q", so.q, "Base prime")->required();
  sequence->add_option("--g", so.g, "Genus")->check(CLI::PositiveNumber);
  sequence->add_option("--n-list", so.n_list, "Strictly ascending degrees, e.g. 1,2,4")
      ->required()->delimiter(',');
  sequence->add_option("--preset", so.preset,
                       "Parameter preset: desk (small windows, fast) or full "
                       "(1/(32 g^2) exponent, (n^5, 2n^5) windows)")
      ->check(CLI::IsMember({"desk", "full"}));
  sequence->add_option("--c-g", so.c_g, "Constant in the census count condition");
  sequence->add_option("--census-cap", so.census_cap, "Clamp on the per-candidate census bound");
  sequence->add_option("--prime-budget", so.prime_budget, "Certification prime budget");
  sequence->add_option("--budget", so.budget, "Enumeration budget");
  sequence->add_option("-o,--output", so.out, "Output path (default stdout)");
  sequence->callback([&so] { run_sequence(so); });

  std::string sto;
  auto* selftest = app.add_subcommand(
      "selftest", "Run the built-in checks against frozen small-case values");
  selftest->add_option("-o,--output", sto, "Output path (default stdout)");
  selftest->callback([&sto] { run_selftest(sto); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);  // --help / --version
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const wf::DomainError& e) {
    Json err{{"error", Json{{"code", e.code()}, {"message", e.what()}}}};
    std::cout << wf::canonical(err);
    return 1;
  } catch (const std::exception& e) {
    Json err{{"error", Json{{"code", wf::errc::internal_error}, {"message", e.what()}}}};
    std::cout << wf::canonical(err);
    return 1;
  }
  return g_selftest_failures == 0 ? 0 : 1;
}
