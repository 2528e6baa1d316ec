#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <functional>
#include <vector>

#include "weylforge/errors.hpp"
#include "weylforge/forge.hpp"

using namespace weylforge;

namespace {

IntPoly ip(std::vector<long> cs) {
  IntPoly out;
  for (long c : cs) out.emplace_back(c);
  return out;
}

SignedCycleType type_of(const std::string& s) { return SignedCycleType::parse(s); }

void check_throws(const char* expected, const std::function<void()>& fn) {
  try {
    fn();
    FAIL_CHECK("expected a DomainError");
  } catch (const DomainError& e) {
    CHECK(e.code() == expected);
  }
}

}  // namespace

TEST_CASE("constraint validation") {
  CHECK_NOTHROW(validate_constraints(5, {LocalCondition::repeated_root(2),
                                         LocalCondition::split_completely(3)}));
  check_throws(errc::conflicting_constraints, [] {
    validate_constraints(5, {LocalCondition::split_completely(3),
                             LocalCondition::inert_pair(3)});
  });
  check_throws(errc::conflicting_constraints,
               [] { validate_constraints(5, {LocalCondition::inert_pair(5)}); });
  check_throws(errc::conflicting_constraints, [] {
    validate_constraints(5, {LocalCondition::split_completely(2)});
  });
  check_throws(errc::not_prime,
               [] { validate_constraints(5, {LocalCondition::inert_pair(9)}); });
}

TEST_CASE("condition predicates on a fixed polynomial") {
  IntPoly h = ip({5, 2, 1});  // T^2 + 2T + 5, disc -16, field Q(i)
  mpz_class w = 5;
  CHECK(condition_holds(h, w, LocalCondition::split_completely(13)));
  CHECK(!condition_holds(h, w, LocalCondition::split_completely(3)));
  CHECK(condition_holds(h, w, LocalCondition::repeated_root(2)));
  CHECK(!condition_holds(h, w, LocalCondition::repeated_root(3)));
  CHECK(condition_holds(h, w, LocalCondition::inert_pair(3)));
  CHECK(!condition_holds(h, w, LocalCondition::inert_pair(13)));
  CHECK(condition_holds(h, w, LocalCondition::type_equals(3, type_of("1-"))));
  CHECK(condition_holds(h, w, LocalCondition::type_equals(13, type_of("1+"))));
  CHECK(!condition_holds(h, w, LocalCondition::type_equals(13, type_of("1-"))));
  CHECK(condition_holds(
      h, w, LocalCondition::type_equals(2, SignedCycleType::ramified())));
}

TEST_CASE("worked scan examples over F_5") {
  std::vector<CandidateRecord> all = scan_family(5, 1, 1, {});
  REQUIRE(all.size() == 3);
  std::vector<std::uint64_t> ts;
  std::vector<long> traces;
  for (const CandidateRecord& r : all) {
    ts.push_back(r.t_enc);
    traces.push_back(-static_cast<long>(r.weil.h[1].get_si()));
    CHECK(r.D == 16);
    CHECK(r.conditions_met.empty());
    REQUIRE(r.certificate.has_value());
    CHECK(r.certificate->status == CertStatus::Certified);
    CHECK(!r.census.has_value());
  }
  CHECK(ts == std::vector<std::uint64_t>{0, 3, 4});
  CHECK(traces == std::vector<long>{-2, -2, 2});

  CHECK(scan_family(5, 1, 1, {LocalCondition::split_completely(3)}).empty());

  // Every family member has disc -16, so all three have a repeated root mod 2.
  std::vector<CandidateRecord> rep =
      scan_family(5, 1, 1, {LocalCondition::repeated_root(2)});
  REQUIRE(rep.size() == 3);
  for (const CandidateRecord& r : rep) {
    CHECK(r.D % 2 == 0);
    REQUIRE(r.conditions_met.size() == 1);
    CHECK(condition_holds(r.weil.h, r.weil.w, r.conditions_met[0]));
  }
}

TEST_CASE("scan can attach a census") {
  ScanOptions opts;
  opts.certify = false;
  opts.census_x = 100;
  std::vector<CandidateRecord> recs = scan_family(5, 1, 1, {}, opts);
  REQUIRE(recs.size() == 3);
  REQUIRE(recs[0].census.has_value());
  CHECK(recs[0].census->X == 100);
  // Q(i): split primes <= 100 are 5, 13, 17, 29, 37, 41, 53, 61, 73, 89, 97.
  CHECK(recs[0].census->split_completely == 11);
  CHECK(!recs[0].certificate.has_value());
}

TEST_CASE("constrained scans equal post-hoc filtered scans") {
  ScanOptions fast;
  fast.certify = false;
  for (int n = 1; n <= 2; ++n) {
    std::vector<CandidateRecord> base = scan_family(5, n, 1, {}, fast);
    std::vector<std::vector<LocalCondition>> sets = {
        {LocalCondition::split_completely(13)},
        {LocalCondition::repeated_root(3)},
        {LocalCondition::inert_pair(7)},
        {LocalCondition::type_equals(3, type_of("1-"))},
        {LocalCondition::repeated_root(2), LocalCondition::inert_pair(3)},
    };
    for (const auto& cs : sets) {
      std::vector<std::uint64_t> expected;
      for (const CandidateRecord& r : base) {
        bool keep = true;
        for (const LocalCondition& c : cs)
          if (!condition_holds(r.weil.h, r.weil.w, c)) {
            keep = false;
            break;
          }
        if (keep) expected.push_back(r.t_enc);
      }
      std::vector<CandidateRecord> got = scan_family(5, n, 1, cs, fast);
      std::vector<std::uint64_t> got_ts;
      for (const CandidateRecord& r : got) got_ts.push_back(r.t_enc);
      CHECK(got_ts == expected);
    }
  }
}

TEST_CASE("deterministic stride subsampling") {
  ScanOptions opts;
  opts.certify = false;
  opts.stride = 5;
  std::vector<CandidateRecord> recs = scan_family(5, 2, 1, {}, opts);
  std::vector<std::uint64_t> ts;
  for (const CandidateRecord& r : recs) ts.push_back(r.t_enc);
  CHECK(ts == std::vector<std::uint64_t>{0, 7, 12, 17, 22});
  opts.stride = 0;
  check_throws(errc::bad_config, [&] { scan_family(5, 2, 1, {}, opts); });
}

TEST_CASE("family type distributions") {
  TypeDistribution d1 = family_type_distribution(5, 1, 1, 3);
  CHECK(d1.provenance == Provenance::FamilyEmpirical);
  CHECK(d1.sample_count == 3);
  REQUIRE(d1.weights.size() == 1);
  CHECK(d1.weights.at(type_of("1-")) == 1);

  // Over F_25 the multiplier is 25 = 1 mod 3 and SL_2(F_3) has no
  // split-regular class, so the all-plus weight is exactly zero; the two
  // supersingular members (trace +-10) are binned as ramified.
  TypeDistribution d2 = family_type_distribution(5, 2, 1, 3);
  CHECK(d2.sample_count == 23);
  CHECK(d2.weights.count(type_of("1+")) == 0);
  CHECK(d2.weights.at(type_of("1-")) == mpq_class(9, 23));
  CHECK(d2.weights.at(SignedCycleType::ramified()) == mpq_class(14, 23));
  mpq_class total = 0;
  for (const auto& [t, w] : d2.weights) total += w;
  CHECK(total == 1);

  // TV between the n = 1 family and the multiplier-2 coset is exactly 1/2.
  TypeDistribution coset = coset_type_distribution(1, 3, 2, SampleMode::exact());
  CHECK(tv_distance(d1, coset) == 0.5);

  check_throws(errc::bad_config, [] { family_type_distribution(5, 1, 1, 5); });
  check_throws(errc::bad_config, [] { family_type_distribution(5, 1, 1, 2); });
  check_throws(errc::not_prime, [] { family_type_distribution(5, 1, 1, 9); });
}

TEST_CASE("desk sequence over F_5") {
  std::vector<SequenceEntry> seq =
      build_sequence(5, 1, {1, 2}, SequenceParams::desk(1));
  REQUIRE(seq.size() == 2);

  const SequenceEntry& e1 = seq[0];
  CHECK(e1.n == 1);
  CHECK(!e1.gap);
  CHECK(e1.ramify_primes.empty());
  // No window prime admits a completely split candidate at n = 1 (3 and 7 are
  // inert in Q(i)), so the unconstrained fallback selects t = 0.
  CHECK(e1.aux_prime == 0);
  REQUIRE(e1.record.has_value());
  CHECK(e1.record->t_enc == 0);
  CHECK(e1.record->D == 16);
  CHECK(e1.record->certificate->status == CertStatus::Certified);
  CHECK(e1.record->census->X == 328);
  CHECK(e1.record->census->split_completely == 31);
  REQUIRE(e1.lemma31.has_value());
  CHECK(!e1.lemma31->holds);
  CHECK(e1.lemma31->count == 31);
  CHECK(e1.lemma31->threshold == doctest::Approx(160.7).epsilon(0.01));
  REQUIRE(e1.window.has_value());
  CHECK(e1.window->lower_holds);
  CHECK(!e1.window->upper_holds);  // D = 16 > 5^{n g^2} = 5
  CHECK(!e1.window->holds);

  const SequenceEntry& e2 = seq[1];
  CHECK(e2.n == 2);
  CHECK(!e2.gap);
  CHECK(e2.aux_prime == 7);
  REQUIRE(e2.record.has_value());
  CHECK(e2.record->t_enc == 6);
  CHECK(e2.record->D == 96);
  CHECK(e2.record->census->split_completely == 271);
  CHECK(e2.record->census->X == 3963);
}

TEST_CASE("desk sequence with a nonempty ramifying set") {
  std::vector<SequenceEntry> seq =
      build_sequence(5, 1, {4}, SequenceParams::desk(1));
  REQUIRE(seq.size() == 1);
  const SequenceEntry& e = seq[0];
  CHECK(!e.gap);
  CHECK(e.ramify_primes == std::vector<std::uint64_t>{3});
  CHECK(e.aux_prime == 7);
  REQUIRE(e.record.has_value());
  CHECK(e.record->t_enc == 6);
  CHECK(e.record->D == 1056);
  CHECK(e.record->D % 3 == 0);  // RepeatedRoot at 3 forces 3 | D
  CHECK(e.record->census->split_completely == 1750);
  CHECK(e.record->census->X == 32718);
  // The record's conditions re-verify from its polynomial alone.
  for (const LocalCondition& c : e.record->conditions_met)
    CHECK(condition_holds(e.record->weil.h, e.record->weil.w, c));
}

TEST_CASE("sequence selection is optimal and deterministic") {
  std::vector<SequenceEntry> a =
      build_sequence(5, 1, {1}, SequenceParams::desk(1));
  std::vector<SequenceEntry> b =
      build_sequence(5, 1, {1}, SequenceParams::desk(1));
  REQUIRE(a.size() == 1);
  REQUIRE(b.size() == 1);
  CHECK(a[0].record->t_enc == b[0].record->t_enc);
  CHECK(a[0].record->D == b[0].record->D);
  CHECK(a[0].aux_prime == b[0].aux_prime);

  // No unselected certified candidate of the same scan beats the selection.
  int best = a[0].record->census->split_completely;
  for (const CandidateRecord& r : scan_family(5, 1, 1, {})) {
    REQUIRE(r.certificate.has_value());
    if (r.certificate->status != CertStatus::Certified) continue;
    CensusReport c = split_census(
        r.weil.h, real_subfield_poly(r.weil.h, r.weil.w), 328);
    CHECK(c.split_completely <= best);
  }
}

TEST_CASE("sequence gaps and window errors") {
  // Every genus-2 curve over F_7 has a split Jacobian, so nothing certifies.
  std::vector<SequenceEntry> seq =
      build_sequence(7, 2, {1}, SequenceParams::desk(2));
  REQUIRE(seq.size() == 1);
  CHECK(seq[0].gap);
  CHECK(!seq[0].gap_reason.empty());
  CHECK(!seq[0].record.has_value());

  // The full-scale window (n^5, 2 n^5) contains no prime at n = 1.
  check_throws(errc::empty_window,
               [] { build_sequence(5, 1, {1}, SequenceParams::full(1)); });
  check_throws(errc::bad_config,
               [] { build_sequence(5, 1, {2, 1}, SequenceParams::desk(1)); });
  check_throws(errc::bad_config,
               [] { build_sequence(5, 1, {0}, SequenceParams::desk(1)); });
}

TEST_CASE("genus-2 sequence with a capped census") {
  SequenceParams params = SequenceParams::desk(2);
  params.census_cap = 50'000;
  std::vector<SequenceEntry> seq = build_sequence(7, 2, {2}, params);
  REQUIRE(seq.size() == 1);
  const SequenceEntry& e = seq[0];
  CHECK(!e.gap);
  CHECK(e.aux_prime == 0);  // fallback: no window prime splits in any field
  REQUIRE(e.record.has_value());
  CHECK(e.record->t_enc == 14);
  CHECK(e.record->D == mpz_class("1455190704128"));
  CHECK(e.record->census->X == 50'000);
  // About pi(50000) / 8 = 642 primes split; the exact count is 617.
  CHECK(e.record->census->split_completely == 617);
  CHECK(!e.lemma31.has_value());  // capped census cannot settle the condition
  CHECK(e.lemma31_note.find("InsufficientCensus") == 0);
  REQUIRE(e.window.has_value());
}
