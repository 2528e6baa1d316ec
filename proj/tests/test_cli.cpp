#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "weylforge/errors.hpp"
#include "weylforge/forge.hpp"
#include "weylforge/serialize.hpp"

using namespace weylforge;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

// Run the CLI binary with the given arguments, capturing stdout.
RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(WEYLFORGE_BIN) + " " + args + " 2>/dev/null";
  std::FILE* pipe = ::popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0)
    r.out.append(buf.data(), got);
  int status = ::pclose(pipe);
  r.exit_code = WEXITSTATUS(status);
  return r;
}

}  // namespace

TEST_CASE("canonical JSON rendering") {
  Json j{{"b", 1}, {"a", "x"}};
  CHECK(canonical(j) == "{\n  \"a\": \"x\",\n  \"b\": 1\n}\n");
  CHECK(canonical(j) == canonical(Json{{"a", "x"}, {"b", 1}}));
}

TEST_CASE("big integers and rationals serialize as decimal strings") {
  CHECK(to_json(mpz_class("123456789012345678901234567890")) ==
        Json("123456789012345678901234567890"));
  CHECK(to_json(mpz_class(-7)) == Json("-7"));
  CHECK(to_json(mpq_class(1, 4)) == Json("1/4"));
  CHECK(to_json(mpq_class(3)) == Json("3"));
  CHECK(to_json(IntPoly{5, 2, 1}) == Json::array({"5", "2", "1"}));
}

TEST_CASE("poly_from_string round-trips and validates") {
  CHECK(poly_from_string("5,2,1") == IntPoly({5, 2, 1}));
  CHECK(poly_from_string(" 5 , -2 , 1 ") == IntPoly({5, -2, 1}));
  CHECK(poly_from_string("123456789012345678901234567890") ==
        IntPoly({mpz_class("123456789012345678901234567890")}));
  CHECK_THROWS_AS(poly_from_string(""), DomainError);
  CHECK_THROWS_AS(poly_from_string("1,,2"), DomainError);
  CHECK_THROWS_AS(poly_from_string("1,x"), DomainError);
}

TEST_CASE("type distribution and certificate serialization") {
  TypeDistribution d;
  d.weights[SignedCycleType::regular({{1, +1}})] = mpq_class(1, 4);
  d.weights[SignedCycleType::regular({{1, -1}})] = mpq_class(3, 4);
  Json j = to_json(d);
  CHECK(j["weights"]["1+"] == "1/4");
  CHECK(j["weights"]["1-"] == "3/4");
  CHECK(j["provenance"] == "ExactEnumeration");

  WeylCertificate cert = certify_weyl({5, 2, 1}, 5);
  Json cj = to_json(cert);
  CHECK(cj["status"] == "certified");
  CHECK(cj["evidence"]["kernel_witness"] == "1-");
  CHECK(cj["evidence"]["h_real"] == Json::array({"2", "1"}));
}

TEST_CASE("census CSV rows match the report classification") {
  IntPoly h{5, 2, 1};
  IntPoly hr = real_subfield_poly(h, 5);
  CensusReport rep = split_census(h, hr, 30);
  std::string csv = census_csv(rep);
  CHECK(csv ==
        "p,type\n"
        "2,ram\n"
        "3,1-\n"
        "5,1+\n"
        "7,1-\n"
        "11,1-\n"
        "13,1+\n"
        "17,1+\n"
        "19,1-\n"
        "23,1-\n"
        "29,1+\n");
}

TEST_CASE("zeta subcommand reproduces the worked example") {
  RunResult r = run_cli("zeta --q 5 --t 0");
  REQUIRE(r.exit_code == 0);
  Json doc = Json::parse(r.out);
  CHECK(doc["h"] == Json::array({"5", "2", "1"}));
  CHECK(doc["counts"] == Json::array({"8"}));
  CHECK(doc["validation"]["ok"] == true);
  CHECK(doc["version"] == kVersionStamp);
  CHECK(doc["config"]["q"] == 5);
}

TEST_CASE("haar subcommand reproduces the exact SL2(F5) weights") {
  RunResult r = run_cli("haar --g 1 --l 5 --gamma 1");
  REQUIRE(r.exit_code == 0);
  Json doc = Json::parse(r.out);
  CHECK(doc["distribution"]["weights"]["1+"] == "1/4");
  CHECK(doc["weights_approx"]["1+"] == 0.25);
}

TEST_CASE("certify artifact is self-describing") {
  RunResult r = run_cli("certify --poly 5,2,1 --q 5 --n 1");
  REQUIRE(r.exit_code == 0);
  Json doc = Json::parse(r.out);
  CHECK(doc["certificate"]["status"] == "certified");
  // Re-running certify on the embedded polynomial reproduces the status.
  IntPoly h;
  for (const auto& c : doc["config"]["poly"])
    h.push_back(mpz_class(c.get<std::string>()));
  mpz_class w(doc["config"]["w"].get<std::string>());
  CHECK(certify_weyl(h, w).status == CertStatus::Certified);
}

TEST_CASE("domain errors exit 1 with a structured code") {
  RunResult r = run_cli("zeta --q 6 --t 0");
  CHECK(r.exit_code == 1);
  Json doc = Json::parse(r.out);
  CHECK(doc["error"]["code"] == "NotPrime");
  CHECK(doc["error"]["message"].is_string());
}

TEST_CASE("usage errors exit 2 without artifacts") {
  CHECK(run_cli("zeta --q 5").exit_code == 2);           // missing --t
  CHECK(run_cli("nonsense").exit_code == 2);             // unknown subcommand
  CHECK(run_cli("haar --g 1 --l 5 --mode bogus").exit_code == 2);
  CHECK(run_cli("zeta --q 5").out.empty());
}

TEST_CASE("forge emits one meta line plus one record per line") {
  RunResult r = run_cli("forge --q 5 --n 1 --g 1 --no-certify");
  REQUIRE(r.exit_code == 0);
  std::vector<Json> lines;
  std::size_t pos = 0;
  while (pos < r.out.size()) {
    std::size_t nl = r.out.find('\n', pos);
    REQUIRE(nl != std::string::npos);
    lines.push_back(Json::parse(r.out.substr(pos, nl - pos)));
    pos = nl + 1;
  }
  REQUIRE(lines.size() == 4);  // meta + 3 records
  CHECK(lines[0]["records"] == 3);
  CHECK(lines[1]["t"] == 0);
  CHECK(lines[2]["t"] == 3);
  CHECK(lines[3]["t"] == 4);
  CHECK(lines[3]["weil"]["h"] == Json::array({"5", "-2", "1"}));
}

TEST_CASE("equidist reports the exact n=1 TV distance") {
  RunResult r = run_cli("equidist --q 5 --l 3 --n-list 1,2");
  REQUIRE(r.exit_code == 0);
  Json doc = Json::parse(r.out);
  REQUIRE(doc["rows"].size() == 2);
  CHECK(doc["rows"][0]["gamma"] == 2);
  CHECK(doc["rows"][0]["tv"] == 0.5);
  CHECK(doc["rows"][1]["gamma"] == 1);
  CHECK(doc["rows"][1]["tv_conditioned"] == 0.0);
}

TEST_CASE("identical configurations give byte-identical artifacts") {
  std::string args = "sequence --q 5 --n-list 1,2 --census-cap 50000";
  RunResult a = run_cli(args);
  RunResult b = run_cli(args);
  REQUIRE(a.exit_code == 0);
  CHECK(a.out == b.out);
  Json doc = Json::parse(a.out);
  REQUIRE(doc["entries"].size() == 2);
  CHECK(doc["entries"][0]["record"]["t"] == 0);
  CHECK(doc["entries"][0]["lemma31"]["count"] == 31);
  CHECK(doc["entries"][1]["aux_prime"] == 7);

  // Monte-Carlo runs with the same master seed are also reproducible.
  std::string mc = "haar --g 1 --l 101 --gamma 1 --mode mc --samples 2000 --master-seed 9";
  CHECK(run_cli(mc).out == run_cli(mc).out);
}

TEST_CASE("selftest passes") {
  RunResult r = run_cli("selftest");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("selftest: all") != std::string::npos);
  CHECK(r.out.find("FAIL") == std::string::npos);
}
