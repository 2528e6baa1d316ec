#pragma once

#include <string>

#include "json.hpp"

#include "weylforge/census.hpp"
#include "weylforge/curve.hpp"
#include "weylforge/forge.hpp"
#include "weylforge/intpoly.hpp"
#include "weylforge/sympstat.hpp"
#include "weylforge/weylcert.hpp"

namespace weylforge {

using Json = nlohmann::json;

// Version stamp embedded in every artifact.
inline constexpr const char* kVersionStamp = "weylforge 0.1.0";

// Canonical rendering: keys sorted (nlohmann's default object ordering),
// two-space indentation, trailing newline.  Byte-identical across runs.
std::string canonical(const Json& j);

// Integers that can exceed 64 bits serialize as decimal strings, rationals
// as "num/den" (or "num" when the denominator is 1).
Json to_json(const mpz_class& n);
Json to_json(const mpq_class& r);
Json to_json(const IntPoly& h);  // little-endian coefficient strings

Json to_json(const WeilPoly& wp);
Json to_json(const WeilValidation& v);
Json to_json(const SignedCycleType& t);
Json to_json(const IrreducibilityResult& r);
Json to_json(const WeylCertificate& c);
Json to_json(const CensusReport& r);
Json to_json(const Lemma31Result& r);
Json to_json(const DiscWindowResult& r);
Json to_json(const TypeDistribution& d);
Json to_json(const LocalCondition& c);
Json to_json(const CandidateRecord& r);
Json to_json(const SequenceEntry& e);

std::string to_string(IrredStatus s);
std::string to_string(IrredMethod m);
std::string to_string(Provenance p);

// CSV rows "p,type" for every prime in the census scan, ascending, with a
// header line.
std::string census_csv(const CensusReport& r);

// Inverse of to_json(IntPoly) for CLI input: comma-separated decimal
// coefficients, constant term first.  Errors: BadConfig on malformed input.
IntPoly poly_from_string(const std::string& s);

}  // namespace weylforge
