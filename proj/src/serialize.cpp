#include "weylforge/serialize.hpp"

#include <cstddef>

#include "weylforge/errors.hpp"
#include "weylforge/nt_util.hpp"

namespace weylforge {

std::string canonical(const Json& j) { return j.dump(2) + "\n"; }

Json to_json(const mpz_class& n) { return n.get_str(); }

Json to_json(const mpq_class& r) { return r.get_str(); }

Json to_json(const IntPoly& h) {
  Json arr = Json::array();
  for (const mpz_class& c : h) arr.push_back(c.get_str());
  return arr;
}

Json to_json(const WeilPoly& wp) {
  return Json{{"g", wp.g}, {"h", to_json(wp.h)}, {"w", to_json(wp.w)}};
}

Json to_json(const WeilValidation& v) {
  return Json{{"coefficient_bounds", v.coefficient_bounds},
              {"functional_equation", v.functional_equation},
              {"max_unit_error", v.max_unit_error},
              {"ok", v.ok()},
              {"roots_on_circle", v.roots_on_circle}};
}

Json to_json(const SignedCycleType& t) { return t.to_string(); }

std::string to_string(IrredStatus s) {
  switch (s) {
    case IrredStatus::Irreducible: return "Irreducible";
    case IrredStatus::Reducible: return "Reducible";
    case IrredStatus::Inconclusive: return "Inconclusive";
  }
  return "?";
}

std::string to_string(IrredMethod m) {
  switch (m) {
    case IrredMethod::Degree: return "Degree";
    case IrredMethod::RationalRoot: return "RationalRoot";
    case IrredMethod::ModPCertificate: return "ModPCertificate";
    case IrredMethod::Zassenhaus: return "Zassenhaus";
  }
  return "?";
}

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::ExactEnumeration: return "ExactEnumeration";
    case Provenance::MonteCarlo: return "MonteCarlo";
    case Provenance::FamilyEmpirical: return "FamilyEmpirical";
  }
  return "?";
}

Json to_json(const IrreducibilityResult& r) {
  Json j{{"certificate_prime", r.certificate_prime},
         {"method", to_string(r.method)},
         {"primes_tried", r.primes_tried},
         {"status", to_string(r.status)}};
  if (r.witness)
    j["witness"] = Json::array(
        {to_json(r.witness->first), to_json(r.witness->second)});
  return j;
}

Json to_json(const WeylCertificate& c) {
  const WeylEvidence& e = c.evidence;
  Json ev{{"cm_field", e.cm_field},
          {"h_real", to_json(e.h_real)},
          {"irreducibility", to_json(e.irreducibility)},
          {"kernel_witness",
           e.kernel_witness ? Json(e.kernel_witness->to_string()) : Json()},
          {"kernel_witness_prime", e.kernel_witness_prime},
          {"primes_scanned", e.primes_scanned},
          {"sg_method", e.sg_method},
          {"sg_projection", e.sg_projection}};
  return Json{{"evidence", ev},
              {"reason", c.reason},
              {"status", to_string(c.status)}};
}

Json to_json(const CensusReport& r) {
  Json by_type = Json::object();
  for (const auto& [t, c] : r.by_type) by_type[t.to_string()] = c;
  Json splits = Json::array();
  for (std::uint64_t p : r.split_primes) splits.push_back(p);
  return Json{{"D", to_json(r.D)},
              {"X", r.X},
              {"by_type", by_type},
              {"density_estimate", r.density_estimate},
              {"density_exact", to_json(r.density_exact)},
              {"expected_density", to_json(r.expected_density)},
              {"h", to_json(r.h)},
              {"h_real", to_json(r.h_real)},
              {"primes_scanned", r.primes_scanned},
              {"ramified", r.ramified},
              {"split_completely", r.split_completely},
              {"split_primes", splits}};
}

Json to_json(const Lemma31Result& r) {
  return Json{{"bound", r.bound},
              {"count", r.count},
              {"holds", r.holds},
              {"threshold", r.threshold}};
}

Json to_json(const DiscWindowResult& r) {
  return Json{{"holds", r.holds},
              {"lower_holds", r.lower_holds},
              {"upper_holds", r.upper_holds}};
}

Json to_json(const TypeDistribution& d) {
  Json weights = Json::object();
  for (const auto& [t, w] : d.weights) weights[t.to_string()] = to_json(w);
  Json j{{"provenance", to_string(d.provenance)},
         {"sample_count", d.sample_count},
         {"weights", weights}};
  if (!d.std_error.empty()) {
    Json se = Json::object();
    for (const auto& [t, e] : d.std_error) se[t.to_string()] = e;
    j["std_error"] = se;
  }
  return j;
}

Json to_json(const LocalCondition& c) {
  Json j{{"kind", to_string(c.kind)}, {"l", c.l}};
  if (c.kind == ConditionKind::TypeEquals) j["type"] = c.type.to_string();
  return j;
}

Json to_json(const CandidateRecord& r) {
  Json conds = Json::array();
  for (const LocalCondition& c : r.conditions_met) conds.push_back(to_json(c));
  return Json{{"D", to_json(r.D)},
              {"census", r.census ? to_json(*r.census) : Json()},
              {"certificate", r.certificate ? to_json(*r.certificate) : Json()},
              {"conditions_met", conds},
              {"t", r.t_enc},
              {"weil", to_json(r.weil)}};
}

Json to_json(const SequenceEntry& e) {
  Json ram = Json::array();
  for (std::uint64_t p : e.ramify_primes) ram.push_back(p);
  Json j{{"aux_prime", e.aux_prime},
         {"gap", e.gap},
         {"n", e.n},
         {"ramify_primes", ram}};
  if (e.gap) {
    j["gap_reason"] = e.gap_reason;
    return j;
  }
  j["record"] = e.record ? to_json(*e.record) : Json();
  j["lemma31"] = e.lemma31 ? to_json(*e.lemma31) : Json();
  if (!e.lemma31_note.empty()) j["lemma31_note"] = e.lemma31_note;
  j["disc_window"] = e.window ? to_json(*e.window) : Json();
  return j;
}

std::string census_csv(const CensusReport& r) {
  int g = intpoly::degree(r.h) / 2;
  mpz_class w;
  mpz_root(w.get_mpz_t(), r.h[0].get_mpz_t(), static_cast<unsigned long>(g));
  mpz_class dh = intpoly::discriminant(r.h);
  mpz_class dhr =
      intpoly::degree(r.h_real) >= 2 ? intpoly::discriminant(r.h_real) : 1;
  std::string out = "p,type\n";
  for (std::uint64_t p : primes_up_to(r.X)) {
    SignedCycleType t = signed_cycle_type_with(r.h, r.h_real, p, dh, dhr, w);
    out += std::to_string(p);
    out += ',';
    out += t.to_string();
    out += '\n';
  }
  return out;
}

IntPoly poly_from_string(const std::string& s) {
  IntPoly out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t comma = s.find(',', pos);
    std::string tok = s.substr(pos, comma == std::string::npos ? std::string::npos
                                                               : comma - pos);
    std::size_t a = tok.find_first_not_of(" \t");
    std::size_t b = tok.find_last_not_of(" \t");
    if (a == std::string::npos)
      throw DomainError(errc::bad_config, "empty coefficient in '" + s + "'");
    tok = tok.substr(a, b - a + 1);
    mpz_class c;
    if (mpz_set_str(c.get_mpz_t(), tok.c_str(), 10) != 0)
      throw DomainError(errc::bad_config,
                        "'" + tok + "' is not a decimal integer");
    out.push_back(c);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (out.empty())
    throw DomainError(errc::bad_config, "empty polynomial");
  return out;
}

}  // namespace weylforge
