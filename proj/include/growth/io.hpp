#pragma once

#include "growth/analytic.hpp"
#include "growth/automaton.hpp"
#include "growth/certify.hpp"
#include "growth/count_table.hpp"
#include "growth/family.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace growth {

using json = nlohmann::ordered_json;

inline json interval_to_json(const RationalInterval& iv) {
  return json{{"lo", rat_to_string(iv.lo)}, {"hi", rat_to_string(iv.hi)}};
}

inline json dfa_to_json(const FactorDFA& dfa) {
  json j;
  j["states"] = dfa.state_count;
  j["start"] = dfa.start;
  j["dead"] = dfa.dead ? json(*dfa.dead) : json(nullptr);
  j["delta"] = dfa.delta;
  return j;
}

inline FactorDFA dfa_from_json(const json& j) {
  FactorDFA dfa;
  dfa.state_count = j.at("states").get<int>();
  dfa.start = j.at("start").get<int>();
  if (!j.at("dead").is_null()) dfa.dead = j.at("dead").get<int>();
  dfa.delta = j.at("delta").get<std::vector<std::vector<int>>>();
  dfa.validate();
  return dfa;
}

inline json family_to_json(const FactorFamily& family, const Alphabet& alphabet) {
  json j;
  if (const auto* exp = family.as_explicit()) {
    j["type"] = "explicit";
    json factors = json::array();
    for (const Word& f : exp->factors) factors.push_back(format_word(f, alphabet));
    j["factors"] = std::move(factors);
  } else if (const auto* rec = family.as_recognizer()) {
    j["type"] = "recognizer";
    j["dfa"] = dfa_to_json(rec->dfa);
  } else if (const auto* pf = family.as_power_free()) {
    j["type"] = "power_free";
    j["p"] = rat_to_string(pf->exponent);
  } else {
    const auto& spectrum = family.as_spectrum()->spectrum;
    if (const auto* one = std::get_if<OnePerLength>(&spectrum)) {
      j["type"] = "one_per_length";
      j["min_length"] = one->min_length;
    } else {
      j["type"] = "length_list";
      j["lengths"] = std::get<LengthList>(spectrum).lengths;
    }
  }
  return j;
}

struct FamilyDescriptor {
  FactorFamily family;
  Alphabet alphabet;
};

namespace detail {

inline FactorFamily family_body_from_json(const json& j, const Alphabet& alphabet) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "explicit") {
    std::vector<Word> factors;
    for (const auto& item : j.at("factors")) factors.push_back(parse_word(item.get<std::string>(), alphabet));
    return FactorFamily(ExplicitFamily{std::move(factors)});
  }
  if (type == "recognizer") {
    FactorDFA dfa = dfa_from_json(j.at("dfa"));
    if (dfa.alphabet_size() != alphabet.size)
      throw std::invalid_argument("recognizer transition width disagrees with the alphabet size");
    return FactorFamily(RecognizerFamily{std::move(dfa)});
  }
  if (type == "power_free") return FactorFamily(PowerFreeFamily{parse_rational(j.at("p").get<std::string>())});
  if (type == "one_per_length")
    return FactorFamily(SpectrumFamily{OnePerLength{j.at("min_length").get<int>()}});
  if (type == "length_list")
    return FactorFamily(SpectrumFamily{LengthList{j.at("lengths").get<std::vector<int>>()}});
  throw std::invalid_argument("unknown family type '" + type + "'");
}

}  // namespace detail

// Accepts either the wrapped form {"alphabet": k, "family": {...}} or a bare
// family object plus an alphabet supplied by the caller. A caller-supplied
// alphabet must agree with a wrapped one.
inline FamilyDescriptor descriptor_from_json(const json& j, std::optional<int> caller_alphabet) {
  std::optional<int> file_alphabet;
  const json* body = &j;
  if (j.contains("family")) {
    body = &j.at("family");
    if (j.contains("alphabet")) file_alphabet = j.at("alphabet").get<int>();
  } else if (j.contains("type")) {
    if (j.contains("alphabet")) file_alphabet = j.at("alphabet").get<int>();
  } else {
    throw std::invalid_argument("family descriptor needs a 'family' object or a 'type' field");
  }
  if (file_alphabet && caller_alphabet && *file_alphabet != *caller_alphabet)
    throw std::invalid_argument("alphabet in descriptor disagrees with the requested alphabet");
  std::optional<int> k = file_alphabet ? file_alphabet : caller_alphabet;
  if (!k) throw std::invalid_argument("no alphabet size available for the family descriptor");
  Alphabet alphabet(*k);
  return FamilyDescriptor{detail::family_body_from_json(*body, alphabet), alphabet};
}

inline json table_to_json(const CountTable& table) {
  json j;
  j["family"] = family_to_json(table.family, table.alphabet);
  j["alphabet"] = table.alphabet.size;
  j["circular"] = table.circular;
  json counts = json::object();
  for (int n = 0; n <= table.max_n(); ++n) counts[std::to_string(n)] = table.at(n).str();
  j["counts"] = std::move(counts);
  return j;
}

inline std::string table_to_csv(const CountTable& table) {
  std::string out = "n,count\n";
  for (int n = 0; n <= table.max_n(); ++n) {
    out += std::to_string(n);
    out += ',';
    out += table.at(n).str();
    out += '\n';
  }
  return out;
}

inline json certificate_to_json(const CertificateReport& report) {
  json j;
  j["kind"] = report.kind;
  if (report.beta) j["beta"] = rat_to_string(*report.beta);
  if (report.c) j["c"] = rat_to_string(*report.c);
  j["checked"] = json{{"from", report.checked_from}, {"to", report.checked_to}};
  json failures = json::array();
  for (const auto& w : report.failures) {
    json f;
    f["n"] = w.n;
    if (w.m) f["m"] = *w.m;
    if (!w.side.empty()) f["side"] = w.side;
    f["lhs"] = rat_to_string(w.lhs);
    f["rhs"] = rat_to_string(w.rhs);
    failures.push_back(std::move(f));
  }
  j["failures"] = std::move(failures);
  j["verdict"] = report.pass() ? "pass" : "fail";
  return j;
}

inline json condition_report_to_json(const ConditionReport& report) {
  json j;
  j["kind"] = report.kind;
  j["alphabet"] = report.alphabet_size;
  j["beta"] = rat_to_string(report.beta);
  j["omega_at_beta"] = interval_to_json(report.omega_at_beta);
  j["omega_prime_at_beta"] = interval_to_json(report.omega_prime_at_beta);
  j["condition_eq2_holds"] = to_string(report.condition_eq2_holds);
  j["condition_strict"] = to_string(report.condition_strict);
  j["c_positive"] = to_string(report.c_positive);
  return j;
}

inline json enclosure_to_json(const GrowthEnclosure& enc, const CountTable& table) {
  json j;
  j["lo"] = enc.lo ? json(rat_to_string(*enc.lo)) : json(nullptr);
  j["hi"] = rat_to_string(enc.hi);
  j["n_used"] = enc.n_used;
  j["c_used"] = enc.c_used ? json(rat_to_string(*enc.c_used)) : json(nullptr);
  j["table"] = json{{"family", family_to_json(table.family, table.alphabet)},
                    {"alphabet", table.alphabet.size},
                    {"circular", table.circular}};
  return j;
}

inline json spectral_to_json(const SpectralEnclosure& enc) {
  json j;
  switch (enc.status) {
    case SpectralStatus::converged: j["status"] = "converged"; break;
    case SpectralStatus::stalled: j["status"] = "stalled"; break;
    case SpectralStatus::finite_language: j["status"] = "finite_language"; break;
  }
  j["interval"] = enc.interval ? interval_to_json(*enc.interval) : json(nullptr);
  j["iterations"] = enc.iterations;
  return j;
}

inline std::string ratios_to_csv(const std::vector<RatioRow>& rows) {
  bool with_diag = !rows.empty() && rows.front().c_diag.has_value();
  std::string out = with_diag ? "t,c_check,c_circ,c_diag_uncertified\n" : "t,c_check,c_circ\n";
  for (const auto& row : rows) {
    out += std::to_string(row.t);
    out += ',';
    out += rat_to_string(row.c_check);
    out += ',';
    out += rat_to_string(row.c_circ);
    if (with_diag) {
      out += ',';
      out += rat_to_string(*row.c_diag);
    }
    out += '\n';
  }
  return out;
}

inline json ratios_to_json(const std::vector<RatioRow>& rows) {
  json arr = json::array();
  for (const auto& row : rows) {
    json j;
    j["t"] = row.t;
    j["c_check"] = rat_to_string(row.c_check);
    j["c_circ"] = rat_to_string(row.c_circ);
    if (row.c_diag) j["c_diag_uncertified"] = rat_to_string(*row.c_diag);
    arr.push_back(std::move(j));
  }
  return arr;
}

}  // namespace growth
