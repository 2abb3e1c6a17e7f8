#pragma once

#include "growth/analytic.hpp"
#include "growth/automaton.hpp"
#include "growth/certify.hpp"
#include "growth/counting.hpp"
#include "growth/io.hpp"
#include "growth/reference_tables.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace growth::cli {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int input_error = 1;
inline constexpr int budget_exhausted = 2;
inline constexpr int no_solution = 3;
inline constexpr int verification_failed = 4;
}  // namespace exit_code

namespace detail {

struct FamilyOptions {
  int alphabet = 0;
  std::string named;
  std::string power_free;
  int one_per_length = 0;
  std::string factors;
  std::string family_json;
};

inline void add_family_options(CLI::App* cmd, FamilyOptions& fo) {
  cmd->add_option("--alphabet", fo.alphabet, "alphabet size k; letters are 0..k-1");
  cmd->add_option("--family", fo.named, "named family shortcut (squarefree)");
  cmd->add_option("--power-free", fo.power_free, "p-power-free family; p as rational or decimal > 1");
  cmd->add_option("--one-per-length", fo.one_per_length,
                  "one forbidden factor of every length >= I (analytic use only)");
  cmd->add_option("--factors", fo.factors, "comma-separated forbidden factors as digit strings");
  cmd->add_option("--family-json", fo.family_json, "path to a JSON family descriptor");
}

inline FamilyDescriptor resolve_family(const FamilyOptions& fo) {
  const int sources = (!fo.named.empty() ? 1 : 0) + (!fo.power_free.empty() ? 1 : 0) +
                      (fo.one_per_length > 0 ? 1 : 0) + (!fo.factors.empty() ? 1 : 0) +
                      (!fo.family_json.empty() ? 1 : 0);
  if (sources != 1)
    throw std::invalid_argument(
        "specify exactly one of --family, --power-free, --one-per-length, --factors, --family-json");
  if (!fo.family_json.empty()) {
    std::ifstream in(fo.family_json);
    if (!in) throw std::invalid_argument("cannot open '" + fo.family_json + "'");
    json j = json::parse(in, nullptr, true);
    return descriptor_from_json(j, fo.alphabet > 0 ? std::optional<int>(fo.alphabet) : std::nullopt);
  }
  if (fo.alphabet <= 0) throw std::invalid_argument("--alphabet is required");
  Alphabet alphabet(fo.alphabet);
  if (!fo.named.empty()) {
    if (fo.named == "squarefree") return FamilyDescriptor{FactorFamily(PowerFreeFamily{Rat(2)}), alphabet};
    throw std::invalid_argument("unknown family name '" + fo.named + "' (supported: squarefree)");
  }
  if (!fo.power_free.empty())
    return FamilyDescriptor{FactorFamily(PowerFreeFamily{parse_rational(fo.power_free)}), alphabet};
  if (fo.one_per_length > 0)
    return FamilyDescriptor{FactorFamily(SpectrumFamily{OnePerLength{fo.one_per_length}}), alphabet};
  if (alphabet.size > 10)
    throw std::invalid_argument("--factors needs a digit alphabet (k <= 10); use --family-json instead");
  std::vector<Word> factors;
  size_t pos = 0;
  while (pos <= fo.factors.size()) {
    size_t next = fo.factors.find(',', pos);
    std::string tok = fo.factors.substr(pos, next == std::string::npos ? next : next - pos);
    if (tok.empty()) throw std::invalid_argument("--factors contains an empty factor");
    factors.push_back(parse_word(tok, alphabet));
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  return FamilyDescriptor{FactorFamily(ExplicitFamily{std::move(factors)}), alphabet};
}

inline void emit(const std::string& text, const std::string& output_path, std::ostream& out) {
  if (output_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(output_path, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot write '" + output_path + "'");
  f << text;
}

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

inline CountTable count_linear(const FamilyDescriptor& fd, int max_n, const CountOptions& options) {
  if (const auto* exp = fd.family.as_explicit())
    return count_with_dfa(build_factor_automaton(*exp, fd.alphabet), max_n, fd.family);
  if (const auto* rec = fd.family.as_recognizer()) return count_with_dfa(rec->dfa, max_n, fd.family);
  if (const auto* pf = fd.family.as_power_free())
    return count_power_free(fd.alphabet, pf->exponent, max_n, options);
  throw std::invalid_argument("length-spectrum families are analytic-only and cannot be counted");
}

inline FactorDFA family_dfa(const FamilyDescriptor& fd) {
  if (const auto* exp = fd.family.as_explicit()) return build_factor_automaton(*exp, fd.alphabet);
  if (const auto* rec = fd.family.as_recognizer()) return rec->dfa;
  throw std::invalid_argument("this family has no finite factor automaton");
}

struct CountArgs {
  FamilyOptions fam;
  int max_n = -1;
  bool circular = false;
  std::string format = "csv";
  std::string output;
  std::string emit_dfa;
  std::uint64_t max_nodes = 100'000'000;
  int threads = 1;
  std::string seed;  // reserved
};

inline int run_count(const CountArgs& a, std::ostream& out) {
  if (a.max_n < 0) throw std::invalid_argument("--max-n is required and must be >= 0");
  FamilyDescriptor fd = resolve_family(a.fam);
  std::optional<FactorDFA> dfa_for_emit;
  if (!a.emit_dfa.empty()) dfa_for_emit = family_dfa(fd);  // fail before the heavy count
  CountOptions options{std::max(1, a.threads), a.max_nodes};
  CountTable table = a.circular ? count_circular(fd.family, fd.alphabet, a.max_n, options)
                                : count_linear(fd, a.max_n, options);
  if (dfa_for_emit) emit(dump(dfa_to_json(*dfa_for_emit)), a.emit_dfa, out);
  emit(a.format == "json" ? dump(table_to_json(table)) : table_to_csv(table), a.output, out);
  return exit_code::ok;
}

struct AnalyzeArgs {
  FamilyOptions fam;
  std::string beta;
  bool find_beta_flag = false;
  bool pavlov = false;
  bool spectral = false;
  std::string precision;
  std::string tail_tol;
  std::string spectral_tol = "1/100000000";
  std::string output;
};

inline int run_analyze(const AnalyzeArgs& a, std::ostream& out) {
  FamilyDescriptor fd = resolve_family(a.fam);
  const Rat tail = a.tail_tol.empty() ? default_tail_tol() : parse_rational(a.tail_tol);
  const Rat precision = a.precision.empty() ? default_beta_precision() : parse_rational(a.precision);
  const bool wants_report = a.find_beta_flag || !a.beta.empty();
  if (!wants_report && !a.spectral)
    throw std::invalid_argument("one of --beta, --find-beta, --spectral is required");
  if (a.find_beta_flag && !a.beta.empty())
    throw std::invalid_argument("--beta and --find-beta are mutually exclusive");

  json result;
  int code = exit_code::ok;
  std::optional<Rat> beta;
  if (wants_report) {
    if (a.find_beta_flag) {
      if (const auto* pf = fd.family.as_power_free())
        beta = find_beta_power_free(pf->exponent, fd.alphabet.size, precision);
      else
        beta = find_beta(length_spectrum_of(fd.family), fd.alphabet.size, precision);
      if (!beta) {
        result["status"] = "no_solution";
        result["alphabet"] = fd.alphabet.size;
        code = exit_code::no_solution;
      }
    } else {
      beta = parse_rational(a.beta);
    }
    if (beta) {
      result = condition_report_to_json(build_condition_report(fd.family, fd.alphabet.size, *beta, tail));
      if (a.find_beta_flag) result["beta_maximized"] = true;
      if (a.pavlov) {
        PavlovReport pav = pavlov_condition(length_spectrum_of(fd.family), *beta, tail);
        result["pavlov"] = json{{"sum", interval_to_json(pav.sum)},
                                {"below_1_36", to_string(pav.below_bound)},
                                {"growth_condition", "callers_obligation"}};
      }
    }
  }
  if (a.spectral) {
    SpectralEnclosure enc = spectral_enclosure(family_dfa(fd), parse_rational(a.spectral_tol));
    result["spectral"] = spectral_to_json(enc);
    if (enc.status == SpectralStatus::finite_language) code = exit_code::no_solution;
  }
  emit(dump(result), a.output, out);
  return code;
}

struct EncloseArgs {
  FamilyOptions fam;
  int n = 0;
  std::string c;
  bool auto_c = false;
  std::string root_tol = "1/1000000000";
  std::string output;
  std::uint64_t max_nodes = 100'000'000;
  int threads = 1;
};

inline int run_enclose(const EncloseArgs& a, std::ostream& out) {
  if (a.n < 1) throw std::invalid_argument("--n must be >= 1");
  if (a.auto_c && !a.c.empty()) throw std::invalid_argument("--c and --auto are mutually exclusive");
  FamilyDescriptor fd = resolve_family(a.fam);
  CountOptions options{std::max(1, a.threads), a.max_nodes};
  const Rat root_tol = parse_rational(a.root_tol);
  CountTable table = count_linear(fd, a.n, options);

  GrowthEnclosure enclosure;
  json extra;
  if (a.auto_c) {
    std::optional<Rat> beta;
    if (const auto* pf = fd.family.as_power_free())
      beta = find_beta_power_free(pf->exponent, fd.alphabet.size);
    else if (fd.family.as_explicit())
      beta = find_beta(length_spectrum_of(fd.family), fd.alphabet.size);
    else
      throw std::invalid_argument("--auto needs an explicit or power-free family");
    std::optional<Rat> c;
    if (beta) {
      ConditionReport report = build_condition_report(fd.family, fd.alphabet.size, *beta);
      if (report.c_positive == Verdict::holds) c = report.omega_prime_at_beta.lo;
      extra["auto"]["beta"] = rat_to_string(*beta);
      extra["auto"]["c"] = c ? json(rat_to_string(*c)) : json(nullptr);
    } else {
      extra["auto"]["beta"] = nullptr;
    }
    if (c) {
      CertificateReport ratio = verify_growth_ratio(table, *beta);
      CertificateReport super = verify_supermult(table, *c);
      extra["auto"]["growth_ratio"] = ratio.pass() ? "pass" : "fail";
      extra["auto"]["supermult"] = super.pass() ? "pass" : "fail";
      if (ratio.pass() && super.pass()) {
        enclosure = enclose_growth(table, *c, a.n, root_tol);
      } else {
        enclosure = enclose_growth_upper(table, a.n, root_tol);
        extra["auto"]["note"] = "hypotheses not verified; lower endpoint withheld";
      }
    } else {
      enclosure = enclose_growth_upper(table, a.n, root_tol);
      extra["auto"]["note"] = "no certified positive constant; lower endpoint withheld";
    }
  } else if (!a.c.empty()) {
    enclosure = enclose_growth(table, parse_rational(a.c), a.n, root_tol);
    extra["c_source"] = "caller";
  } else {
    enclosure = enclose_growth_upper(table, a.n, root_tol);
  }
  json result = enclosure_to_json(enclosure, table);
  for (auto& [key, value] : extra.items()) result[key] = value;
  emit(dump(result), a.output, out);
  return exit_code::ok;
}

struct VerifyArgs {
  FamilyOptions fam;
  int max_n = -1;
  std::string which;
  std::string beta;
  std::string c;
  std::string format;
  std::string output;
  std::uint64_t max_nodes = 100'000'000;
  int threads = 1;
};

inline int run_verify(const VerifyArgs& a, std::ostream& out) {
  if (a.max_n < 0) throw std::invalid_argument("--max-n is required and must be >= 0");
  FamilyDescriptor fd = resolve_family(a.fam);
  CountOptions options{std::max(1, a.threads), a.max_nodes};
  if (a.which == "ratios") {
    CountTable linear = count_linear(fd, 2 * a.max_n, options);
    CountTable circular = count_circular(fd.family, fd.alphabet, a.max_n, options);
    auto rows = ratio_sequences(linear, circular);
    emit(a.format == "json" ? dump(ratios_to_json(rows)) : ratios_to_csv(rows), a.output, out);
    return exit_code::ok;
  }
  CertificateReport report;
  if (a.which == "ratio") {
    if (a.beta.empty()) throw std::invalid_argument("--which ratio needs --beta");
    report = verify_growth_ratio(count_linear(fd, a.max_n, options), parse_rational(a.beta));
  } else if (a.which == "supermult") {
    if (a.c.empty()) throw std::invalid_argument("--which supermult needs --c");
    report = verify_supermult(count_linear(fd, a.max_n, options), parse_rational(a.c));
  } else if (a.which == "circular") {
    if (a.c.empty()) throw std::invalid_argument("--which circular needs --c");
    CountTable linear = count_linear(fd, a.max_n, options);
    CountTable circular = count_circular(fd.family, fd.alphabet, a.max_n, options);
    report = verify_circular_ratio(linear, circular, parse_rational(a.c));
  } else {
    throw std::invalid_argument("--which must be one of ratio, supermult, circular, ratios");
  }
  emit(dump(certificate_to_json(report)), a.output, out);
  return report.pass() ? exit_code::ok : exit_code::verification_failed;
}

struct TablesArgs {
  std::string which;
  std::string output;
};

inline int run_tables(const TablesArgs& a, std::ostream& out) {
  std::string csv;
  if (a.which == "table1") {
    csv = "i,alphabet,beta,omega,c_printed,c_recomputed,status\n";
    for (const auto& cell : one_per_length_reference) {
      csv += std::to_string(cell.min_length) + "," + std::to_string(cell.alphabet) + ",";
      if (!cell.beta) {
        auto found = find_beta(LengthSpectrum{OnePerLength{cell.min_length}}, cell.alphabet);
        csv += ",,,,";
        csv += found ? "unexpected_solution" : "empty";
        csv += '\n';
        continue;
      }
      const Rat beta = parse_rational(cell.beta);
      const LengthSpectrum spectrum{OnePerLength{cell.min_length}};
      const Rat omega = eval_omega(spectrum, beta).lo;
      const Rat c = eval_omega_prime(spectrum, beta).lo;
      const Rat printed = parse_rational(cell.c_lower);
      const bool ok = omega <= cell.alphabet && printed <= c && c < printed + Rat(1, 100);
      csv += std::string(cell.beta) + "," + format_decimal_floor(omega, 6) + "," + cell.c_lower + "," +
             format_decimal_floor(c, 6) + "," + (ok ? "ok" : "mismatch") + "\n";
    }
  } else if (a.which == "table2") {
    csv = "alphabet,beta,c_printed,c_recomputed,status\n";
    for (const auto& cell : squarefree_reference) {
      const Rat beta = beta_squarefree(cell.alphabet);
      const Rat c = c_squarefree(beta);
      const bool ok = format_decimal_floor(c, 2) == cell.c_two_decimals;
      csv += std::to_string(cell.alphabet) + "," + format_decimal_floor(beta, 9) + "," +
             cell.c_two_decimals + "," + format_decimal_floor(c, 6) + "," + (ok ? "ok" : "mismatch") + "\n";
    }
  } else {
    throw std::invalid_argument("--which must be table1 or table2");
  }
  emit(csv, a.output, out);
  return exit_code::ok;
}

}  // namespace detail

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact counting and certified growth bounds for languages avoiding forbidden factors"};
  app.name("growth");
  app.set_version_flag("--version", "growth 1.0.0");
  app.require_subcommand(1);

  detail::CountArgs count_args;
  detail::AnalyzeArgs analyze_args;
  detail::EncloseArgs enclose_args;
  detail::VerifyArgs verify_args;
  detail::TablesArgs tables_args;
  std::function<int()> runner;

  CLI::App* count = app.add_subcommand("count", "count free words per length");
  detail::add_family_options(count, count_args.fam);
  count->add_option("--max-n", count_args.max_n, "largest length to count");
  count->add_flag("--circular", count_args.circular, "count circular (conjugate-closed) free words");
  count->add_option("--format", count_args.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  count->add_option("--output", count_args.output, "write to file instead of stdout");
  count->add_option("--emit-dfa", count_args.emit_dfa, "also write the factor automaton as JSON");
  count->add_option("--max-nodes", count_args.max_nodes, "enumeration budget");
  count->add_option("--threads", count_args.threads, "worker threads for the enumeration");
  count->add_option("--seed", count_args.seed, "reserved");
  count->callback([&] { runner = [&] { return detail::run_count(count_args, out); }; });

  CLI::App* analyze = app.add_subcommand("analyze", "evaluate the analytic growth conditions");
  detail::add_family_options(analyze, analyze_args.fam);
  analyze->add_option("--beta", analyze_args.beta, "evaluate the conditions at this beta");
  analyze->add_flag("--find-beta", analyze_args.find_beta_flag, "maximize beta first");
  analyze->add_flag("--pavlov", analyze_args.pavlov, "include the comparison sum report");
  analyze->add_flag("--spectral", analyze_args.spectral, "include a spectral enclosure (finite families)");
  analyze->add_option("--precision", analyze_args.precision, "precision for --find-beta (default 1e-9)");
  analyze->add_option("--tail-tol", analyze_args.tail_tol, "series tail tolerance (default 1e-12)");
  analyze->add_option("--spectral-tol", analyze_args.spectral_tol, "spectral enclosure width target");
  analyze->add_option("--output", analyze_args.output, "write to file instead of stdout");
  analyze->callback([&] { runner = [&] { return detail::run_analyze(analyze_args, out); }; });

  CLI::App* enclose = app.add_subcommand("enclose", "two-sided growth-rate enclosure from exact counts");
  detail::add_family_options(enclose, enclose_args.fam);
  enclose->add_option("--n", enclose_args.n, "table index used for the enclosure");
  enclose->add_option("--c", enclose_args.c, "caller-certified supermultiplicativity constant in (0,1]");
  enclose->add_flag("--auto", enclose_args.auto_c, "derive the constant and verify it on the counted table");
  enclose->add_option("--root-tol", enclose_args.root_tol, "n-th root tolerance (default 1e-9)");
  enclose->add_option("--output", enclose_args.output, "write to file instead of stdout");
  enclose->add_option("--max-nodes", enclose_args.max_nodes, "enumeration budget");
  enclose->add_option("--threads", enclose_args.threads, "worker threads for the enumeration");
  enclose->callback([&] { runner = [&] { return detail::run_enclose(enclose_args, out); }; });

  CLI::App* verify = app.add_subcommand("verify", "check certified inequalities against exact counts");
  detail::add_family_options(verify, verify_args.fam);
  verify->add_option("--max-n", verify_args.max_n, "table size to verify against");
  verify->add_option("--which", verify_args.which, "ratio, supermult, circular, or ratios")
      ->check(CLI::IsMember({"ratio", "supermult", "circular", "ratios"}));
  verify->add_option("--beta", verify_args.beta, "growth-ratio constant");
  verify->add_option("--c", verify_args.c, "supermultiplicativity / circular constant");
  verify->add_option("--format", verify_args.format, "csv or json (ratios only)")
      ->check(CLI::IsMember({"csv", "json"}));
  verify->add_option("--output", verify_args.output, "write to file instead of stdout");
  verify->add_option("--max-nodes", verify_args.max_nodes, "enumeration budget");
  verify->add_option("--threads", verify_args.threads, "worker threads for the enumeration");
  verify->callback([&] { runner = [&] { return detail::run_verify(verify_args, out); }; });

  CLI::App* tables = app.add_subcommand("tables", "recompute the published reference tables");
  tables->add_option("--which", tables_args.which, "table1 or table2")
      ->check(CLI::IsMember({"table1", "table2"}));
  tables->add_option("--output", tables_args.output, "write to file instead of stdout");
  tables->callback([&] { runner = [&] { return detail::run_tables(tables_args, out); }; });

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  static const char* prog = "growth";
  argv.push_back(prog);
  for (const auto& s : args) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e, out, err);
    return rc == 0 ? exit_code::ok : exit_code::input_error;
  }
  try {
    return runner ? runner() : exit_code::input_error;
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::budget_exhausted;
  } catch (const DivergentSeries& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::no_solution;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::input_error;
  }
}

}  // namespace growth::cli
