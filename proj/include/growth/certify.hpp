#pragma once

#include "growth/count_table.hpp"
#include "growth/rational.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace growth {

struct FailureWitness {
  int n = 0;
  std::optional<int> m;    // second index for pair checks
  std::string side;        // "lower" / "upper" for the circular two-sided check
  Rat lhs, rhs;            // the violated inequality was lhs >= rhs
};

struct CertificateReport {
  std::string kind;  // growth_ratio | supermult | circular_ratio
  std::optional<Rat> beta, c;
  int checked_from = 0;
  int checked_to = 0;
  std::vector<FailureWitness> failures;

  bool pass() const { return failures.empty(); }
};

namespace detail {

// count_lhs >= q * count_rhs, exactly: den(q)·lhs >= num(q)·rhs.
inline bool at_least_scaled(const Int& lhs, const Rat& q, const Int& rhs) {
  return denominator(q) * lhs >= numerator(q) * rhs;
}

}  // namespace detail

// Checks |L_{n+1}| >= beta * |L_n| over the whole table.
inline CertificateReport verify_growth_ratio(const CountTable& table, const Rat& beta) {
  CertificateReport report;
  report.kind = "growth_ratio";
  report.beta = beta;
  report.checked_from = 0;
  report.checked_to = table.max_n() - 1;
  for (int n = 0; n + 1 <= table.max_n(); ++n) {
    const Int& next = table.at(n + 1);
    const Int& cur = table.at(n);
    if (!detail::at_least_scaled(next, beta, cur))
      report.failures.push_back(FailureWitness{n, std::nullopt, {}, Rat(next), beta * cur});
  }
  return report;
}

// Checks |L_{n+m}| >= c * |L_n| * |L_m| for every pair with n + m <= max_n.
// All pairs are checked; the table is desk-scale so quadratic cost is fine.
inline CertificateReport verify_supermult(const CountTable& table, const Rat& c) {
  CertificateReport report;
  report.kind = "supermult";
  report.c = c;
  report.checked_from = 0;
  report.checked_to = table.max_n();
  for (int n = 0; n <= table.max_n(); ++n) {
    for (int m = n; n + m <= table.max_n(); ++m) {
      const Int product = table.at(n) * table.at(m);
      if (!detail::at_least_scaled(table.at(n + m), c, product))
        report.failures.push_back(FailureWitness{n, m, {}, Rat(table.at(n + m)), c * product});
    }
  }
  return report;
}

// Checks c * |L_n| <= |circular L_n| <= |L_n| for n = 1..N.
inline CertificateReport verify_circular_ratio(const CountTable& linear, const CountTable& circular,
                                               const Rat& c) {
  if (linear.circular || !circular.circular)
    throw std::invalid_argument("verify_circular_ratio: expected a linear and a circular table");
  if (!(linear.alphabet == circular.alphabet) || !(linear.family == circular.family))
    throw std::invalid_argument("verify_circular_ratio: tables describe different languages");
  CertificateReport report;
  report.kind = "circular_ratio";
  report.c = c;
  report.checked_from = 1;
  report.checked_to = std::min(linear.max_n(), circular.max_n());
  for (int n = 1; n <= report.checked_to; ++n) {
    const Int& lin = linear.at(n);
    const Int& circ = circular.at(n);
    if (!detail::at_least_scaled(circ, c, lin))
      report.failures.push_back(FailureWitness{n, std::nullopt, "lower", Rat(circ), c * lin});
    if (circ > lin) report.failures.push_back(FailureWitness{n, std::nullopt, "upper", Rat(lin), Rat(circ)});
  }
  return report;
}

// Certified n-th root: lo^n <= x <= hi^n with hi - lo <= tol.
inline RationalInterval nth_root_interval(const Rat& x, int n, const Rat& tol) {
  if (x < 0) throw std::invalid_argument("nth_root_interval: negative radicand");
  if (n < 1) throw std::invalid_argument("nth_root_interval: order must be >= 1");
  if (tol <= 0) throw std::invalid_argument("nth_root_interval: tolerance must be positive");
  if (x == 0) return RationalInterval::exact(Rat(0));
  if (n == 1) return RationalInterval::exact(x);
  Rat lo = 0;
  Rat hi = x < 1 ? Rat(1) : x;
  while (hi - lo > tol) {
    Rat mid = (lo + hi) / 2;
    (rat_pow(mid, n) <= x ? lo : hi) = mid;
  }
  return RationalInterval(lo, hi);
}

struct GrowthEnclosure {
  std::optional<Rat> lo;  // (c * |L_n|)^{1/n}, rounded down; absent without a certified c
  Rat hi;                 // |L_n|^{1/n}, rounded up
  int n_used = 0;
  std::optional<Rat> c_used;
};

// Two-sided growth-rate enclosure from a single table entry. Rounding is
// always outward; the caller certifies the supermultiplicativity hypothesis
// that justifies the lower endpoint.
inline GrowthEnclosure enclose_growth(const CountTable& table, const Rat& c, int n, const Rat& root_tol) {
  if (n < 1) throw std::invalid_argument("enclose_growth: n must be >= 1");
  if (c <= 0 || c > 1) throw std::invalid_argument("enclose_growth: c must lie in (0, 1]");
  const Int& count = table.at(n);
  GrowthEnclosure enc;
  enc.n_used = n;
  enc.c_used = c;
  enc.lo = nth_root_interval(c * Rat(count), n, root_tol).lo;
  enc.hi = nth_root_interval(Rat(count), n, root_tol).hi;
  return enc;
}

// Upper endpoint only; used when no positive constant is certified.
inline GrowthEnclosure enclose_growth_upper(const CountTable& table, int n, const Rat& root_tol) {
  if (n < 1) throw std::invalid_argument("enclose_growth: n must be >= 1");
  GrowthEnclosure enc;
  enc.n_used = n;
  enc.hi = nth_root_interval(Rat(table.at(n)), n, root_tol).hi;
  return enc;
}

struct RatioRow {
  int t = 0;
  Rat c_check;               // |L_{2t}| / |L_t|^2
  Rat c_circ;                // |circular L_t| / |L_t|
  std::optional<Rat> c_diag; // |L_t| / mid^t, non-certified diagnostic
};

// Exact ratio sequences for the supermultiplicativity-vs-circular comparison.
// When a growth midpoint is supplied, the diagnostic column |L_t|/mid^t is
// attached; it is not a certified quantity.
inline std::vector<RatioRow> ratio_sequences(const CountTable& linear, const CountTable& circular,
                                             const std::optional<Rat>& growth_mid = std::nullopt) {
  if (linear.circular || !circular.circular)
    throw std::invalid_argument("ratio_sequences: expected a linear and a circular table");
  if (!(linear.alphabet == circular.alphabet) || !(linear.family == circular.family))
    throw std::invalid_argument("ratio_sequences: tables describe different languages");
  const int t_max = std::min(circular.max_n(), linear.max_n() / 2);
  std::vector<RatioRow> rows;
  rows.reserve(static_cast<size_t>(t_max));
  for (int t = 1; t <= t_max; ++t) {
    const Int& lin = linear.at(t);
    if (lin == 0) throw std::domain_error("ratio_sequences: zero linear count at t = " + std::to_string(t));
    RatioRow row;
    row.t = t;
    row.c_check = Rat(linear.at(2 * t)) / (Rat(lin) * Rat(lin));
    row.c_circ = Rat(circular.at(t)) / Rat(lin);
    if (growth_mid) row.c_diag = Rat(lin) / rat_pow(*growth_mid, t);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace growth
