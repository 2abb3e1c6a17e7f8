#pragma once

#include "growth/family.hpp"
#include "growth/rational.hpp"

#include <deque>
#include <functional>
#include <optional>
#include <stdexcept>
#include <variant>

namespace growth {

class DivergentSeries : public std::domain_error {
 public:
  explicit DivergentSeries(const std::string& what) : std::domain_error(what) {}
};

inline Rat default_tail_tol() { return Rat(1, Int("1000000000000")); }   // 1e-12
inline Rat default_beta_precision() { return Rat(1, 1000000000); }       // 1e-9

namespace detail {

// Sum_{l>=i} beta^{1-l} = beta^{2-i} / (beta - 1), beta > 1.
inline Rat tail_sum_powers(int i, const Rat& beta) {
  return rat_pow(beta, 2 - static_cast<long>(i)) / (beta - 1);
}

// Sum_{l>=i} (l-1) beta^{-l} = beta^{1-i} (1 + (beta-1)(i-1)) / (beta-1)^2.
inline Rat tail_sum_weighted(int i, const Rat& beta) {
  return rat_pow(beta, 1 - static_cast<long>(i)) * (1 + (beta - 1) * (i - 1)) / ((beta - 1) * (beta - 1));
}

// Sum_{l>=i} l beta^{-l} = x^i (i - (i-1)x) / (1-x)^2 with x = 1/beta.
inline Rat tail_sum_linear(int i, const Rat& beta) {
  Rat x = Rat(1) / beta;
  return rat_pow(x, i) * (Rat(i) - Rat(i - 1) * x) / ((1 - x) * (1 - x));
}

inline Rat list_sum_powers(const std::vector<int>& lengths, const Rat& beta) {
  Rat acc = 0;
  for (int l : lengths) acc += rat_pow(beta, 1 - static_cast<long>(l));
  return acc;
}

inline Rat list_sum_weighted(const std::vector<int>& lengths, const Rat& beta) {
  Rat acc = 0;
  for (int l : lengths) acc += Rat(l - 1) * rat_pow(beta, -static_cast<long>(l));
  return acc;
}

inline Rat list_sum_linear(const std::vector<int>& lengths, const Rat& beta) {
  Rat acc = 0;
  for (int l : lengths) acc += Rat(l) * rat_pow(beta, -static_cast<long>(l));
  return acc;
}

inline void require_convergent(const LengthSpectrum& spectrum, const Rat& beta) {
  if (std::holds_alternative<OnePerLength>(spectrum) && beta <= 1)
    throw DivergentSeries("series over an infinite spectrum diverges for beta <= 1");
  if (beta <= 0) throw std::domain_error("beta must be positive");
}

}  // namespace detail

// omega(beta) = beta + sum over forbidden lengths of beta^{1-l}. Exact for
// finite spectra; one-per-length families use the geometric closed form, so
// the enclosure is a point and always within tail_tol.
inline RationalInterval eval_omega(const LengthSpectrum& spectrum, const Rat& beta,
                                   const Rat& tail_tol = default_tail_tol()) {
  if (tail_tol <= 0) throw std::invalid_argument("tail_tol must be positive");
  detail::require_convergent(spectrum, beta);
  if (const auto* list = std::get_if<LengthList>(&spectrum))
    return RationalInterval::exact(beta + detail::list_sum_powers(list->lengths, beta));
  const auto& one = std::get<OnePerLength>(spectrum);
  return RationalInterval::exact(beta + detail::tail_sum_powers(one.min_length, beta));
}

// omega'(beta) = 1 - sum (l-1) beta^{-l}; this is the supermultiplicativity
// constant C attached to a certified growth ratio beta.
inline RationalInterval eval_omega_prime(const LengthSpectrum& spectrum, const Rat& beta,
                                         const Rat& tail_tol = default_tail_tol()) {
  if (tail_tol <= 0) throw std::invalid_argument("tail_tol must be positive");
  detail::require_convergent(spectrum, beta);
  if (const auto* list = std::get_if<LengthList>(&spectrum))
    return RationalInterval::exact(1 - detail::list_sum_weighted(list->lengths, beta));
  const auto& one = std::get<OnePerLength>(spectrum);
  return RationalInterval::exact(1 - detail::tail_sum_weighted(one.min_length, beta));
}

// Truncation + tail route, kept as an independent cross-check of the closed
// forms: the value lands inside [partial, partial + tail] with width <= tail_tol.
inline RationalInterval eval_omega_truncated(const LengthSpectrum& spectrum, const Rat& beta,
                                             const Rat& tail_tol = default_tail_tol()) {
  if (tail_tol <= 0) throw std::invalid_argument("tail_tol must be positive");
  detail::require_convergent(spectrum, beta);
  if (std::holds_alternative<LengthList>(spectrum)) return eval_omega(spectrum, beta, tail_tol);
  const auto& one = std::get<OnePerLength>(spectrum);
  int cutoff = one.min_length + 1;
  while (detail::tail_sum_powers(cutoff + 1, beta) > tail_tol) {
    cutoff *= 2;
    if (cutoff > 1'000'000) throw DivergentSeries("truncation cutoff too large; beta too close to 1");
  }
  Rat partial = beta;
  for (int l = one.min_length; l <= cutoff; ++l) partial += rat_pow(beta, 1 - static_cast<long>(l));
  return RationalInterval(partial, partial + detail::tail_sum_powers(cutoff + 1, beta));
}

inline RationalInterval eval_omega_prime_truncated(const LengthSpectrum& spectrum, const Rat& beta,
                                                   const Rat& tail_tol = default_tail_tol()) {
  if (tail_tol <= 0) throw std::invalid_argument("tail_tol must be positive");
  detail::require_convergent(spectrum, beta);
  if (std::holds_alternative<LengthList>(spectrum)) return eval_omega_prime(spectrum, beta, tail_tol);
  const auto& one = std::get<OnePerLength>(spectrum);
  int cutoff = one.min_length + 1;
  while (detail::tail_sum_weighted(cutoff + 1, beta) > tail_tol) {
    cutoff *= 2;
    if (cutoff > 1'000'000) throw DivergentSeries("truncation cutoff too large; beta too close to 1");
  }
  Rat partial = 0;
  for (int l = one.min_length; l <= cutoff; ++l) partial += Rat(l - 1) * rat_pow(beta, -static_cast<long>(l));
  Rat tail = detail::tail_sum_weighted(cutoff + 1, beta);
  return RationalInterval(1 - partial - tail, 1 - partial);
}

namespace detail {

// Residue-class decomposition for power sums with rational exponent p = a/b:
// on the class l = r + t*b the ceilings are affine in t, so every sum splits
// into b exact geometric / arithmetico-geometric series.
struct PowerSums {
  Rat condition;          // Sum_{l>=1} beta^{1 - ceil((p-1) l)}
  Rat c_terms;            // Sum_{l>=1} (ceil(p l) - 1) beta^{-ceil((p-1) l)}
  Rat slope_terms;        // Sum_{l>=1} (ceil((p-1) l) - 1) beta^{-ceil((p-1) l)}
};

inline PowerSums power_free_sums(const Rat& p, const Rat& beta) {
  if (p <= 1) throw std::invalid_argument("power sums need p > 1");
  if (beta <= 1) throw DivergentSeries("power sums diverge for beta <= 1");
  const Int a = numerator(p);
  const Int b = denominator(p);
  const Int d = a - b;
  const long bl = b.convert_to<long>();
  const long dl = d.convert_to<long>();
  const Rat q = rat_pow(beta, -dl);
  const Rat geo = 1 / (1 - q);          // Sum q^t
  const Rat arith = q / ((1 - q) * (1 - q));  // Sum t q^t
  PowerSums sums{0, 0, 0};
  for (long r = 1; r <= bl; ++r) {
    long e_r = ceil_rat(Rat(d * r, b)).convert_to<long>();
    long c_r = ceil_rat(Rat(a * r, b)).convert_to<long>() - 1;
    Rat scale = rat_pow(beta, -e_r);
    sums.condition += beta * scale * geo;
    sums.c_terms += scale * (Rat(a) * arith + Rat(c_r) * geo);
    sums.slope_terms += scale * (Rat(dl) * arith + Rat(e_r - 1) * geo);
  }
  return sums;
}

}  // namespace detail

// Sum_{l>=1} beta^{1-ceil(l(p-1))}; exact for rational p via residue classes.
inline RationalInterval powerfree_condition_sum(const Rat& p, const Rat& beta,
                                                const Rat& tail_tol = default_tail_tol()) {
  if (tail_tol <= 0) throw std::invalid_argument("tail_tol must be positive");
  return RationalInterval::exact(detail::power_free_sums(p, beta).condition);
}

// Same sum by direct truncation with a per-block geometric majorant tail;
// the independent route used to cross-check the residue-class algebra.
inline RationalInterval powerfree_condition_sum_truncated(const Rat& p, const Rat& beta,
                                                          const Rat& tail_tol = default_tail_tol()) {
  if (tail_tol <= 0) throw std::invalid_argument("tail_tol must be positive");
  if (p <= 1) throw std::invalid_argument("power sums need p > 1");
  if (beta <= 1) throw DivergentSeries("power sums diverge for beta <= 1");
  const long b = denominator(p).convert_to<long>();
  const long d = (numerator(p) - denominator(p)).convert_to<long>();
  const Rat q = rat_pow(beta, -d);
  auto tail_bound = [&](long cutoff) {
    // ceil(d l / b) >= d*floor(l/b): bound each block of b consecutive l.
    long j0 = (cutoff + 1) / b;
    return Rat(b) * beta * rat_pow(q, j0) / (1 - q);
  };
  long cutoff = b;
  while (tail_bound(cutoff) > tail_tol) {
    cutoff *= 2;
    if (cutoff > 4'000'000) throw DivergentSeries("truncation cutoff too large; beta too close to 1");
  }
  Rat partial = 0;
  for (long l = 1; l <= cutoff; ++l) partial += rat_pow(beta, 1 - ceil_mul(p - 1, l));
  return RationalInterval(partial, partial + tail_bound(cutoff));
}

// C = 1 - Sum_{l>=1} (ceil(pl)-1) beta^{-ceil((p-1)l)}.
inline RationalInterval c_powerfree(const Rat& p, const Rat& beta, const Rat& tail_tol = default_tail_tol()) {
  if (tail_tol <= 0) throw std::invalid_argument("tail_tol must be positive");
  return RationalInterval::exact(1 - detail::power_free_sums(p, beta).c_terms);
}

inline RationalInterval c_powerfree_truncated(const Rat& p, const Rat& beta,
                                              const Rat& tail_tol = default_tail_tol()) {
  if (tail_tol <= 0) throw std::invalid_argument("tail_tol must be positive");
  if (p <= 1) throw std::invalid_argument("power sums need p > 1");
  if (beta <= 1) throw DivergentSeries("power sums diverge for beta <= 1");
  const long b = denominator(p).convert_to<long>();
  const long a = numerator(p).convert_to<long>();
  const Rat q = rat_pow(beta, -(a - b));
  auto tail_bound = [&](long cutoff) {
    // (ceil(pl)-1) <= a(j+1) on the block floor(l/b) = j.
    long j0 = (cutoff + 1) / b;
    Rat geo_tail = rat_pow(q, j0) / (1 - q);
    Rat arith_tail = rat_pow(q, j0) * (Rat(j0) - Rat(j0 - 1) * q) / ((1 - q) * (1 - q));
    return Rat(a) * Rat(b) * (arith_tail + geo_tail);
  };
  long cutoff = b;
  while (tail_bound(cutoff) > tail_tol) {
    cutoff *= 2;
    if (cutoff > 4'000'000) throw DivergentSeries("truncation cutoff too large; beta too close to 1");
  }
  Rat partial = 0;
  for (long l = 1; l <= cutoff; ++l)
    partial += Rat(ceil_mul(p, l) - 1) * rat_pow(beta, -ceil_mul(p - 1, l));
  return RationalInterval(1 - partial - tail_bound(cutoff), 1 - partial);
}

// Exact closed form for square-free supermultiplicativity; must agree with
// c_powerfree(2, beta) identically.
inline Rat c_squarefree(const Rat& beta) {
  if (beta <= 1) throw DivergentSeries("c_squarefree needs beta > 1");
  return 1 - (1 + beta) / ((beta - 1) * (beta - 1));
}

// Certified beta for square-free words: the largest rational witness of
// x + x/(x-1) <= k, within `precision` of (k + sqrt(k^2-4k))/2 from below.
inline Rat beta_squarefree(int alphabet_size, const Rat& precision = default_beta_precision()) {
  if (alphabet_size <= 3)
    throw std::invalid_argument("beta_squarefree needs an alphabet of size >= 4");
  if (precision <= 0) throw std::invalid_argument("precision must be positive");
  auto feasible = [&](const Rat& x) { return x + x / (x - 1) <= alphabet_size; };
  Rat lo = 2, hi = alphabet_size;  // feasible at 2 for k >= 4; infeasible at k
  while (hi - lo > precision) {
    Rat mid = (lo + hi) / 2;
    (feasible(mid) ? lo : hi) = mid;
  }
  return lo;
}

namespace detail {

// Exact convex objective on (1, oo); value(x) >= x so every feasible point
// lies in (1, bound].
struct ConvexObjective {
  std::function<Rat(const Rat&)> value;
  std::function<Rat(const Rat&)> derivative;
};

// Largest beta with value(beta) <= bound, via feasibility sampling guided by
// tangent-line emptiness certificates and a right-edge bisection.
inline std::optional<Rat> sup_below(const ConvexObjective& f, const Rat& bound, const Rat& precision,
                                    int eval_cap = 4096) {
  struct Segment {
    Rat a, b;        // a == 1 marks the open left boundary
    Rat fb, db;      // f(b), f'(b)
    std::optional<Rat> fa, da;
  };
  int evals = 0;
  auto eval = [&](const Rat& x) {
    evals += 2;
    return std::pair{f.value(x), f.derivative(x)};
  };
  std::optional<Rat> feasible;
  std::deque<Segment> work;
  {
    auto [fb, db] = eval(bound);
    if (fb <= bound) feasible = bound;
    work.push_back(Segment{Rat(1), bound, fb, db, std::nullopt, std::nullopt});
  }
  const Rat min_width = precision / 16;
  while (!feasible && !work.empty() && evals < eval_cap) {
    Segment seg = work.front();
    work.pop_front();
    const bool open_left = !seg.fa.has_value();
    // Tangent lower bounds over the segment certify infeasibility.
    Rat lower_bound_b = seg.db <= 0 ? seg.fb : seg.fb + seg.db * (seg.a - seg.b);
    if (lower_bound_b > bound) continue;
    if (!open_left) {
      Rat lower_bound_a = *seg.da >= 0 ? *seg.fa : *seg.fa + *seg.da * (seg.b - seg.a);
      if (lower_bound_a > bound) continue;
    }
    if (seg.b - seg.a <= min_width) continue;  // unresolved sliver; give up on it
    Rat mid = (seg.a + seg.b) / 2;
    auto [fm, dm] = eval(mid);
    if (fm <= bound) {
      feasible = mid;
      break;
    }
    work.push_back(Segment{seg.a, mid, fm, dm, seg.fa, seg.da});
    work.push_back(Segment{mid, seg.b, seg.fb, seg.db, fm, dm});
  }
  if (!feasible) return std::nullopt;
  Rat lo = *feasible;
  Rat hi = bound + 1;  // f(x) >= x > bound there
  while (hi - lo > precision) {
    Rat mid = (lo + hi) / 2;
    (f.value(mid) <= bound ? lo : hi) = mid;
  }
  return lo;
}

}  // namespace detail

// Largest beta with omega(beta) <= |A|, certified within `precision` of the
// supremum. The solution set is an interval by convexity of omega; emptiness
// is certified by tangent-line bounds, and a unique-point solution may be
// reported as no-solution if sampling never lands on it.
inline std::optional<Rat> find_beta(const LengthSpectrum& spectrum, int alphabet_size,
                                    const Rat& precision = default_beta_precision()) {
  if (alphabet_size < 2) throw std::invalid_argument("find_beta needs an alphabet of size >= 2");
  if (precision <= 0) throw std::invalid_argument("precision must be positive");
  if (const auto* list = std::get_if<LengthList>(&spectrum)) {
    if (list->lengths.empty()) return Rat(alphabet_size);  // omega(x) = x
  }
  detail::ConvexObjective objective{
      [&spectrum](const Rat& x) { return eval_omega(spectrum, x).lo; },
      [&spectrum](const Rat& x) { return eval_omega_prime(spectrum, x).lo; }};
  return detail::sup_below(objective, Rat(alphabet_size), precision);
}

// Power-free analog: largest beta with beta + Sum beta^{1-ceil((p-1)l)} <= |A|.
inline std::optional<Rat> find_beta_power_free(const Rat& p, int alphabet_size,
                                               const Rat& precision = default_beta_precision()) {
  if (alphabet_size < 2) throw std::invalid_argument("find_beta needs an alphabet of size >= 2");
  if (precision <= 0) throw std::invalid_argument("precision must be positive");
  detail::ConvexObjective objective{
      [&p](const Rat& x) { return x + detail::power_free_sums(p, x).condition; },
      [&p](const Rat& x) { return 1 - detail::power_free_sums(p, x).slope_terms; }};
  return detail::sup_below(objective, Rat(alphabet_size), precision);
}

struct PavlovReport {
  RationalInterval sum;          // Sum_f |f| beta^{-|f|}
  Verdict below_bound = Verdict::undecided;  // verdict of sum < 1/36
};

// Comparison sum from the density-based sufficient condition; the remaining
// hypothesis (beta < alpha^2/|A|) needs alpha and stays the caller's
// obligation.
inline PavlovReport pavlov_condition(const LengthSpectrum& spectrum, const Rat& beta,
                                     const Rat& tail_tol = default_tail_tol()) {
  if (tail_tol <= 0) throw std::invalid_argument("tail_tol must be positive");
  detail::require_convergent(spectrum, beta);
  RationalInterval sum = [&] {
    if (const auto* list = std::get_if<LengthList>(&spectrum))
      return RationalInterval::exact(detail::list_sum_linear(list->lengths, beta));
    return RationalInterval::exact(detail::tail_sum_linear(std::get<OnePerLength>(spectrum).min_length, beta));
  }();
  return PavlovReport{sum, verdict_less(sum, Rat(1, 36))};
}

struct ConditionReport {
  std::string kind;  // "spectrum" or "power_free"
  int alphabet_size = 0;
  Rat beta;
  RationalInterval omega_at_beta;        // growth-ratio condition quantity
  RationalInterval omega_prime_at_beta;  // the constant C
  Verdict condition_eq2_holds = Verdict::undecided;  // omega(beta) <= |A|
  Verdict condition_strict = Verdict::undecided;     // omega(beta) < |A|
  Verdict c_positive = Verdict::undecided;           // C > 0
};

inline ConditionReport build_condition_report(const FactorFamily& family, int alphabet_size, const Rat& beta,
                                              const Rat& tail_tol = default_tail_tol()) {
  if (alphabet_size < 1) throw std::invalid_argument("alphabet size must be positive");
  ConditionReport report;
  report.alphabet_size = alphabet_size;
  report.beta = beta;
  if (const auto* pf = family.as_power_free()) {
    report.kind = "power_free";
    const Rat& p = pf->exponent;
    report.omega_at_beta = RationalInterval::exact(beta + powerfree_condition_sum(p, beta, tail_tol).lo);
    report.omega_prime_at_beta = c_powerfree(p, beta, tail_tol);
  } else {
    report.kind = "spectrum";
    LengthSpectrum spectrum = length_spectrum_of(family);
    report.omega_at_beta = eval_omega(spectrum, beta, tail_tol);
    report.omega_prime_at_beta = eval_omega_prime(spectrum, beta, tail_tol);
  }
  Rat k(alphabet_size);
  report.condition_eq2_holds = verdict_at_most(report.omega_at_beta, k);
  report.condition_strict = verdict_less(report.omega_at_beta, k);
  report.c_positive = verdict_greater(report.omega_prime_at_beta, Rat(0));
  return report;
}

}  // namespace growth
