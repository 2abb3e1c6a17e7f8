#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace growth {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int int_pow(const Int& base, unsigned exp) {
  return boost::multiprecision::pow(base, exp);
}

// Exact base^exp for signed integer exponents. base must be nonzero when exp < 0.
inline Rat rat_pow(const Rat& base, long exp) {
  if (exp == 0) return Rat(1);
  unsigned mag = static_cast<unsigned>(exp < 0 ? -exp : exp);
  Int n = int_pow(numerator(base), mag);
  Int d = int_pow(denominator(base), mag);
  if (exp < 0) {
    if (n == 0) throw std::domain_error("rat_pow: zero base with negative exponent");
    return Rat(d, n);
  }
  return Rat(n, d);
}

inline Int floor_rat(const Rat& q) {
  const Int& n = numerator(q);
  const Int& d = denominator(q);  // canonical form keeps d > 0
  Int quo = n / d;                // cpp_int division truncates toward zero
  if (n < 0 && quo * d != n) --quo;
  return quo;
}

inline Int ceil_rat(const Rat& q) { return -floor_rat(-q); }

// ceil(p * l) in exact integer arithmetic.
inline long ceil_mul(const Rat& p, long l) {
  return ceil_rat(Rat(numerator(p) * l, denominator(p))).convert_to<long>();
}

namespace detail {

inline Int parse_int_digits(std::string_view s, std::string_view original) {
  if (s.empty()) throw std::invalid_argument("bad rational: '" + std::string(original) + "'");
  for (char c : s) {
    if (c < '0' || c > '9') throw std::invalid_argument("bad rational: '" + std::string(original) + "'");
  }
  // strip leading zeros; cpp_int would otherwise read the string as octal
  size_t first = s.find_first_not_of('0');
  if (first == std::string_view::npos) return Int(0);
  return Int(std::string(s.substr(first)));
}

}  // namespace detail

// Accepts "a/b", integers, and decimal literals; decimals convert exactly
// (never through floating point).
inline Rat parse_rational(std::string_view text) {
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  Rat value;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    Int num = detail::parse_int_digits(s.substr(0, slash), text);
    Int den = detail::parse_int_digits(s.substr(slash + 1), text);
    if (den == 0) throw std::invalid_argument("bad rational: zero denominator in '" + std::string(text) + "'");
    value = Rat(num, den);
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view ip = s.substr(0, dot);
    std::string_view fp = s.substr(dot + 1);
    if (ip.empty() && fp.empty()) throw std::invalid_argument("bad rational: '" + std::string(text) + "'");
    Int num = ip.empty() ? Int(0) : detail::parse_int_digits(ip, text);
    Int den(1);
    if (!fp.empty()) {
      Int frac = detail::parse_int_digits(fp, text);
      den = int_pow(Int(10), static_cast<unsigned>(fp.size()));
      num = num * den + frac;
    }
    value = Rat(num, den);
  } else {
    value = Rat(detail::parse_int_digits(s, text));
  }
  return negative ? -value : value;
}

inline std::string rat_to_string(const Rat& q) {
  std::string s = numerator(q).str();
  if (denominator(q) != 1) {
    s += '/';
    s += denominator(q).str();
  }
  return s;
}

// Decimal rendering, rounded toward minus infinity at `digits` places.
inline std::string format_decimal_floor(const Rat& q, int digits) {
  Int scale = int_pow(Int(10), static_cast<unsigned>(digits));
  Int scaled = floor_rat(q * scale);
  bool neg = scaled < 0;
  Int mag = neg ? Int(-scaled) : scaled;
  std::string ds = mag.str();
  if (static_cast<int>(ds.size()) <= digits) ds.insert(0, digits + 1 - ds.size(), '0');
  std::string out = neg ? "-" : "";
  out += ds.substr(0, ds.size() - digits);
  if (digits > 0) {
    out += '.';
    out += ds.substr(ds.size() - digits);
  }
  return out;
}

struct RationalInterval {
  Rat lo, hi;

  RationalInterval() : lo(0), hi(0) {}
  RationalInterval(Rat lo_, Rat hi_) : lo(std::move(lo_)), hi(std::move(hi_)) {
    if (lo > hi) throw std::invalid_argument("interval endpoints out of order");
  }

  static RationalInterval exact(Rat v) { return RationalInterval(v, v); }

  Rat width() const { return hi - lo; }
  Rat mid() const { return (lo + hi) / 2; }
  bool contains(const Rat& v) const { return lo <= v && v <= hi; }
};

// Three-valued outcome for threshold checks on enclosures: a verdict is only
// committed when the whole interval lies on one side of the threshold.
enum class Verdict { holds, fails, undecided };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::fails: return "fails";
    default: return "undecided";
  }
}

inline Verdict verdict_at_most(const RationalInterval& iv, const Rat& bound) {
  if (iv.hi <= bound) return Verdict::holds;
  if (iv.lo > bound) return Verdict::fails;
  return Verdict::undecided;
}

inline Verdict verdict_less(const RationalInterval& iv, const Rat& bound) {
  if (iv.hi < bound) return Verdict::holds;
  if (iv.lo >= bound) return Verdict::fails;
  return Verdict::undecided;
}

inline Verdict verdict_greater(const RationalInterval& iv, const Rat& bound) {
  if (iv.lo > bound) return Verdict::holds;
  if (iv.hi <= bound) return Verdict::fails;
  return Verdict::undecided;
}

}  // namespace growth
