#pragma once

#include "growth/dfa.hpp"
#include "growth/rational.hpp"
#include "growth/word.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace growth {

// Length spectrum of a forbidden set: either the finite multiset of factor
// lengths, or "one factor of every length >= min_length".
struct LengthList {
  std::vector<int> lengths;  // kept sorted; repeated lengths each contribute

  bool operator==(const LengthList&) const = default;
};

struct OnePerLength {
  int min_length = 1;

  bool operator==(const OnePerLength&) const = default;
};

using LengthSpectrum = std::variant<LengthList, OnePerLength>;

struct ExplicitFamily {
  std::vector<Word> factors;  // nonempty words, deduplicated, sorted

  bool operator==(const ExplicitFamily&) const = default;
};

struct RecognizerFamily {
  FactorDFA dfa;

  bool operator==(const RecognizerFamily&) const = default;
};

struct SpectrumFamily {
  LengthSpectrum spectrum;  // analytic use only; not countable

  bool operator==(const SpectrumFamily&) const = default;
};

struct PowerFreeFamily {
  Rat exponent;  // p > 1

  bool operator==(const PowerFreeFamily&) const = default;
};

namespace detail {

inline bool word_order(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

}  // namespace detail

struct FactorFamily {
  std::variant<ExplicitFamily, RecognizerFamily, SpectrumFamily, PowerFreeFamily> value;

  FactorFamily() : value(ExplicitFamily{}) {}
  FactorFamily(ExplicitFamily f) : value(std::move(f)) {
    auto& factors = std::get<ExplicitFamily>(value).factors;
    for (const Word& w : factors) {
      if (w.empty()) throw std::invalid_argument("explicit family: factors must be nonempty");
    }
    std::sort(factors.begin(), factors.end(), detail::word_order);
    factors.erase(std::unique(factors.begin(), factors.end()), factors.end());
  }
  FactorFamily(RecognizerFamily f) : value(std::move(f)) { std::get<RecognizerFamily>(value).dfa.validate(); }
  FactorFamily(SpectrumFamily f) : value(std::move(f)) {
    if (const auto* list = std::get_if<LengthList>(&std::get<SpectrumFamily>(value).spectrum)) {
      for (int l : list->lengths) {
        if (l < 1) throw std::invalid_argument("length spectrum: lengths must be >= 1");
      }
      std::sort(std::get<LengthList>(std::get<SpectrumFamily>(value).spectrum).lengths.begin(),
                std::get<LengthList>(std::get<SpectrumFamily>(value).spectrum).lengths.end());
    } else if (std::get<OnePerLength>(std::get<SpectrumFamily>(value).spectrum).min_length < 1) {
      throw std::invalid_argument("length spectrum: min_length must be >= 1");
    }
  }
  FactorFamily(PowerFreeFamily f) : value(std::move(f)) {
    if (std::get<PowerFreeFamily>(value).exponent <= 1)
      throw std::invalid_argument("power-free family: exponent must exceed 1");
  }

  bool operator==(const FactorFamily&) const = default;

  const ExplicitFamily* as_explicit() const { return std::get_if<ExplicitFamily>(&value); }
  const RecognizerFamily* as_recognizer() const { return std::get_if<RecognizerFamily>(&value); }
  const SpectrumFamily* as_spectrum() const { return std::get_if<SpectrumFamily>(&value); }
  const PowerFreeFamily* as_power_free() const { return std::get_if<PowerFreeFamily>(&value); }
};

// Keeps only the factors that contain no other family member as a contiguous
// factor. The avoided language is unchanged and the result is an antichain,
// which is also the choice that gives the strongest analytic bounds.
inline ExplicitFamily normalize_family(const ExplicitFamily& family) {
  std::vector<Word> factors = family.factors;
  std::sort(factors.begin(), factors.end(), detail::word_order);
  factors.erase(std::unique(factors.begin(), factors.end()), factors.end());
  std::vector<Word> kept;
  for (const Word& f : factors) {
    bool redundant = false;
    for (const Word& g : factors) {
      if (g != f && contains_factor(f, g)) {
        redundant = true;
        break;
      }
    }
    if (!redundant) kept.push_back(f);
  }
  return ExplicitFamily{std::move(kept)};
}

// Multiset of factor lengths. Power-free families are rejected: their
// analytic conditions run over periods, not factor lengths.
inline LengthSpectrum length_spectrum_of(const FactorFamily& family) {
  if (const auto* exp = family.as_explicit()) {
    LengthList list;
    list.lengths.reserve(exp->factors.size());
    for (const Word& f : exp->factors) list.lengths.push_back(static_cast<int>(f.size()));
    std::sort(list.lengths.begin(), list.lengths.end());
    return list;
  }
  if (const auto* spec = family.as_spectrum()) return spec->spectrum;
  if (family.as_power_free())
    throw std::invalid_argument("power-free families have no length spectrum; use the power-free condition sums");
  throw std::invalid_argument("recognizer families have no finite length spectrum");
}

}  // namespace growth
