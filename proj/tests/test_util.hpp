#pragma once

#include "growth/family.hpp"

#include <random>
#include <vector>

namespace testutil {

// Deterministic random explicit families for oracle-equivalence checks.
inline std::vector<growth::ExplicitFamily> random_families(unsigned seed, int count, int alphabet_size,
                                                           int max_factors, int max_len) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> n_factors(1, max_factors);
  std::uniform_int_distribution<int> length(1, max_len);
  std::uniform_int_distribution<int> letter(0, alphabet_size - 1);
  std::vector<growth::ExplicitFamily> out;
  out.reserve(static_cast<size_t>(count));
  for (int i = 0; i < count; ++i) {
    std::vector<growth::Word> factors;
    int m = n_factors(rng);
    for (int f = 0; f < m; ++f) {
      growth::Word w;
      int len = length(rng);
      for (int j = 0; j < len; ++j) w.push_back(static_cast<growth::Letter>(letter(rng)));
      factors.push_back(std::move(w));
    }
    out.push_back(growth::ExplicitFamily{std::move(factors)});
  }
  return out;
}

// The closed-form count table for the words with no 2 after a 0 over three
// letters: |L_n| = (n+2) 2^{n-1}.
inline growth::CountTable no_two_after_zero_table(int max_n) {
  growth::FactorDFA dfa{3, 0, 2, {{1, 0, 0}, {1, 1, 2}, {2, 2, 2}}};
  growth::CountTable table{growth::Alphabet(3), growth::FactorFamily(growth::RecognizerFamily{dfa}), false, {}};
  table.counts.resize(static_cast<size_t>(max_n) + 1);
  table.counts[0] = 1;
  for (int n = 1; n <= max_n; ++n) table.counts[static_cast<size_t>(n)] = growth::Int(n + 2) << (n - 1);
  return table;
}

}  // namespace testutil
