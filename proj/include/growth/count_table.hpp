#pragma once

#include "growth/family.hpp"
#include "growth/rational.hpp"
#include "growth/word.hpp"

#include <stdexcept>
#include <vector>

namespace growth {

// Exact word counts per length. counts[n] is |L_n| (or the circular variant
// when `circular` is set); entries are exact integers, never approximations.
struct CountTable {
  Alphabet alphabet;
  FactorFamily family;
  bool circular = false;
  std::vector<Int> counts;

  int max_n() const { return static_cast<int>(counts.size()) - 1; }

  const Int& at(int n) const {
    if (n < 0 || n > max_n()) throw std::out_of_range("count table has no entry for length " + std::to_string(n));
    return counts[static_cast<size_t>(n)];
  }
};

}  // namespace growth
