#pragma once

#include "growth/word.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace growth {

// Deterministic factor automaton. A word is free iff running it from `start`
// never enters the dead state; the dead state, when present, is absorbing.
struct FactorDFA {
  int state_count = 1;
  int start = 0;
  std::optional<int> dead;
  std::vector<std::vector<int>> delta;  // delta[state][letter]

  bool operator==(const FactorDFA&) const = default;

  int alphabet_size() const { return delta.empty() ? 0 : static_cast<int>(delta.front().size()); }

  bool alive(int s) const { return !dead.has_value() || s != *dead; }

  void validate() const {
    if (state_count < 1) throw std::invalid_argument("dfa: state_count must be positive");
    if (static_cast<int>(delta.size()) != state_count)
      throw std::invalid_argument("dfa: delta must have one row per state");
    if (start < 0 || start >= state_count) throw std::invalid_argument("dfa: start out of range");
    if (dead && (*dead < 0 || *dead >= state_count)) throw std::invalid_argument("dfa: dead state out of range");
    size_t width = delta.empty() ? 0 : delta.front().size();
    if (width == 0) throw std::invalid_argument("dfa: empty transition rows");
    for (const auto& row : delta) {
      if (row.size() != width) throw std::invalid_argument("dfa: ragged transition table");
      for (int t : row) {
        if (t < 0 || t >= state_count) throw std::invalid_argument("dfa: transition target out of range");
      }
    }
    if (dead) {
      for (int t : delta[*dead]) {
        if (t != *dead) throw std::invalid_argument("dfa: dead state must be absorbing");
      }
    }
  }

  bool accepts(const Word& w) const {
    int s = start;
    if (!alive(s)) return false;
    for (Letter a : w) {
      s = delta[s][a];
      if (!alive(s)) return false;
    }
    return true;
  }
};

}  // namespace growth
