#pragma once

#include "growth/count_table.hpp"
#include "growth/dfa.hpp"
#include "growth/family.hpp"
#include "growth/rational.hpp"

#include <deque>
#include <optional>
#include <stdexcept>
#include <vector>

namespace growth {

// Aho-Corasick style construction over the proper prefixes of the normalized
// factors, with one absorbing dead state entered exactly when a factor occurs.
// Normalization makes every proper prefix factor-free, so the prefix-tree
// nodes minus the complete factors are precisely the alive states.
inline FactorDFA build_factor_automaton(const ExplicitFamily& family, const Alphabet& alphabet) {
  if (alphabet.size < 1) throw std::invalid_argument("factor automaton needs a nonempty alphabet");
  ExplicitFamily normalized = normalize_family(family);
  for (const Word& f : normalized.factors) {
    if (f.empty()) throw std::invalid_argument("factor automaton: factors must be nonempty");
    for (Letter a : f) {
      if (a >= alphabet.size) throw std::invalid_argument("factor automaton: factor letter outside alphabet");
    }
  }

  const int k = alphabet.size;
  // Trie over the factors; complete factors are leaves (antichain property).
  struct Node {
    std::vector<int> child;
    bool leaf = false;
    explicit Node(int width) : child(width, -1) {}
  };
  std::vector<Node> trie;
  trie.emplace_back(k);
  for (const Word& f : normalized.factors) {
    int cur = 0;
    for (Letter a : f) {
      if (trie[cur].child[a] < 0) {
        trie[cur].child[a] = static_cast<int>(trie.size());
        trie.emplace_back(k);
      }
      cur = trie[cur].child[a];
    }
    trie[cur].leaf = true;
  }

  // Alive states are the non-leaf trie nodes.
  std::vector<int> state_of(trie.size(), -1);
  std::vector<int> node_of;
  int alive_count = 0;
  for (size_t i = 0; i < trie.size(); ++i) {
    if (!trie[i].leaf) {
      state_of[i] = alive_count++;
      node_of.push_back(static_cast<int>(i));
    }
  }

  FactorDFA dfa;
  dfa.state_count = alive_count + (normalized.factors.empty() ? 0 : 1);
  dfa.start = state_of[0];
  if (!normalized.factors.empty()) dfa.dead = alive_count;
  dfa.delta.assign(dfa.state_count, std::vector<int>(k, 0));
  const int dead = normalized.factors.empty() ? -1 : alive_count;

  std::vector<int> fail(trie.size(), 0);
  std::deque<int> queue;
  for (int a = 0; a < k; ++a) {
    int c = trie[0].child[a];
    if (c < 0) {
      dfa.delta[state_of[0]][a] = state_of[0];
    } else if (trie[c].leaf) {
      dfa.delta[state_of[0]][a] = dead;
    } else {
      fail[c] = 0;
      dfa.delta[state_of[0]][a] = state_of[c];
      queue.push_back(c);
    }
  }
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    for (int a = 0; a < k; ++a) {
      int c = trie[u].child[a];
      if (c < 0) {
        dfa.delta[state_of[u]][a] = dfa.delta[state_of[fail[u]]][a];
        continue;
      }
      if (trie[c].leaf) {
        dfa.delta[state_of[u]][a] = dead;
        continue;
      }
      // The fallback target is alive: a dead fallback would mean a proper
      // prefix of a factor ends with another factor, impossible after
      // normalization.
      int via_fail = dfa.delta[state_of[fail[u]]][a];
      fail[c] = node_of[static_cast<size_t>(via_fail)];
      dfa.delta[state_of[u]][a] = state_of[c];
      queue.push_back(c);
    }
  }
  if (dead >= 0) {
    for (int a = 0; a < k; ++a) dfa.delta[dead][a] = dead;
  }
  dfa.validate();
  return dfa;
}

// Exact counting by iterating the alive-state occupancy vector.
inline CountTable count_with_dfa(const FactorDFA& dfa, int max_n, FactorFamily family) {
  dfa.validate();
  if (max_n < 0) throw std::invalid_argument("count_with_dfa: max_n must be >= 0");
  const int k = dfa.alphabet_size();
  CountTable table{Alphabet(k), std::move(family), false, std::vector<Int>(static_cast<size_t>(max_n) + 1, Int(0))};
  std::vector<Int> occupancy(static_cast<size_t>(dfa.state_count), Int(0));
  if (dfa.alive(dfa.start)) occupancy[static_cast<size_t>(dfa.start)] = 1;
  table.counts[0] = dfa.alive(dfa.start) ? 1 : 0;
  std::vector<Int> next(occupancy.size());
  for (int n = 1; n <= max_n; ++n) {
    for (auto& v : next) v = 0;
    for (int s = 0; s < dfa.state_count; ++s) {
      if (!dfa.alive(s) || occupancy[static_cast<size_t>(s)] == 0) continue;
      for (int a = 0; a < k; ++a) {
        int t = dfa.delta[s][a];
        if (dfa.alive(t)) next[static_cast<size_t>(t)] += occupancy[static_cast<size_t>(s)];
      }
    }
    occupancy.swap(next);
    Int total = 0;
    for (const Int& v : occupancy) total += v;
    table.counts[static_cast<size_t>(n)] = total;
  }
  return table;
}

inline CountTable count_with_dfa(const FactorDFA& dfa, int max_n) {
  return count_with_dfa(dfa, max_n, FactorFamily(RecognizerFamily{dfa}));
}

enum class SpectralStatus { converged, stalled, finite_language };

struct SpectralEnclosure {
  SpectralStatus status = SpectralStatus::finite_language;
  std::optional<RationalInterval> interval;
  int iterations = 0;
};

namespace detail {

// Alive states reachable from start that admit arbitrarily long continuations.
struct TrimmedMatrix {
  std::vector<int> states;                     // original state ids
  std::vector<std::vector<unsigned>> counts;   // counts[i][j] = #letters state_i -> state_j
};

inline std::optional<TrimmedMatrix> trim_for_growth(const FactorDFA& dfa) {
  const int k = dfa.alphabet_size();
  if (!dfa.alive(dfa.start)) return std::nullopt;
  std::vector<char> reach(static_cast<size_t>(dfa.state_count), 0);
  std::deque<int> queue{dfa.start};
  reach[static_cast<size_t>(dfa.start)] = 1;
  while (!queue.empty()) {
    int s = queue.front();
    queue.pop_front();
    for (int a = 0; a < k; ++a) {
      int t = dfa.delta[s][a];
      if (dfa.alive(t) && !reach[static_cast<size_t>(t)]) {
        reach[static_cast<size_t>(t)] = 1;
        queue.push_back(t);
      }
    }
  }
  // Drop states whose every continuation dies out.
  std::vector<char> kept = reach;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int s = 0; s < dfa.state_count; ++s) {
      if (!kept[static_cast<size_t>(s)]) continue;
      bool has_successor = false;
      for (int a = 0; a < k && !has_successor; ++a) {
        int t = dfa.delta[s][a];
        has_successor = dfa.alive(t) && kept[static_cast<size_t>(t)];
      }
      if (!has_successor) {
        kept[static_cast<size_t>(s)] = 0;
        changed = true;
      }
    }
  }
  TrimmedMatrix trimmed;
  std::vector<int> index(static_cast<size_t>(dfa.state_count), -1);
  for (int s = 0; s < dfa.state_count; ++s) {
    if (kept[static_cast<size_t>(s)]) {
      index[static_cast<size_t>(s)] = static_cast<int>(trimmed.states.size());
      trimmed.states.push_back(s);
    }
  }
  if (trimmed.states.empty()) return std::nullopt;
  trimmed.counts.assign(trimmed.states.size(), std::vector<unsigned>(trimmed.states.size(), 0));
  for (size_t i = 0; i < trimmed.states.size(); ++i) {
    for (int a = 0; a < k; ++a) {
      int t = dfa.delta[trimmed.states[i]][a];
      if (dfa.alive(t) && index[static_cast<size_t>(t)] >= 0)
        ++trimmed.counts[i][static_cast<size_t>(index[static_cast<size_t>(t)])];
    }
  }
  return trimmed;
}

}  // namespace detail

// Encloses the dominant eigenvalue of the trimmed transfer matrix between the
// min and max per-state growth quotients of an exact power iteration. The
// bounds are valid at every step; only their convergence needs primitivity,
// so periodic structure is reported as a stall with the last enclosure.
inline SpectralEnclosure spectral_enclosure(const FactorDFA& dfa, const Rat& tolerance,
                                            int max_iterations = 4000) {
  dfa.validate();
  if (tolerance <= 0) throw std::invalid_argument("spectral_enclosure: tolerance must be positive");
  auto trimmed = detail::trim_for_growth(dfa);
  if (!trimmed) return SpectralEnclosure{SpectralStatus::finite_language, std::nullopt, 0};

  const size_t m = trimmed->states.size();
  std::vector<Int> v(m, Int(1)), w(m);
  std::optional<Rat> best_lo, best_hi;
  for (int it = 1; it <= max_iterations; ++it) {
    for (size_t i = 0; i < m; ++i) {
      Int acc = 0;
      for (size_t j = 0; j < m; ++j) {
        if (trimmed->counts[i][j]) acc += Int(trimmed->counts[i][j]) * v[j];
      }
      w[i] = std::move(acc);
    }
    Rat lo(w[0], v[0]), hi = lo;
    for (size_t i = 1; i < m; ++i) {
      Rat q(w[i], v[i]);
      if (q < lo) lo = q;
      if (q > hi) hi = q;
    }
    if (!best_lo || lo > *best_lo) best_lo = lo;
    if (!best_hi || hi < *best_hi) best_hi = hi;
    if (*best_hi - *best_lo <= tolerance)
      return SpectralEnclosure{SpectralStatus::converged, RationalInterval(*best_lo, *best_hi), it};
    v.swap(w);
  }
  return SpectralEnclosure{SpectralStatus::stalled, RationalInterval(*best_lo, *best_hi), max_iterations};
}

}  // namespace growth
