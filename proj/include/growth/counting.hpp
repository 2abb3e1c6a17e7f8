#pragma once

#include "growth/automaton.hpp"
#include "growth/count_table.hpp"
#include "growth/family.hpp"
#include "growth/rational.hpp"

#include <atomic>
#include <cstdint>
#include <exception>
#include <stdexcept>
#include <thread>
#include <vector>

namespace growth {

struct CountOptions {
  int threads = 1;
  std::uint64_t max_nodes = 100'000'000;  // enumeration budget; exceeding it is an error
};

class BudgetExceeded : public std::runtime_error {
 public:
  explicit BudgetExceeded(std::uint64_t limit)
      : std::runtime_error("enumeration budget of " + std::to_string(limit) + " nodes exceeded") {}
};

// Full scan: does any factor of w form a p-power? A factor with period l is a
// p-power violation iff it extends to length ceil(p*l), so scanning those
// lengths over all start positions is exhaustive. Definitional oracle route.
inline bool contains_p_power(const Word& w, const Rat& p) {
  if (p <= 1) throw std::invalid_argument("p-power check needs p > 1");
  const long n = static_cast<long>(w.size());
  for (long l = 1;; ++l) {
    long len = ceil_mul(p, l);
    if (len > n) break;
    for (long i = 0; i + len <= n; ++i) {
      bool periodic = true;
      for (long t = 0; t + l < len; ++t) {
        if (w[static_cast<size_t>(i + t)] != w[static_cast<size_t>(i + t + l)]) {
          periodic = false;
          break;
        }
      }
      if (periodic) return true;
    }
  }
  return false;
}

// Suffix-only check for left-to-right extension. Assumes every proper prefix
// of w is p-power-free; a fresh violation must then be a suffix of length
// exactly ceil(p*l) for its period l.
inline bool is_p_power_free_after_append(const Word& w, const Rat& p) {
  if (p <= 1) throw std::invalid_argument("p-power check needs p > 1");
  const long n = static_cast<long>(w.size());
  for (long l = 1;; ++l) {
    long len = ceil_mul(p, l);
    if (len > n) break;
    const Letter* s = w.data() + (n - len);
    bool periodic = true;
    for (long t = 0; t + l < len; ++t) {
      if (s[t] != s[t + l]) {
        periodic = false;
        break;
      }
    }
    if (periodic) return false;
  }
  return true;
}

namespace detail {

// p-powers of length <= |w| that wrap around the seam of w written on a
// circle. Together with linear freeness of w itself this covers every factor
// of ww of length <= |w|. The scratch buffer holds ww so the inner loop is
// plain indexing; it is the hot path of circular counting.
inline bool has_wrapped_p_power_buffered(const Word& w, const std::vector<long>& power_len, Word& scratch) {
  const long n = static_cast<long>(w.size());
  scratch.resize(static_cast<size_t>(2 * n));
  std::copy(w.begin(), w.end(), scratch.begin());
  std::copy(w.begin(), w.end(), scratch.begin() + n);
  const Letter* s = scratch.data();
  for (size_t idx = 0; idx < power_len.size(); ++idx) {
    const long l = static_cast<long>(idx) + 1;
    const long len = power_len[idx];
    if (len > n) break;
    for (long i = n - len + 1; i < n; ++i) {
      bool periodic = true;
      for (long t = 0; t + l < len; ++t) {
        if (s[i + t] != s[i + t + l]) {
          periodic = false;
          break;
        }
      }
      if (periodic) return true;
    }
  }
  return false;
}

inline bool has_wrapped_p_power(const Word& w, const Rat& p) {
  const long n = static_cast<long>(w.size());
  std::vector<long> power_len;
  for (long l = 1;; ++l) {
    long len = ceil_mul(p, l);
    if (len > n) break;
    power_len.push_back(len);
  }
  Word scratch;
  return has_wrapped_p_power_buffered(w, power_len, scratch);
}

inline bool has_wrapped_factor(const Word& w, const std::vector<Word>& factors) {
  const size_t n = w.size();
  for (const Word& f : factors) {
    if (f.size() > n) continue;
    for (size_t i = 0; i < n; ++i) {
      bool match = true;
      for (size_t t = 0; t < f.size(); ++t) {
        if (w[(i + t) % n] != f[t]) {
          match = false;
          break;
        }
      }
      if (match) return true;
    }
  }
  return false;
}

inline bool all_conjugates_accepted(const FactorDFA& dfa, const Word& w) {
  const size_t n = w.size();
  for (size_t r = 0; r < n; ++r) {
    int s = dfa.start;
    if (!dfa.alive(s)) return false;
    bool ok = true;
    for (size_t t = 0; t < n && ok; ++t) {
      s = dfa.delta[s][w[(r + t) % n]];
      ok = dfa.alive(s);
    }
    if (!ok) return false;
  }
  return true;
}

}  // namespace detail

// Conjugate-closure freeness via the word-on-a-circle characterization:
// every factor of w.w of length <= |w| must pass the freeness predicate.
inline bool is_circular_free(const Word& w, const FactorFamily& family) {
  if (w.empty()) return true;
  if (const auto* pf = family.as_power_free()) {
    return !contains_p_power(w, pf->exponent) && !detail::has_wrapped_p_power(w, pf->exponent);
  }
  if (const auto* exp = family.as_explicit()) {
    return !detail::has_wrapped_factor(w, exp->factors);
  }
  if (const auto* rec = family.as_recognizer()) {
    return detail::all_conjugates_accepted(rec->dfa, w);
  }
  throw std::invalid_argument("circular freeness is undefined for abstract length spectra");
}

namespace detail {

struct Budget {
  std::atomic<std::uint64_t>* counter = nullptr;
  std::uint64_t limit = 0;

  void tick() const {
    if (counter && counter->fetch_add(1, std::memory_order_relaxed) + 1 > limit) throw BudgetExceeded(limit);
  }
};

// Pruners own the candidate word and whatever per-branch state keeps the
// extension check incremental.
class PowerFreePruner {
 public:
  PowerFreePruner(Rat p, int max_n) : p_(std::move(p)) {
    w_.reserve(static_cast<size_t>(max_n));
    for (long l = 1;; ++l) {
      long len = ceil_mul(p_, l);
      if (len > max_n) break;
      power_len_.push_back(len);
    }
  }

  bool try_push(Letter a) {
    w_.push_back(a);
    const long n = static_cast<long>(w_.size());
    for (size_t idx = 0; idx < power_len_.size(); ++idx) {
      const long l = static_cast<long>(idx) + 1;
      const long len = power_len_[idx];
      if (len > n) break;
      const Letter* s = w_.data() + (n - len);
      bool periodic = true;
      for (long t = 0; t + l < len; ++t) {
        if (s[t] != s[t + l]) {
          periodic = false;
          break;
        }
      }
      if (periodic) {
        w_.pop_back();
        return false;
      }
    }
    return true;
  }

  void pop() { w_.pop_back(); }
  const Word& word() const { return w_; }

 private:
  Word w_;
  Rat p_;
  std::vector<long> power_len_;
};

class DfaPruner {
 public:
  DfaPruner(const FactorDFA& dfa, int max_n) : dfa_(&dfa) {
    w_.reserve(static_cast<size_t>(max_n));
    states_.reserve(static_cast<size_t>(max_n) + 1);
    states_.push_back(dfa.start);
  }

  bool try_push(Letter a) {
    int t = dfa_->delta[static_cast<size_t>(states_.back())][a];
    if (!dfa_->alive(t)) return false;
    states_.push_back(t);
    w_.push_back(a);
    return true;
  }

  void pop() {
    states_.pop_back();
    w_.pop_back();
  }

  const Word& word() const { return w_; }

 private:
  const FactorDFA* dfa_;
  Word w_;
  std::vector<int> states_;
};

template <class Pruner, class Accept>
void dfs_count(Pruner& pruner, int k, int max_n, const Accept& accept, std::vector<Int>& counts,
               const Budget& budget) {
  const int depth = static_cast<int>(pruner.word().size());
  if (depth >= max_n) return;
  for (int a = 0; a < k; ++a) {
    if (!pruner.try_push(static_cast<Letter>(a))) continue;
    budget.tick();
    if (accept(pruner.word())) ++counts[static_cast<size_t>(depth) + 1];
    dfs_count(pruner, k, max_n, accept, counts, budget);
    pruner.pop();
  }
}

// Deterministic work-splitting: the tree is partitioned over disjoint
// fixed-length prefixes and the per-prefix tables are summed in prefix
// order, so the aggregate is bit-identical to the sequential run.
template <class MakePruner, class Accept>
std::vector<Int> enumerate_counts(const Alphabet& alphabet, int max_n, const MakePruner& make_pruner,
                                  const Accept& accept, const CountOptions& options) {
  std::vector<Int> counts(static_cast<size_t>(max_n) + 1, Int(0));
  counts[0] = 1;
  if (max_n == 0) return counts;

  std::atomic<std::uint64_t> visited{0};
  Budget budget{&visited, options.max_nodes};
  const int k = alphabet.size;

  if (options.threads <= 1) {
    auto pruner = make_pruner();
    dfs_count(pruner, k, max_n, accept, counts, budget);
    return counts;
  }

  // Pick the split depth so there is enough work per thread, then enumerate
  // the head of the tree once, keeping the depth-d free words as subtree roots.
  const size_t want = 8 * static_cast<size_t>(options.threads);
  int split_depth = 1;
  std::vector<Word> prefixes;
  std::uint64_t head_nodes = 0;
  while (true) {
    std::vector<Int> head(static_cast<size_t>(max_n) + 1, Int(0));
    std::vector<Word> found;
    std::atomic<std::uint64_t> local{0};
    Budget local_budget{&local, options.max_nodes};
    auto pruner = make_pruner();
    auto collector = [&](const Word& w) {
      if (static_cast<int>(w.size()) == split_depth) found.push_back(w);
      return accept(w);
    };
    dfs_count(pruner, k, split_depth, collector, head, local_budget);
    prefixes = std::move(found);
    head_nodes = local.load();
    for (int n = 1; n <= split_depth; ++n) counts[static_cast<size_t>(n)] = head[static_cast<size_t>(n)];
    if (prefixes.size() >= want || split_depth >= max_n) break;
    ++split_depth;
  }
  // Head nodes are charged once, so the budget accounting matches the
  // sequential run exactly.
  if (visited.fetch_add(head_nodes) + head_nodes > options.max_nodes) throw BudgetExceeded(options.max_nodes);
  if (split_depth >= max_n) return counts;

  std::vector<std::vector<Int>> partial(prefixes.size());
  std::vector<std::exception_ptr> errors(prefixes.size());
  std::atomic<size_t> cursor{0};
  std::atomic<bool> abort{false};
  auto worker = [&]() {
    while (true) {
      size_t idx = cursor.fetch_add(1);
      if (idx >= prefixes.size() || abort.load(std::memory_order_relaxed)) return;
      try {
        auto pruner = make_pruner();
        for (Letter a : prefixes[idx]) {
          bool ok = pruner.try_push(a);
          if (!ok) throw std::logic_error("prefix replay failed");
        }
        std::vector<Int> local(static_cast<size_t>(max_n) + 1, Int(0));
        dfs_count(pruner, k, max_n, accept, local, budget);
        partial[idx] = std::move(local);
      } catch (...) {
        errors[idx] = std::current_exception();
        abort.store(true, std::memory_order_relaxed);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  int nthreads = std::min<int>(options.threads, static_cast<int>(prefixes.size()));
  for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  for (const auto& err : errors) {
    if (err) std::rethrow_exception(err);
  }
  for (size_t idx = 0; idx < prefixes.size(); ++idx) {
    if (partial[idx].empty()) continue;
    for (int n = split_depth + 1; n <= max_n; ++n)
      counts[static_cast<size_t>(n)] += partial[idx][static_cast<size_t>(n)];
  }
  return counts;
}

}  // namespace detail

// Exact p-power-free counts by depth-first extension; the incremental suffix
// check makes each node O(|w|) in practice.
inline CountTable count_power_free(const Alphabet& alphabet, const Rat& p, int max_n,
                                   const CountOptions& options = {}) {
  if (p <= 1) throw std::invalid_argument("count_power_free: exponent must exceed 1");
  if (max_n < 0) throw std::invalid_argument("count_power_free: max_n must be >= 0");
  auto make = [&] { return detail::PowerFreePruner(p, max_n); };
  auto counts = detail::enumerate_counts(alphabet, max_n, make, [](const Word&) { return true; }, options);
  return CountTable{alphabet, FactorFamily(PowerFreeFamily{p}), false, std::move(counts)};
}

// Circular counts: the linear enumeration filtered by conjugate-closure
// freeness. Each rotation position counts as a distinct word.
inline CountTable count_circular(const FactorFamily& family, const Alphabet& alphabet, int max_n,
                                 const CountOptions& options = {}) {
  if (max_n < 0) throw std::invalid_argument("count_circular: max_n must be >= 0");
  std::vector<Int> counts;
  if (const auto* pf = family.as_power_free()) {
    Rat p = pf->exponent;
    std::vector<long> power_len;
    for (long l = 1;; ++l) {
      long len = ceil_mul(p, l);
      if (len > max_n) break;
      power_len.push_back(len);
    }
    auto make = [&] { return detail::PowerFreePruner(p, max_n); };
    auto accept = [&power_len](const Word& w) {
      static thread_local Word scratch;
      return !detail::has_wrapped_p_power_buffered(w, power_len, scratch);
    };
    counts = detail::enumerate_counts(alphabet, max_n, make, accept, options);
  } else if (const auto* exp = family.as_explicit()) {
    FactorDFA dfa = build_factor_automaton(*exp, alphabet);
    auto make = [&] { return detail::DfaPruner(dfa, max_n); };
    auto accept = [&](const Word& w) { return !detail::has_wrapped_factor(w, exp->factors); };
    counts = detail::enumerate_counts(alphabet, max_n, make, accept, options);
  } else if (const auto* rec = family.as_recognizer()) {
    const FactorDFA& dfa = rec->dfa;
    dfa.validate();
    if (dfa.alphabet_size() != alphabet.size)
      throw std::invalid_argument("count_circular: recognizer alphabet width mismatch");
    if (!dfa.alive(dfa.start)) {
      counts.assign(static_cast<size_t>(max_n) + 1, Int(0));
    } else {
      auto make = [&] { return detail::DfaPruner(dfa, max_n); };
      auto accept = [&](const Word& w) { return detail::all_conjugates_accepted(dfa, w); };
      counts = detail::enumerate_counts(alphabet, max_n, make, accept, options);
    }
  } else {
    throw std::invalid_argument("count_circular: length spectra are analytic-only");
  }
  return CountTable{alphabet, family, true, std::move(counts)};
}

// Exhaustive oracle: enumerates every word over the alphabet and applies the
// definitional predicate. Independent of the automaton and DFS paths.
inline CountTable brute_force_count(const FactorFamily& family, const Alphabet& alphabet, int max_n,
                                    bool circular = false) {
  if (max_n < 0) throw std::invalid_argument("brute_force_count: max_n must be >= 0");
  if (int_pow(Int(alphabet.size), static_cast<unsigned>(max_n)) > Int(100'000'000))
    throw std::invalid_argument("brute_force_count: k^max_n exceeds the enumeration guard");

  auto linear_free = [&](const Word& w) -> bool {
    if (const auto* exp = family.as_explicit()) {
      for (const Word& f : exp->factors) {
        if (contains_factor(w, f)) return false;
      }
      return true;
    }
    if (const auto* rec = family.as_recognizer()) return rec->dfa.accepts(w);
    if (const auto* pf = family.as_power_free()) return !contains_p_power(w, pf->exponent);
    throw std::invalid_argument("brute_force_count: length spectra are analytic-only");
  };
  auto free_word = [&](const Word& w) -> bool {
    if (!circular) return linear_free(w);
    for (size_t r = 0; r < w.size(); ++r) {
      if (!linear_free(rotate_word(w, r))) return false;
    }
    return true;
  };

  if (const auto* rec = family.as_recognizer()) {
    if (rec->dfa.alphabet_size() != alphabet.size)
      throw std::invalid_argument("brute_force_count: recognizer alphabet width mismatch");
  }

  CountTable table{alphabet, family, circular,
                   std::vector<Int>(static_cast<size_t>(max_n) + 1, Int(0))};
  table.counts[0] = free_word(Word{}) ? 1 : 0;
  Word w;
  for (int n = 1; n <= max_n; ++n) {
    w.assign(static_cast<size_t>(n), 0);
    Int matched = 0;
    while (true) {
      if (free_word(w)) ++matched;
      int pos = n - 1;
      while (pos >= 0 && w[static_cast<size_t>(pos)] == alphabet.size - 1) {
        w[static_cast<size_t>(pos)] = 0;
        --pos;
      }
      if (pos < 0) break;
      ++w[static_cast<size_t>(pos)];
    }
    table.counts[static_cast<size_t>(n)] = matched;
  }
  return table;
}

}  // namespace growth
