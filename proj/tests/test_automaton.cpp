#include "growth/automaton.hpp"
#include "growth/counting.hpp"

#include "test_util.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace growth;

TEST_CASE("factor automaton construction", "[automaton]") {
  Alphabet k2(2), k3(3);

  SECTION("single factor 11 gives prefix states plus dead") {
    FactorDFA dfa = build_factor_automaton(ExplicitFamily{{Word{1, 1}}}, k2);
    CHECK(dfa.state_count == 3);
    REQUIRE(dfa.dead.has_value());
    CHECK(dfa.accepts(Word{1, 0, 1, 0, 1}));
    CHECK_FALSE(dfa.accepts(Word{0, 1, 1}));
  }

  SECTION("empty family accepts everything with no dead state") {
    FactorDFA dfa = build_factor_automaton(ExplicitFamily{}, k3);
    CHECK(dfa.state_count == 1);
    CHECK_FALSE(dfa.dead.has_value());
    auto table = count_with_dfa(dfa, 4, FactorFamily(ExplicitFamily{}));
    CHECK(table.at(4) == 81);
  }

  SECTION("shared prefixes merge: {02, 012} has states for eps, 0, 01 and dead") {
    ExplicitFamily family{{Word{0, 2}, Word{0, 1, 2}}};
    CHECK(normalize_family(family).factors.size() == 2);  // neither contains the other
    FactorDFA dfa = build_factor_automaton(family, k3);
    CHECK(dfa.state_count == 4);
    auto table = count_with_dfa(dfa, 8, FactorFamily(family));
    auto oracle = brute_force_count(FactorFamily(family), k3, 8);
    for (int n = 0; n <= 8; ++n) CHECK(table.at(n) == oracle.at(n));
  }

  SECTION("construction normalizes first") {
    FactorDFA redundant = build_factor_automaton(ExplicitFamily{{Word{0}, Word{0, 1}}}, k2);
    FactorDFA minimal = build_factor_automaton(ExplicitFamily{{Word{0}}}, k2);
    CHECK(redundant.state_count == minimal.state_count);
  }

  SECTION("length-1 factor kills the letter immediately") {
    FactorDFA dfa = build_factor_automaton(ExplicitFamily{{Word{2}}}, k3);
    CHECK_FALSE(dfa.accepts(Word{0, 2}));
    CHECK(dfa.accepts(Word{0, 1, 0, 1}));
  }
}

TEST_CASE("counting with the automaton", "[automaton]") {
  Alphabet k2(2);

  SECTION("avoiding 11 counts like Fibonacci") {
    FactorDFA dfa = build_factor_automaton(ExplicitFamily{{Word{1, 1}}}, k2);
    auto table = count_with_dfa(dfa, 8, FactorFamily(ExplicitFamily{{Word{1, 1}}}));
    std::vector<Int> expected{1, 2, 3, 5, 8, 13, 21, 34, 55};
    for (int n = 0; n <= 8; ++n) CHECK(table.at(n) == expected[static_cast<size_t>(n)]);
  }

  SECTION("recognizer for words with no 2 after a 0 follows the closed form") {
    FactorDFA rec{3, 0, 2, {{1, 0, 0}, {1, 1, 2}, {2, 2, 2}}};
    auto table = count_with_dfa(rec, 16);
    for (int n = 1; n <= 16; ++n) CHECK(table.at(n) == Int(n + 2) << (n - 1));
    CHECK(table.at(3) == 20);
    CHECK(table.at(5) == 112);
  }

  SECTION("max_n = 0 gives the empty word only") {
    FactorDFA dfa = build_factor_automaton(ExplicitFamily{{Word{1, 1}}}, k2);
    auto table = count_with_dfa(dfa, 0);
    CHECK(table.at(0) == 1);
  }
}

TEST_CASE("automaton counts equal the brute-force oracle on random families", "[automaton][oracle]") {
  int checked = 0;
  for (int k : {2, 3}) {
    Alphabet alphabet(k);
    for (const auto& family : testutil::random_families(424242u + static_cast<unsigned>(k), 10, k, 4, 4)) {
      FactorDFA dfa = build_factor_automaton(family, alphabet);
      auto fast = count_with_dfa(dfa, 8, FactorFamily(family));
      auto oracle = brute_force_count(FactorFamily(family), alphabet, 8);
      for (int n = 0; n <= 8; ++n) REQUIRE(fast.at(n) == oracle.at(n));
      ++checked;
    }
  }
  CHECK(checked == 20);
}

TEST_CASE("linear tables are submultiplicative", "[automaton]") {
  Alphabet k2(2), k3(3);
  auto check_submult = [](const CountTable& table) {
    for (int n = 1; n <= table.max_n(); ++n) {
      for (int m = n; n + m <= table.max_n(); ++m) {
        REQUIRE(table.at(n + m) <= table.at(n) * table.at(m));
      }
    }
  };
  check_submult(count_with_dfa(build_factor_automaton(ExplicitFamily{{Word{1, 1}}}, k2), 14));
  check_submult(count_with_dfa(build_factor_automaton(ExplicitFamily{{Word{0, 2}, Word{0, 1, 2}}}, k3), 12));
  check_submult(count_power_free(k3, Rat(2), 14));
  check_submult(testutil::no_two_after_zero_table(20));
}

TEST_CASE("the dead state absorbs every extension", "[automaton]") {
  Alphabet k2(2);
  FactorDFA dfa = build_factor_automaton(ExplicitFamily{{Word{1, 1}, Word{0, 0, 0}}}, k2);
  REQUIRE(dfa.dead.has_value());
  Word rejected{1, 1};
  int s = dfa.start;
  for (Letter a : rejected) s = dfa.delta[static_cast<size_t>(s)][a];
  REQUIRE(s == *dfa.dead);
  for (int a = 0; a < 2; ++a) CHECK(dfa.delta[static_cast<size_t>(s)][static_cast<size_t>(a)] == *dfa.dead);
}

TEST_CASE("dfa validation rejects malformed automata", "[automaton]") {
  FactorDFA bad{2, 0, 1, {{1, 1}, {0, 1}}};  // dead state not absorbing
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  FactorDFA ragged{2, 0, std::nullopt, {{0, 0}, {0}}};
  CHECK_THROWS_AS(ragged.validate(), std::invalid_argument);
  FactorDFA out_of_range{1, 0, std::nullopt, {{1}}};
  CHECK_THROWS_AS(out_of_range.validate(), std::invalid_argument);
}

TEST_CASE("spectral enclosure", "[automaton][spectral]") {
  Alphabet k2(2);

  SECTION("avoiding 11 encloses the golden ratio") {
    FactorDFA dfa = build_factor_automaton(ExplicitFamily{{Word{1, 1}}}, k2);
    auto enc = spectral_enclosure(dfa, Rat(1, Int("100000000")));
    REQUIRE(enc.status == SpectralStatus::converged);
    REQUIRE(enc.interval.has_value());
    CHECK(enc.interval->width() <= Rat(1, Int("100000000")));
    // golden ratio = 1.61803398874989484...
    CHECK(enc.interval->lo <= parse_rational("1.61803398874990"));
    CHECK(enc.interval->hi >= parse_rational("1.61803398874989"));
  }

  SECTION("the full shift is exact immediately") {
    FactorDFA full{1, 0, std::nullopt, {{0, 0, 0, 0}}};
    auto enc = spectral_enclosure(full, Rat(1, 1000));
    REQUIRE(enc.status == SpectralStatus::converged);
    CHECK(enc.interval->lo == 4);
    CHECK(enc.interval->hi == 4);
  }

  SECTION("a finite language is reported, not enclosed") {
    ExplicitFamily all_pairs{{Word{0, 0}, Word{0, 1}, Word{1, 0}, Word{1, 1}}};
    auto enc = spectral_enclosure(build_factor_automaton(all_pairs, k2), Rat(1, 1000));
    CHECK(enc.status == SpectralStatus::finite_language);
    CHECK_FALSE(enc.interval.has_value());
  }

  SECTION("period-2 structure still pins growth 1") {
    ExplicitFamily alternating{{Word{0, 0}, Word{1, 1}}};
    auto enc = spectral_enclosure(build_factor_automaton(alternating, k2), Rat(1, 1000));
    REQUIRE(enc.status == SpectralStatus::converged);
    CHECK(enc.interval->lo == 1);
    CHECK(enc.interval->hi == 1);
  }

  SECTION("polynomial-factor growth stalls with a valid enclosure") {
    FactorDFA rec{3, 0, 2, {{1, 0, 0}, {1, 1, 2}, {2, 2, 2}}};
    auto enc = spectral_enclosure(rec, Rat(1, Int("100000000")), 500);
    REQUIRE(enc.status == SpectralStatus::stalled);
    REQUIRE(enc.interval.has_value());
    CHECK(enc.interval->lo == 2);  // the downstream component realizes the radius exactly
    CHECK(enc.interval->hi > 2);
    CHECK(enc.interval->hi < Rat(21, 10));
  }

  SECTION("enclosure brackets the empirical growth ratio") {
    FactorDFA dfa = build_factor_automaton(ExplicitFamily{{Word{1, 1}}}, k2);
    auto enc = spectral_enclosure(dfa, Rat(1, Int("100000000")));
    auto table = count_with_dfa(dfa, 31);
    Rat ratio(table.at(31), table.at(30));
    Rat slack(1, 10000);
    CHECK(ratio >= enc.interval->lo - slack);
    CHECK(ratio <= enc.interval->hi + slack);
  }
}
