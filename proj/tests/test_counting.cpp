#include "growth/counting.hpp"

#include "test_util.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace growth;

namespace {

Word w(std::initializer_list<int> letters) {
  Word out;
  for (int a : letters) out.push_back(static_cast<Letter>(a));
  return out;
}

}  // namespace

TEST_CASE("p-power predicates", "[counting]") {
  SECTION("squares") {
    CHECK(is_p_power_free_after_append(w({0, 1, 0}), Rat(2)));
    CHECK_FALSE(is_p_power_free_after_append(w({0, 1, 0, 1}), Rat(2)));
    CHECK_FALSE(is_p_power_free_after_append(w({0, 0}), Rat(2)));
    CHECK(contains_p_power(w({0, 1, 0, 1}), Rat(2)));
    CHECK_FALSE(contains_p_power(w({0, 1, 2}), Rat(2)));
  }

  SECTION("fractional exponents look only at the suffix") {
    // 0010 carries a 7/4-power (00) inside, but no suffix of length
    // ceil(7l/4) is periodic, so the incremental check reports free.
    CHECK(is_p_power_free_after_append(w({0, 0, 1, 0}), Rat(7, 4)));
    CHECK(contains_p_power(w({0, 0, 1, 0}), Rat(7, 4)));
  }

  SECTION("aba is a 3/2-power") {
    CHECK(contains_p_power(w({0, 1, 0}), Rat(3, 2)));
    CHECK_FALSE(is_p_power_free_after_append(w({0, 1, 0}), Rat(3, 2)));
  }

  SECTION("exponent must exceed one") {
    CHECK_THROWS_AS(contains_p_power(w({0}), Rat(1)), std::invalid_argument);
  }
}

TEST_CASE("incremental check agrees with the full scan along extensions", "[counting][oracle]") {
  // Exhaustive over the extension tree: whenever every proper prefix is
  // p-power-free (the incremental check's contract), the suffix-only check
  // must coincide with the full scan.
  Alphabet k3(3);
  for (const Rat& p : {Rat(3, 2), Rat(7, 4), Rat(2), Rat(3)}) {
    std::uint64_t visited = 0;
    Word word;
    auto dfs = [&](auto&& self) -> void {
      if (word.size() == 12) return;
      for (int a = 0; a < 3; ++a) {
        word.push_back(static_cast<Letter>(a));
        bool incremental = is_p_power_free_after_append(word, p);
        bool naive = !contains_p_power(word, p);
        REQUIRE(incremental == naive);
        ++visited;
        if (incremental) self(self);
        word.pop_back();
      }
    };
    dfs(dfs);
    CHECK(visited > 0);
  }
}

TEST_CASE("power-free counting matches the brute-force oracle", "[counting][oracle]") {
  for (int k : {2, 3}) {
    Alphabet alphabet(k);
    for (const Rat& p : {Rat(3, 2), Rat(7, 4), Rat(2), Rat(3)}) {
      auto fast = count_power_free(alphabet, p, 10);
      auto oracle = brute_force_count(FactorFamily(PowerFreeFamily{p}), alphabet, 10);
      for (int n = 0; n <= 10; ++n) REQUIRE(fast.at(n) == oracle.at(n));
    }
  }
}

TEST_CASE("frozen power-free counts", "[counting]") {
  SECTION("ternary square-free") {
    auto table = count_power_free(Alphabet(3), Rat(2), 15);
    std::vector<long> expected{1, 3, 6, 12, 18, 30, 42, 60, 78, 108, 144, 204, 264, 342, 456, 618};
    for (int n = 0; n <= 15; ++n) {
      CHECK(table.at(n) == expected[static_cast<size_t>(n)]);
      CHECK(table.at(n) <= int_pow(Int(3), static_cast<unsigned>(n)));
    }
  }
  SECTION("five-letter square-free") {
    auto table = count_power_free(Alphabet(5), Rat(2), 7);
    std::vector<long> expected{1, 5, 20, 80, 300, 1140, 4260, 15960};
    for (int n = 0; n <= 7; ++n) CHECK(table.at(n) == expected[static_cast<size_t>(n)]);
  }
  SECTION("binary square-free words die out") {
    auto table = count_power_free(Alphabet(2), Rat(2), 5);
    CHECK(table.at(3) == 2);  // 010 and 101
    CHECK(table.at(4) == 0);
    CHECK(table.at(5) == 0);
  }
}

TEST_CASE("counts never decrease in the exponent", "[counting]") {
  Alphabet k3(3);
  auto t32 = count_power_free(k3, Rat(3, 2), 9);
  auto t74 = count_power_free(k3, Rat(7, 4), 9);
  auto t2 = count_power_free(k3, Rat(2), 9);
  auto t3 = count_power_free(k3, Rat(3), 9);
  for (int n = 0; n <= 9; ++n) {
    CHECK(t32.at(n) <= t74.at(n));
    CHECK(t74.at(n) <= t2.at(n));
    CHECK(t2.at(n) <= t3.at(n));
  }
}

TEST_CASE("circular freeness", "[counting]") {
  FactorFamily squarefree(PowerFreeFamily{Rat(2)});

  SECTION("spec examples") {
    CHECK(is_circular_free(w({0, 1, 2}), squarefree));
    CHECK_FALSE(is_circular_free(w({0, 1, 0}), squarefree));  // conjugate 001 has a square
    CHECK(is_circular_free(w({0}), squarefree));
    CHECK(is_circular_free(w({0}), FactorFamily(ExplicitFamily{{w({0, 1})}})));
  }

  SECTION("rotation invariance") {
    FactorFamily explicit_family(ExplicitFamily{{w({0, 0}), w({1, 2})}});
    std::mt19937 rng(777);
    std::uniform_int_distribution<int> len(1, 10), letter(0, 2);
    for (int trial = 0; trial < 200; ++trial) {
      Word word;
      int n = len(rng);
      for (int i = 0; i < n; ++i) word.push_back(static_cast<Letter>(letter(rng)));
      bool base_sq = is_circular_free(word, squarefree);
      bool base_ex = is_circular_free(word, explicit_family);
      for (size_t r = 1; r < word.size(); ++r) {
        Word rotated = rotate_word(word, r);
        REQUIRE(is_circular_free(rotated, squarefree) == base_sq);
        REQUIRE(is_circular_free(rotated, explicit_family) == base_ex);
      }
    }
  }

  SECTION("matches the all-conjugates definition") {
    // brute_force_count applies the rotation definition directly.
    Alphabet k3(3);
    auto fast = count_circular(squarefree, k3, 8);
    auto oracle = brute_force_count(squarefree, k3, 8, /*circular=*/true);
    for (int n = 0; n <= 8; ++n) REQUIRE(fast.at(n) == oracle.at(n));
  }

  SECTION("spectrum families cannot be tested") {
    CHECK_THROWS_AS(is_circular_free(w({0}), FactorFamily(SpectrumFamily{OnePerLength{2}})),
                    std::invalid_argument);
  }
}

TEST_CASE("circular counting", "[counting]") {
  Alphabet k2(2), k3(3);
  FactorFamily squarefree(PowerFreeFamily{Rat(2)});

  SECTION("ternary circular square-free counts") {
    auto table = count_circular(squarefree, k3, 12);
    std::vector<long> expected{1, 3, 6, 6, 12, 0, 18, 0, 24, 0, 0, 66, 72};
    for (int n = 0; n <= 12; ++n) CHECK(table.at(n) == expected[static_cast<size_t>(n)]);
    CHECK(table.circular);
  }

  SECTION("five-letter circular square-free counts") {
    auto table = count_circular(squarefree, Alphabet(5), 7);
    std::vector<long> expected{1, 5, 20, 60, 240, 720, 2940, 10080};
    for (int n = 0; n <= 7; ++n) CHECK(table.at(n) == expected[static_cast<size_t>(n)]);
  }

  SECTION("explicit family against the oracle") {
    FactorFamily family(ExplicitFamily{{w({0, 0})}});
    auto fast = count_circular(family, k2, 8);
    auto oracle = brute_force_count(family, k2, 8, true);
    for (int n = 0; n <= 8; ++n) REQUIRE(fast.at(n) == oracle.at(n));
  }

  SECTION("recognizer family against the oracle") {
    FactorDFA rec{3, 0, 2, {{1, 0, 0}, {1, 1, 2}, {2, 2, 2}}};
    FactorFamily family(RecognizerFamily{rec});
    auto fast = count_circular(family, k3, 8);
    auto oracle = brute_force_count(family, k3, 8, true);
    for (int n = 0; n <= 8; ++n) REQUIRE(fast.at(n) == oracle.at(n));
  }

  SECTION("circular counts never exceed linear counts") {
    auto circular = count_circular(squarefree, k3, 12);
    auto linear = count_power_free(k3, Rat(2), 12);
    for (int n = 1; n <= 12; ++n) CHECK(circular.at(n) <= linear.at(n));

    FactorFamily f11(ExplicitFamily{{w({1, 1})}});
    auto circ11 = count_circular(f11, k2, 10);
    auto lin11 = brute_force_count(f11, k2, 10);
    for (int n = 1; n <= 10; ++n) CHECK(circ11.at(n) <= lin11.at(n));
  }
}

TEST_CASE("threaded enumeration is bit-identical to the sequential run", "[counting]") {
  Alphabet k3(3);
  CountOptions sequential{1, 100'000'000};
  CountOptions threaded{3, 100'000'000};
  auto a = count_power_free(k3, Rat(2), 14, sequential);
  auto b = count_power_free(k3, Rat(2), 14, threaded);
  REQUIRE(a.counts == b.counts);

  FactorFamily squarefree(PowerFreeFamily{Rat(2)});
  auto c = count_circular(squarefree, k3, 12, sequential);
  auto d = count_circular(squarefree, k3, 12, CountOptions{2, 100'000'000});
  REQUIRE(c.counts == d.counts);
}

TEST_CASE("enumeration budget is an explicit error", "[counting]") {
  Alphabet k3(3);
  CHECK_THROWS_AS(count_power_free(k3, Rat(2), 12, CountOptions{1, 50}), BudgetExceeded);
  CHECK_THROWS_AS(count_power_free(k3, Rat(2), 12, CountOptions{2, 50}), BudgetExceeded);
  CHECK_THROWS_AS(count_circular(FactorFamily(PowerFreeFamily{Rat(2)}), k3, 12, CountOptions{1, 50}),
                  BudgetExceeded);
}

TEST_CASE("brute force oracle guard rails", "[counting]") {
  CHECK_THROWS_AS(brute_force_count(FactorFamily(PowerFreeFamily{Rat(2)}), Alphabet(10), 9),
                  std::invalid_argument);
  auto t = brute_force_count(FactorFamily(PowerFreeFamily{Rat(2)}), Alphabet(3), 0);
  CHECK(t.at(0) == 1);
  auto tc = brute_force_count(FactorFamily(PowerFreeFamily{Rat(2)}), Alphabet(3), 0, true);
  CHECK(tc.at(0) == 1);
  CHECK_THROWS_AS(brute_force_count(FactorFamily(SpectrumFamily{OnePerLength{2}}), Alphabet(3), 3),
                  std::invalid_argument);
}
