#include "doctest.h"

#include <bit>

#include "circleconv/digit_measure.hpp"
#include "circleconv/sumset.hpp"
#include "oracles.hpp"

using namespace circleconv;

namespace {

// Words counted by a DP over the raw last N-1 digit occupancies (all 2^(N-1)
// patterns, reachable or not), independent of the library's state graph.
double dp_count(unsigned p, unsigned window, unsigned budget, unsigned length) {
  const unsigned keep = window - 1;
  const std::uint64_t patterns = std::uint64_t{1} << keep;
  const std::uint64_t mask = patterns - 1;
  std::vector<double> ways(patterns, 0.0), next(patterns);
  ways[0] = 1.0;
  for (unsigned step = 0; step < length; ++step) {
    std::fill(next.begin(), next.end(), 0.0);
    for (std::uint64_t s = 0; s < patterns; ++s) {
      if (ways[s] == 0.0) continue;
      for (const int bit : {0, 1}) {
        // Window ending here: the kept digits plus this one. Before the word is N
        // long the missing digits are zeros, which never add to the count.
        if (static_cast<unsigned>(std::popcount(s)) + bit > budget) continue;
        next[((s << 1) | bit) & mask] += ways[s] * (bit ? p - 1 : 1);
      }
    }
    ways.swap(next);
  }
  double total = 0;
  for (const double w : ways) total += w;
  return total;
}

}  // namespace

TEST_CASE("budgets") {
  CHECK(digit_budget(0.25, 4) == 1);
  CHECK(digit_budget(0.3, 10) == 3);  // 0.3 * 10 is 2.9999999999999996
  CHECK(digit_budget(0.2, 20) == 4);
  CHECK(digit_budget(1.0, 7) == 7);
  CHECK(digit_budget(0.0, 7) == 0);
}

TEST_CASE("entropy of the extreme shifts") {
  for (const unsigned p : {2u, 3u, 5u}) {
    for (const unsigned n : {1u, 2u, 5u, 9u}) {
      const auto full = topological_entropy(DigitSFT(p, n, n));
      CHECK(full.entropy == doctest::Approx(std::log(double(p))).epsilon(1e-12));
      CHECK(full.dimension == doctest::Approx(1.0).epsilon(1e-12));
      const auto point = topological_entropy(DigitSFT(p, n, 0));
      CHECK(point.entropy == doctest::Approx(0.0));
      CHECK(point.dimension == doctest::Approx(0.0));
    }
  }
  const auto golden = topological_entropy(DigitSFT(2, 2, 1));
  // Spectral radius of ((1,1),(1,0)) by the quadratic formula.
  CHECK(golden.entropy == doctest::Approx(std::log((1.0 + std::sqrt(5.0)) / 2.0)).epsilon(1e-12));
  CHECK_THROWS_AS(DigitSFT(2, 64, 3), std::invalid_argument);
  CHECK_THROWS_AS(DigitSFT(2, 30, 15, 1000), CapExceeded);
}

TEST_CASE("entropy is nondecreasing in the budget") {
  for (const unsigned p : {2u, 3u}) {
    for (unsigned n = 1; n <= 12; ++n) {
      double previous = -1;
      for (unsigned b = 0; b <= n; ++b) {
        const double h = topological_entropy(DigitSFT(p, n, b)).entropy;
        CHECK(h >= previous - 1e-12);
        CHECK(h <= std::log(double(p)) + 1e-12);
        previous = h;
      }
    }
  }
}

TEST_CASE("word counts") {
  for (const unsigned p : {2u, 3u}) {
    for (unsigned n = 1; n <= 5; ++n) {
      for (unsigned b = 0; b <= n; ++b) {
        const DigitSFT s(p, n, b);
        const unsigned length = p == 2 ? 14 : 9;
        std::uint64_t brute = 0;
        for (std::uint64_t v = 0; v < oracle::ipow(p, length); ++v) brute += oracle::admissible(v, p, length, n, b);
        CHECK(count_words_brute_force(p, n, b, length) == brute);
        CHECK(count_words(s, length) == doctest::Approx(double(brute)).epsilon(1e-14));
        CHECK(admissible_words(p, length, n, b).size() == brute);
      }
    }
  }
  const auto words = admissible_words(3, 4, 2, 1);
  CHECK(std::is_sorted(words.begin(), words.end()));
  for (const auto w : words) CHECK(word_admissible(w, 3, 4, 2, 1));
}

TEST_CASE("growth rate of word counts matches the entropy") {
  const unsigned length = 30;
  for (unsigned n = 1; n <= 6; ++n) {
    for (unsigned b = 0; b <= n; ++b) {
      const DigitSFT s(2, n, b);
      const double count = dp_count(2, n, b, length);
      CHECK(count_words(s, length) == doctest::Approx(count).epsilon(1e-12));
      const double rate = std::log(count) / length;
      // The count is within a factor 2^(N-1) of lambda^L either way.
      CHECK(std::abs(rate - topological_entropy(s).entropy) <= n * std::log(2.0) / length);
    }
  }
}

TEST_CASE("nonzero digits are subadditive under addition") {
  CHECK(nonzero_digits(0, 2) == 0);
  CHECK(nonzero_digits(1005, 10) == 2);
  for (const unsigned p : {2u, 3u}) {
    const std::uint64_t limit = p == 2 ? 4096 : 2187;
    std::vector<unsigned> count(2 * limit);
    for (std::uint64_t v = 0; v < 2 * limit; ++v) count[v] = oracle::nonzero_digits(v, p);
    std::uint64_t violations = 0;
    for (std::uint64_t a = 0; a < limit; ++a)
      for (std::uint64_t b = 0; b < limit; ++b) violations += count[a + b] > count[a] + count[b];
    CHECK(violations == 0);
  }
}

TEST_CASE("sum-set containment") {
  const auto trivial = sumset_containment_check(2, 0.5, 4, 0.0, 2, 8);
  CHECK(trivial.holds);
  CHECK_FALSE(trivial.witness.has_value());

  const auto quarter = sumset_containment_check(2, 0.25, 4, 0.25, 2, 8);
  CHECK(quarter.holds);
  CHECK(quarter.target_budget == 3);
  CHECK(quarter.pairs_checked > 0);

  struct Instance {
    unsigned n;
    double beta;
    unsigned m;
    double beta_prime;
    unsigned p;
    unsigned length;
  };
  const std::vector<Instance> instances{{2, 0.5, 4, 0.25, 2, 8},  {1, 0.0, 4, 0.5, 2, 8},   {2, 0.5, 2, 0.5, 2, 8},
                                        {3, 1.0 / 3, 6, 1.0 / 3, 2, 12}, {2, 0.5, 4, 0.25, 3, 8}, {4, 0.25, 4, 0.5, 2, 12},
                                        {2, 0.5, 6, 1.0 / 6, 2, 12}};
  for (const auto& i : instances) {
    const auto r = sumset_containment_check(i.n, i.beta, i.m, i.beta_prime, i.p, i.length);
    INFO("N=", i.n, " M=", i.m, " p=", i.p, " L=", i.length);
    CHECK(r.holds);
    CHECK(r.target_budget == digit_budget(i.beta + i.beta_prime + 1.0 / i.m, i.m));
  }

  CHECK_THROWS_AS(sumset_containment_check(3, 0.3, 4, 0.25, 2, 8), std::invalid_argument);
  CHECK_THROWS_AS(sumset_containment_check(2, 0.5, 4, 0.25, 2, 10), std::invalid_argument);
  CHECK_THROWS_AS(sumset_containment_check(2, 0.5, 4, 0.5, 2, 16, 1000), CapExceeded);
}

TEST_CASE("dimension-gap pipeline") {
  const std::vector<double> one{0.5};
  const auto single = dimension_gap_pipeline(one, 0.1, 2);
  REQUIRE(single.entries.size() == 1);
  const auto& e = single.entries[0];
  CHECK(e.found);
  CHECK(e.window >= 20);
  CHECK(e.dimension > 0.5);
  CHECK(e.dimension < 0.55);
  CHECK(e.dimension == doctest::Approx(topological_entropy(DigitSFT(2, e.window, e.budget)).dimension));
  CHECK(e.measure_dimension == doctest::Approx(psi(e.beta, 2) / std::log(2.0)));
  CHECK(single.condition_holds);
  CHECK_FALSE(single.vacuous);
  CHECK(single.bound_dim < 1.0);
  CHECK(single.bound_dim == doctest::Approx(psi(0.1 + e.beta, 2) / std::log(2.0)));

  const std::vector<double> none;
  const auto empty = dimension_gap_pipeline(none, 0.1, 2);
  CHECK(empty.entries.empty());
  CHECK(empty.sum_beta == 0.0);
  CHECK(empty.condition_holds);
  CHECK_FALSE(empty.vacuous);
  CHECK(empty.bound_dim == doctest::Approx(psi(0.1, 2) / std::log(2.0)));

  const std::vector<double> heavy{0.8, 0.8};
  const auto big = dimension_gap_pipeline(heavy, 0.5, 2);
  REQUIRE(big.entries.size() == 2);
  CHECK(big.entries[0].found);
  CHECK(big.entries[1].found);
  CHECK(big.entries[1].window % big.entries[0].window == 0);
  CHECK(big.sum_beta >= 0.5);
  CHECK_FALSE(big.condition_holds);
  CHECK(big.vacuous);

  const std::vector<double> bad{1.2};
  CHECK_THROWS_AS(dimension_gap_pipeline(bad, 0.1, 2), std::invalid_argument);
  CHECK_THROWS_AS(dimension_gap_pipeline(one, 1.5, 2), std::invalid_argument);
}
