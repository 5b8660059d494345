#include <gtest/gtest.h>

#include <functional>
#include <numeric>

#include "cardgame/posterior.hpp"

using namespace cardgame;

TEST(NextCardDistribution, UniformAtRoundOne) {
  for (auto [m, n] : {std::pair{1, 3}, {2, 3}, {3, 2}, {1, 6}}) {
    const auto p = next_card_distribution({m, n}, {});
    for (Label k = 1; k <= n; ++k) EXPECT_NEAR(p[k], 1.0 / n, 1e-15);
  }
}

TEST(NextCardDistribution, MissOnTwoCardDeckForcesOrder) {
  // Orderings [1,2] and [2,1]; a miss on guess 1 keeps only [2,1].
  History h;
  h.push(1, false);
  const auto p = next_card_distribution({1, 2}, h);
  EXPECT_DOUBLE_EQ(p[1], 1.0);
  EXPECT_DOUBLE_EQ(p[2], 0.0);
}

TEST(NextCardDistribution, SingleLabelDeck) {
  History h;
  h.push(1, true);
  EXPECT_DOUBLE_EQ(next_card_distribution({2, 1}, h)[1], 1.0);
}

TEST(NextCardDistribution, Errors) {
  History impossible;
  impossible.push(1, true);
  impossible.push(1, true);
  EXPECT_THROW(next_card_distribution({1, 3}, impossible), InfeasibleHistory);
  EXPECT_THROW(next_card_distribution({5, 5}, {}), OracleLimitExceeded);
  EXPECT_THROW(PosteriorOracle(3, 5), OracleLimitExceeded);
}

TEST(Orderings, CountIsMultinomial) {
  EXPECT_EQ(enumerate_orderings(2, 3).size(), 90u);
  EXPECT_EQ(enumerate_orderings(2, 4).size(), 2520u);
  EXPECT_EQ(enumerate_orderings(1, 4).size(), 24u);
}

// The tally DP must reproduce the explicit-enumeration counts on every
// reachable history, for every next label.
TEST(PosteriorOracle, MatchesBruteForceOnEveryReachableHistory) {
  for (auto [m, n] : {std::pair{1, 2}, {1, 3}, {1, 4}, {2, 2}, {2, 3}, {3, 2}, {1, 5}}) {
    const GameConfig config{m, n};
    const auto orderings = enumerate_orderings(m, n);
    PosteriorOracle oracle(m, n);
    History h;
    std::size_t visited = 0;
    std::function<void(const std::vector<std::size_t>&)> walk = [&](const std::vector<std::size_t>& live) {
      ++visited;
      const auto brute = count_consistent_bruteforce(config, h);
      const auto fast = oracle.counts(h);
      ASSERT_EQ(brute.total, live.size());
      ASSERT_EQ(fast.total, brute.total) << "m=" << m << " n=" << n << " t=" << h.rounds() + 1;
      double sum = 0;
      for (Label k = 1; k <= n; ++k) {
        ASSERT_EQ(fast.next[k], brute.next[k]);
        sum += fast.probability(k);
      }
      EXPECT_NEAR(sum, 1.0, 1e-12);
      if (h.rounds() + 1 >= m * n) return;
      for (Label g = 1; g <= n; ++g) {
        std::vector<std::size_t> hit, miss;
        for (auto idx : live) (orderings[idx][h.rounds()] == g ? hit : miss).push_back(idx);
        for (bool correct : {true, false}) {
          const auto& next = correct ? hit : miss;
          if (next.empty()) continue;
          h.push(g, correct);
          walk(next);
          h.pop();
        }
      }
    };
    std::vector<std::size_t> all(orderings.size());
    std::iota(all.begin(), all.end(), 0);
    walk(all);
    EXPECT_GT(visited, 1u);
  }
}

TEST(PosteriorOracle, LabelPermutationEquivariant) {
  PosteriorOracle oracle(2, 4);
  const std::vector<int> a{0, 3, 0, 1, 2}, b{0, 1, 0, 0, 1};
  const auto base = oracle.counts(a, b);
  const std::vector<int> perm{0, 3, 1, 4, 2};  // label k -> perm[k]
  std::vector<int> pa(5), pb(5);
  for (int k = 1; k <= 4; ++k) {
    pa[perm[k]] = a[k];
    pb[perm[k]] = b[k];
  }
  const auto moved = oracle.counts(pa, pb);
  EXPECT_EQ(moved.total, base.total);
  for (int k = 1; k <= 4; ++k) EXPECT_EQ(moved.next[perm[k]], base.next[k]);
}

TEST(PosteriorOracle, ImpossibleTalliesHaveNoMass) {
  PosteriorOracle oracle(1, 3);
  EXPECT_EQ(oracle.counts(std::vector<int>{0, 2, 0, 0}, std::vector<int>{0, 2, 0, 0}).total, 0u);
  // Three misses on label 1 leave no room: each of the 3 cards would have to
  // avoid label 1 in the first three positions, but label 1 must appear somewhere.
  EXPECT_EQ(oracle.counts(std::vector<int>{0, 3, 0, 0}, std::vector<int>{0, 0, 0, 0}).total, 0u);
}
