#include <gtest/gtest.h>

#include <cmath>

#include "cardgame/play.hpp"
#include "cardgame/strategy.hpp"

using namespace cardgame;

namespace {

void feed(Strategy& s, const std::vector<Label>& g, const std::vector<int>& y) {
  for (std::size_t i = 0; i < g.size(); ++i) s.observe({g[i], y[i] == 1, std::nullopt});
}

std::unique_ptr<Strategy> fresh(const StrategySpec& spec, const GameRules& rules, std::uint64_t seed = 0) {
  auto s = make_strategy(spec, rules);
  s->reset(rules, Rng(seed));
  return s;
}

}  // namespace

TEST(StrategySpecParse, ParseAndPrint) {
  for (const char* text : {"fixed:1", "fixed:12", "sticky", "random", "greedy-bound", "exact-greedy", "greedy-remaining"})
    EXPECT_EQ(to_string(parse_strategy(text)), text);
  EXPECT_EQ(parse_strategy("fixed:3").label, 3);
  for (const char* bad : {"fixed:", "fixed:x", "greedy", "", "Sticky"}) EXPECT_THROW(parse_strategy(bad), InvalidConfig);
}

TEST(StrategySpecParse, ConstructionGates) {
  EXPECT_THROW(make_strategy(parse_strategy("fixed:4"), {1, 3}), InvalidLabel);
  EXPECT_THROW(make_strategy(parse_strategy("exact-greedy"), {5, 5}), OracleLimitExceeded);
  EXPECT_THROW(make_strategy(parse_strategy("greedy-remaining"), {2, 2, FeedbackMode::Partial}), WrongFeedbackMode);
  GreedyRemaining direct;
  EXPECT_THROW(direct.reset({2, 2, FeedbackMode::Partial}, Rng{}), WrongFeedbackMode);
}

TEST(FixedLabelStrategy, AlwaysSameLabel) {
  auto s = fresh(parse_strategy("fixed:2"), {3, 4});
  for (int t = 0; t < 12; ++t) {
    EXPECT_EQ(s->next_guess(), 2);
    s->observe({2, t % 3 == 0, std::nullopt});
  }
}

TEST(StickyAdvanceStrategy, AdvancesAfterMHits) {
  auto s = fresh(parse_strategy("sticky"), {1, 3});
  EXPECT_EQ(s->next_guess(), 1);
  feed(*s, {1}, {0});
  EXPECT_EQ(s->next_guess(), 1);
  feed(*s, {1}, {1});
  EXPECT_EQ(s->next_guess(), 2);
  feed(*s, {2}, {1});
  EXPECT_EQ(s->next_guess(), 3);

  auto two = fresh(parse_strategy("sticky"), {2, 2});
  feed(*two, {1, 1}, {1, 0});
  EXPECT_EQ(two->next_guess(), 1);
  feed(*two, {1}, {1});
  EXPECT_EQ(two->next_guess(), 2);
}

TEST(GreedyBoundStrategy, HandComputedScores) {
  auto s = fresh(parse_strategy("greedy-bound"), {2, 2});
  EXPECT_EQ(s->next_guess(), 1);  // all scores m/mn, tie
  // After a hit on label 1: (2-1)/(4-1-1) = 1/2 against 2/(4-0-1) = 2/3.
  feed(*s, {1}, {1});
  EXPECT_EQ(s->next_guess(), 2);

  auto miss = fresh(parse_strategy("greedy-bound"), {2, 3});
  feed(*miss, {1}, {0});
  EXPECT_EQ(miss->next_guess(), 1);  // 2/5 beats 2/6
}

TEST(GreedyBoundStrategy, HeapPathMatchesDirectScan) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const int m = 1 + static_cast<int>(seed % 5), n = 2 + static_cast<int>((seed / 5) % 9);
    const GameConfig config{m, n, FeedbackMode::Partial, seed};
    Rng deck_rng(seed);
    auto deck = DeckState::shuffled(config, deck_rng);
    GreedyBound s;
    s.reset(rules_of(config), Rng{});
    while (!deck.exhausted()) {
      const Label g = s.next_guess();
      ASSERT_EQ(g, s.scan()) << "m=" << m << " n=" << n << " seed=" << seed;
      const auto r = deck.play_round(g);
      s.observe({g, r.correct, std::nullopt});
    }
  }
}

TEST(Strategies, NeverGuessExhaustedLabelWhileOthersRemain) {
  for (const char* name : {"sticky", "greedy-bound"}) {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      const int m = 1 + static_cast<int>(seed % 3), n = 2 + static_cast<int>((seed / 3) % 6);
      const GameConfig config{m, n, FeedbackMode::Partial, seed};
      auto s = make_strategy(parse_strategy(name), rules_of(config));
      const auto tr = play_game(config, *s);
      for (int t = 1; t <= config.rounds(); ++t) {
        const auto tally = tallies_at(tr, t);
        bool open_label = false;
        for (Label k = 1; k <= n; ++k) open_label |= tally.correct(k) < m;
        if (open_label) {
          EXPECT_LT(tally.correct(tr.g[t - 1]), m) << name << " seed=" << seed << " t=" << t;
        }
      }
    }
  }
}

TEST(ExactGreedyStrategy, SmallCases) {
  auto s = fresh(parse_strategy("exact-greedy"), {1, 2});
  EXPECT_EQ(s->next_guess(), 1);
  feed(*s, {1}, {0});
  EXPECT_EQ(s->next_guess(), 1);  // the miss forces the deck [2, 1]

  auto hit = fresh(parse_strategy("exact-greedy"), {1, 2});
  feed(*hit, {1}, {1});
  EXPECT_EQ(hit->next_guess(), 2);
}

TEST(GreedyRemainingStrategy, TracksRevealedCards) {
  auto s = fresh(parse_strategy("greedy-remaining"), {2, 2, FeedbackMode::Complete});
  EXPECT_EQ(s->next_guess(), 1);
  s->observe({1, true, 1});
  EXPECT_EQ(s->next_guess(), 2);
  s->observe({2, false, 1});
  EXPECT_EQ(s->next_guess(), 2);
}

TEST(UniformRandomStrategy, RoundOneFrequencies) {
  const int trials = 100000;
  std::vector<int> hist(5, 0);
  for (int i = 0; i < trials; ++i) {
    UniformRandom s;
    s.reset({1, 4}, Rng(derive_seed(77, static_cast<std::uint64_t>(i))));
    ++hist[s.next_guess()];
  }
  const double sigma = std::sqrt(trials * 0.25 * 0.75);
  for (Label k = 1; k <= 4; ++k) EXPECT_LT(std::abs(hist[k] - trials / 4.0), 5 * sigma);
}

TEST(Strategies, ReplayReproducesNextGuess) {
  for (const char* name : {"fixed:2", "sticky", "greedy-bound", "exact-greedy", "random"}) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
      const GameConfig config{2, 3, FeedbackMode::Partial, seed};
      const auto spec = parse_strategy(name);
      auto s = make_strategy(spec, rules_of(config));
      const auto tr = play_game(config, *s);
      for (int t = 1; t <= config.rounds(); ++t) {
        auto replay = make_strategy(spec, rules_of(config));
        replay->reset(rules_of(config), Rng(stream_seed(seed, Stream::Strategy)));
        for (int i = 0; i < t - 1; ++i) {
          replay->next_guess();
          replay->observe({tr.g[i], tr.y[i] == 1, std::nullopt});
        }
        EXPECT_EQ(replay->next_guess(), tr.g[t - 1]) << name << " seed=" << seed << " t=" << t;
      }
    }
  }
}

TEST(Strategies, GreedyRemainingReplayUnderCompleteFeedback) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const GameConfig config{3, 3, FeedbackMode::Complete, seed};
    Rng deck_rng(seed);
    const auto deck = DeckState::shuffled(config, deck_rng);
    GreedyRemaining s;
    const auto tr = play_fixed_deck(config, s, deck);
    for (int t = 1; t <= config.rounds(); ++t) {
      GreedyRemaining replay;
      replay.reset(rules_of(config), Rng{});
      for (int i = 0; i < t - 1; ++i) replay.observe({tr.g[i], tr.y[i] == 1, deck.order()[i]});
      EXPECT_EQ(replay.next_guess(), tr.g[t - 1]);
    }
  }
}
