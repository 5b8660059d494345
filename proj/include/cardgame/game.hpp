#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "cardgame/errors.hpp"
#include "cardgame/rng.hpp"

namespace cardgame {

// Labels are 1-based everywhere on the public surface.
using Label = int;

enum class FeedbackMode { Partial, Complete };

inline std::string_view to_string(FeedbackMode mode) {
  return mode == FeedbackMode::Partial ? "partial" : "complete";
}

inline FeedbackMode parse_feedback(std::string_view text) {
  if (text == "partial") return FeedbackMode::Partial;
  if (text == "complete") return FeedbackMode::Complete;
  throw InvalidConfig("unknown feedback mode '" + std::string(text) + "'");
}

struct GameConfig {
  int m = 1;  // copies of each label
  int n = 1;  // distinct labels
  FeedbackMode feedback = FeedbackMode::Partial;
  std::uint64_t seed = 0;

  int rounds() const noexcept { return m * n; }

  void validate() const {
    if (m < 1 || n < 1) throw InvalidConfig("m and n must both be at least 1");
    if (n > 65535 || static_cast<long long>(m) * n > 100'000'000LL)
      throw InvalidConfig("deck too large");
  }

  bool operator==(const GameConfig&) const = default;
};

inline void check_label(Label k, int n) {
  if (k < 1 || k > n)
    throw InvalidLabel("label " + std::to_string(k) + " outside [1, " + std::to_string(n) + "]");
}

struct RoundResult {
  bool correct = false;
  std::optional<Label> revealed;  // set only under complete feedback
};

// The shuffled deck and the draw cursor. Strategies never get a reference to
// this object; the engine hands them RoundResult values only.
class DeckState {
 public:
  DeckState() = default;

  // Uniform multiset permutation by Fisher-Yates.
  static DeckState shuffled(const GameConfig& config, Rng& rng) {
    DeckState deck;
    deck.reshuffle(config, rng);
    return deck;
  }

  // Deck with a prescribed order; used by exhaustive enumeration and tests.
  static DeckState from_order(const GameConfig& config, std::vector<Label> order) {
    config.validate();
    if (static_cast<int>(order.size()) != config.rounds())
      throw InvalidConfig("deck order has wrong length");
    std::vector<int> counts(config.n + 1, 0);
    for (Label k : order) {
      check_label(k, config.n);
      ++counts[k];
    }
    for (int k = 1; k <= config.n; ++k)
      if (counts[k] != config.m) throw InvalidConfig("deck order is not m copies of each label");
    DeckState deck;
    deck.feedback_ = config.feedback;
    deck.n_ = config.n;
    deck.order_ = std::move(order);
    return deck;
  }

  // Reuses the buffer; the hot Monte Carlo loop calls this once per game.
  void reshuffle(const GameConfig& config, Rng& rng) {
    feedback_ = config.feedback;
    n_ = config.n;
    const auto size = static_cast<std::size_t>(config.rounds());
    order_.resize(size);
    std::size_t i = 0;
    for (Label k = 1; k <= config.n; ++k)
      for (int c = 0; c < config.m; ++c) order_[i++] = k;
    for (std::size_t j = size; j > 1; --j) {
      const auto r = static_cast<std::size_t>(uniform_below(rng, j));
      std::swap(order_[j - 1], order_[r]);
    }
    cursor_ = 0;
  }

  RoundResult play_round(Label guess) {
    if (cursor_ >= order_.size()) throw DeckExhausted("no cards left in the deck");
    check_label(guess, n_);
    const Label drawn = order_[cursor_++];
    RoundResult result{drawn == guess, std::nullopt};
    if (feedback_ == FeedbackMode::Complete) result.revealed = drawn;
    return result;
  }

  std::span<const Label> order() const noexcept { return order_; }
  std::size_t cursor() const noexcept { return cursor_; }
  bool exhausted() const noexcept { return cursor_ >= order_.size(); }

  // Counts indexed by label (slot 0 unused).
  std::vector<int> remaining_counts() const {
    std::vector<int> counts(n_ + 1, 0);
    for (std::size_t i = cursor_; i < order_.size(); ++i) ++counts[order_[i]];
    return counts;
  }
  std::vector<int> drawn_counts() const {
    std::vector<int> counts(n_ + 1, 0);
    for (std::size_t i = 0; i < cursor_; ++i) ++counts[order_[i]];
    return counts;
  }

 private:
  std::vector<Label> order_;
  std::size_t cursor_ = 0;
  int n_ = 0;
  FeedbackMode feedback_ = FeedbackMode::Partial;
};

// Raw record of one game. Tallies are derived from (g, y) on demand.
struct Transcript {
  GameConfig config;
  std::vector<Label> g;
  std::vector<std::uint8_t> y;

  std::size_t size() const noexcept { return g.size(); }
  bool complete() const noexcept { return static_cast<int>(g.size()) == config.rounds(); }
};

inline int payoff(const Transcript& tr) {
  if (!tr.complete())
    throw IncompleteTranscript("transcript has " + std::to_string(tr.size()) + " of " +
                               std::to_string(tr.config.rounds()) + " rounds");
  int total = 0;
  for (auto bit : tr.y) total += bit;
  return total;
}

// a(k,t): guesses of k before round t; b(k,t): correct ones among them.
struct TallyTable {
  std::vector<int> a;  // index 0 unused
  std::vector<int> b;
  int t = 1;

  int guessed(Label k) const { return a.at(k); }
  int correct(Label k) const { return b.at(k); }
  int n() const noexcept { return static_cast<int>(a.size()) - 1; }
};

inline TallyTable tallies_at(const Transcript& tr, int t) {
  if (t < 1 || t > static_cast<int>(tr.size()) + 1)
    throw IndexOutOfRange("round index " + std::to_string(t) + " outside [1, " +
                          std::to_string(tr.size() + 1) + "]");
  TallyTable table{std::vector<int>(tr.config.n + 1, 0), std::vector<int>(tr.config.n + 1, 0), t};
  for (int i = 0; i < t - 1; ++i) {
    ++table.a[tr.g[i]];
    table.b[tr.g[i]] += tr.y[i];
  }
  return table;
}

// JSON: {"m","n","feedback","seed","g","y"}.
inline nlohmann::json to_json(const Transcript& tr) {
  nlohmann::json j;
  j["m"] = tr.config.m;
  j["n"] = tr.config.n;
  j["feedback"] = std::string(to_string(tr.config.feedback));
  j["seed"] = tr.config.seed;
  j["g"] = tr.g;
  std::vector<int> bits(tr.y.begin(), tr.y.end());
  j["y"] = bits;
  return j;
}

inline Transcript transcript_from_json(const nlohmann::json& j) {
  Transcript tr;
  tr.config.m = j.at("m").get<int>();
  tr.config.n = j.at("n").get<int>();
  tr.config.feedback = parse_feedback(j.at("feedback").get<std::string>());
  tr.config.seed = j.at("seed").get<std::uint64_t>();
  tr.config.validate();
  tr.g = j.at("g").get<std::vector<Label>>();
  for (int bit : j.at("y").get<std::vector<int>>()) {
    if (bit != 0 && bit != 1) throw InvalidConfig("y entries must be 0 or 1");
    tr.y.push_back(static_cast<std::uint8_t>(bit));
  }
  if (tr.g.size() != tr.y.size() || static_cast<int>(tr.g.size()) > tr.config.rounds())
    throw InvalidConfig("g and y must have equal length at most m*n");
  for (Label k : tr.g) check_label(k, tr.config.n);
  return tr;
}

}  // namespace cardgame
