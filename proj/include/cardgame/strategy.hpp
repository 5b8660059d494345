#pragma once

#include <algorithm>
#include <memory>
#include <optional>
#include <queue>
#include <string>
#include <string_view>
#include <vector>

#include "cardgame/errors.hpp"
#include "cardgame/game.hpp"
#include "cardgame/posterior.hpp"
#include "cardgame/rng.hpp"

namespace cardgame {

// Everything a Guesser may know before the first card.
struct GameRules {
  int m = 1;
  int n = 1;
  FeedbackMode feedback = FeedbackMode::Partial;

  int rounds() const noexcept { return m * n; }
};

inline GameRules rules_of(const GameConfig& config) { return {config.m, config.n, config.feedback}; }

// What the engine reports back after a round. `revealed` is only ever set under
// complete feedback.
struct Observation {
  Label guess = 1;
  bool correct = false;
  std::optional<Label> revealed;
};

// A Guesser. Instances are single-game and stateful: reset() before every game,
// then alternate next_guess() / observe().
class Strategy {
 public:
  virtual ~Strategy() = default;

  virtual void reset(const GameRules& rules, Rng rng) = 0;
  virtual Label next_guess() = 0;
  virtual void observe(const Observation& obs) = 0;
  virtual std::unique_ptr<Strategy> clone() const = 0;
  virtual std::string name() const = 0;

  // Deterministic strategies are a pure function of the visible history.
  virtual bool deterministic() const { return true; }
};

// Shared bookkeeping of a(k,t), b(k,t) and the running payoff.
class TallyingStrategy : public Strategy {
 public:
  void reset(const GameRules& rules, Rng) override {
    rules_ = rules;
    a_.assign(rules.n + 1, 0);
    b_.assign(rules.n + 1, 0);
    hits_ = 0;
  }

  void observe(const Observation& obs) override {
    ++a_[obs.guess];
    if (obs.correct) {
      ++b_[obs.guess];
      ++hits_;
    }
  }

 protected:
  GameRules rules_;
  std::vector<int> a_;
  std::vector<int> b_;
  int hits_ = 0;
};

class FixedLabel final : public Strategy {
 public:
  explicit FixedLabel(Label label) : label_(label) {}

  void reset(const GameRules& rules, Rng) override { check_label(label_, rules.n); }
  Label next_guess() override { return label_; }
  void observe(const Observation&) override {}
  std::unique_ptr<Strategy> clone() const override { return std::make_unique<FixedLabel>(*this); }
  std::string name() const override { return "fixed:" + std::to_string(label_); }

 private:
  Label label_;
};

// Sticks with the smallest label that still has an unguessed copy.
class StickyAdvance final : public TallyingStrategy {
 public:
  void reset(const GameRules& rules, Rng rng) override {
    TallyingStrategy::reset(rules, rng);
    current_ = 1;
  }
  Label next_guess() override { return current_ <= rules_.n ? current_ : rules_.n; }
  void observe(const Observation& obs) override {
    TallyingStrategy::observe(obs);
    while (current_ <= rules_.n && b_[current_] >= rules_.m) ++current_;
  }
  std::unique_ptr<Strategy> clone() const override { return std::make_unique<StickyAdvance>(*this); }
  std::string name() const override { return "sticky"; }

 private:
  Label current_ = 1;
};

class UniformRandom final : public Strategy {
 public:
  void reset(const GameRules& rules, Rng rng) override {
    n_ = rules.n;
    rng_ = rng;
  }
  Label next_guess() override { return 1 + static_cast<Label>(uniform_below(rng_, static_cast<std::uint64_t>(n_))); }
  void observe(const Observation&) override {}
  std::unique_ptr<Strategy> clone() const override { return std::make_unique<UniformRandom>(*this); }
  std::string name() const override { return "random"; }
  bool deterministic() const override { return false; }

 private:
  int n_ = 1;
  Rng rng_;
};

// Guesses argmax_k (m - b(k,t)) / (mn - a(k,t) - sum y), over labels with a
// positive numerator and denominator; ties go to the smallest label.
//
// Scores inside one b-group only grow with a, so each group keeps a lazy
// max-heap keyed on (a, -label) and the argmax is a scan over m group tops.
class GreedyBound final : public TallyingStrategy {
 public:
  void reset(const GameRules& rules, Rng rng) override {
    TallyingStrategy::reset(rules, rng);
    groups_.assign(rules.m + 1, Heap{});
    std::vector<Entry> initial;
    initial.reserve(rules.n);
    for (Label k = 1; k <= rules.n; ++k) initial.push_back({0, k});
    groups_[0] = Heap(HeapOrder{}, std::move(initial));
  }

  Label next_guess() override {
    const long long remaining = static_cast<long long>(rules_.rounds()) - hits_;
    Label best = 0;
    long long best_num = 0, best_den = 1;
    for (int group = 0; group < rules_.m; ++group) {
      Heap& heap = groups_[group];
      while (!heap.empty() && !current(heap.top(), group)) heap.pop();
      if (heap.empty()) continue;
      const auto [a, label] = heap.top();
      const long long den = remaining - a;
      if (den <= 0) return scan();
      const long long num = rules_.m - group;
      if (best == 0 || num * best_den > best_num * den || (num * best_den == best_num * den && label < best)) {
        best = label;
        best_num = num;
        best_den = den;
      }
    }
    return best == 0 ? scan() : best;
  }

  void observe(const Observation& obs) override {
    TallyingStrategy::observe(obs);
    const Label k = obs.guess;
    if (b_[k] <= rules_.m) groups_[b_[k]].push({a_[k], k});
  }

  // Direct argmax over all labels; reference for the heap path and used near
  // the end of a game when some denominators are no longer positive. When no
  // label has both a positive numerator and denominator the bound says nothing,
  // and the guess is the smallest label with copies still unfound.
  Label scan() const {
    const long long remaining = static_cast<long long>(rules_.rounds()) - hits_;
    Label best = 0;
    long long best_num = 0, best_den = 1;
    for (Label k = 1; k <= rules_.n; ++k) {
      const long long den = remaining - a_[k];
      const long long num = rules_.m - b_[k];
      if (den <= 0 || num <= 0) continue;
      if (best == 0 || num * best_den > best_num * den) {
        best = k;
        best_num = num;
        best_den = den;
      }
    }
    if (best != 0) return best;
    for (Label k = 1; k <= rules_.n; ++k)
      if (b_[k] < rules_.m) return k;
    return 1;
  }

  std::unique_ptr<Strategy> clone() const override { return std::make_unique<GreedyBound>(*this); }
  std::string name() const override { return "greedy-bound"; }

 private:
  struct Entry {
    int a;
    Label label;
  };
  struct HeapOrder {
    bool operator()(const Entry& x, const Entry& y) const {
      return x.a != y.a ? x.a < y.a : x.label > y.label;
    }
  };
  using Heap = std::priority_queue<Entry, std::vector<Entry>, HeapOrder>;

  bool current(const Entry& e, int group) const { return b_[e.label] == group && a_[e.label] == e.a; }

  std::vector<Heap> groups_;
};

// Maximizes the exact conditional probability of a hit, from the posterior
// oracle. Only available for decks within the enumeration limit.
class ExactGreedy final : public TallyingStrategy {
 public:
  ExactGreedy() = default;
  explicit ExactGreedy(std::shared_ptr<const PosteriorOracle> oracle) : oracle_(std::move(oracle)) {}

  void reset(const GameRules& rules, Rng rng) override {
    if (!oracle_ || oracle_->m() != rules.m || oracle_->n() != rules.n)
      oracle_ = std::make_shared<const PosteriorOracle>(rules.m, rules.n);
    TallyingStrategy::reset(rules, rng);
  }

  Label next_guess() override {
    const auto counts = oracle_->counts(a_, b_);
    Label best = 1;
    for (Label k = 2; k <= rules_.n; ++k)
      if (counts.next[k] > counts.next[best]) best = k;
    return best;
  }

  std::unique_ptr<Strategy> clone() const override { return std::make_unique<ExactGreedy>(*this); }
  std::string name() const override { return "exact-greedy"; }

 private:
  std::shared_ptr<const PosteriorOracle> oracle_;
};

// Complete feedback only: guess a label with the most copies left.
class GreedyRemaining final : public Strategy {
 public:
  void reset(const GameRules& rules, Rng) override {
    if (rules.feedback != FeedbackMode::Complete)
      throw WrongFeedbackMode("greedy-remaining needs complete feedback");
    remaining_.assign(rules.n + 1, rules.m);
    remaining_[0] = -1;
  }
  Label next_guess() override {
    return static_cast<Label>(std::max_element(remaining_.begin() + 1, remaining_.end()) - remaining_.begin());
  }
  void observe(const Observation& obs) override {
    if (!obs.revealed) throw WrongFeedbackMode("greedy-remaining received no revealed card");
    --remaining_[*obs.revealed];
  }
  std::unique_ptr<Strategy> clone() const override { return std::make_unique<GreedyRemaining>(*this); }
  std::string name() const override { return "greedy-remaining"; }

 private:
  std::vector<int> remaining_;
};

enum class StrategyKind { FixedLabel, StickyAdvance, UniformRandom, GreedyBound, ExactGreedy, GreedyRemaining };

struct StrategySpec {
  StrategyKind kind = StrategyKind::StickyAdvance;
  Label label = 1;  // FixedLabel only

  bool operator==(const StrategySpec&) const = default;
};

inline std::string to_string(const StrategySpec& spec) {
  switch (spec.kind) {
    case StrategyKind::FixedLabel: return "fixed:" + std::to_string(spec.label);
    case StrategyKind::StickyAdvance: return "sticky";
    case StrategyKind::UniformRandom: return "random";
    case StrategyKind::GreedyBound: return "greedy-bound";
    case StrategyKind::ExactGreedy: return "exact-greedy";
    case StrategyKind::GreedyRemaining: return "greedy-remaining";
  }
  return "?";
}

// "fixed:K", "sticky", "random", "greedy-bound", "exact-greedy", "greedy-remaining".
inline StrategySpec parse_strategy(std::string_view text) {
  if (text == "sticky") return {StrategyKind::StickyAdvance};
  if (text == "random") return {StrategyKind::UniformRandom};
  if (text == "greedy-bound") return {StrategyKind::GreedyBound};
  if (text == "exact-greedy") return {StrategyKind::ExactGreedy};
  if (text == "greedy-remaining") return {StrategyKind::GreedyRemaining};
  if (text.starts_with("fixed:")) {
    const std::string digits(text.substr(6));
    if (!digits.empty() && digits.size() < 10 && std::all_of(digits.begin(), digits.end(), ::isdigit))
      return {StrategyKind::FixedLabel, std::stoi(digits)};
  }
  throw InvalidConfig("unknown strategy '" + std::string(text) + "'");
}

// Builds a strategy for a concrete game shape and rejects unsupported
// combinations up front (label range, enumeration limit, feedback mode).
inline std::unique_ptr<Strategy> make_strategy(const StrategySpec& spec, const GameRules& rules) {
  switch (spec.kind) {
    case StrategyKind::FixedLabel:
      check_label(spec.label, rules.n);
      return std::make_unique<FixedLabel>(spec.label);
    case StrategyKind::StickyAdvance: return std::make_unique<StickyAdvance>();
    case StrategyKind::UniformRandom: return std::make_unique<UniformRandom>();
    case StrategyKind::GreedyBound: return std::make_unique<GreedyBound>();
    case StrategyKind::ExactGreedy:
      return std::make_unique<ExactGreedy>(std::make_shared<const PosteriorOracle>(rules.m, rules.n));
    case StrategyKind::GreedyRemaining:
      if (rules.feedback != FeedbackMode::Complete)
        throw WrongFeedbackMode("greedy-remaining needs complete feedback");
      return std::make_unique<GreedyRemaining>();
  }
  throw InvalidConfig("unknown strategy kind");
}

}  // namespace cardgame
