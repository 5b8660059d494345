#pragma once

// Brute-force ground truth for small decks: the exhaustive check of the hit
// probability upper bound (m - b) / (mn - a - sum y), optimal game values, and
// exact expected payoffs of deterministic strategies.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <numeric>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "cardgame/errors.hpp"
#include "cardgame/game.hpp"
#include "cardgame/play.hpp"
#include "cardgame/posterior.hpp"
#include "cardgame/strategy.hpp"

namespace cardgame {

inline constexpr int kRawValueLimit = 8;  // the explicit history tree grows like (2n)^(mn)

struct BoundCheckReport {
  int m = 0;
  int n = 0;
  int mn_checked = 0;
  std::uint64_t histories = 0;  // reachable (g_<t, y_<t) over all t
  std::uint64_t states = 0;     // distinct tally states evaluated
  std::uint64_t checks = 0;     // (history, guess) pairs where the bound applies
  double max_slack = -std::numeric_limits<double>::infinity();  // max LHS - RHS
  bool pass = true;
};

inline nlohmann::json to_json(const BoundCheckReport& r) {
  return {{"m", r.m},
          {"n", r.n},
          {"mn_checked", r.mn_checked},
          {"histories", r.histories},
          {"states", r.states},
          {"checks", r.checks},
          {"max_slack", r.max_slack},
          {"pass", r.pass}};
}

namespace detail {

// LHS = hits/total, RHS = (m - b) / den. Exact comparison plus the slack.
inline void record_bound(BoundCheckReport& report, std::uint64_t hits, std::uint64_t total, int m, int b,
                         long long den, std::uint64_t multiplicity) {
  const auto lhs_scaled = static_cast<unsigned __int128>(hits) * static_cast<unsigned __int128>(den);
  const auto rhs_scaled = static_cast<unsigned __int128>(m - b) * total;
  const double slack = static_cast<double>(hits) / static_cast<double>(total) -
                       static_cast<double>(m - b) / static_cast<double>(den);
  report.max_slack = std::max(report.max_slack, slack);
  report.checks += multiplicity;
  if (lhs_scaled > rhs_scaled || slack > 1e-12) report.pass = false;
}

}  // namespace detail

// For every reachable partial-feedback history and every guess g with
// a(g,t) < mn - sum y: P(y_t = 1 | history, g) <= (m - b(g,t)) / (mn - a(g,t) - sum y).
// Walks tally states level by level, merged up to label permutation, carrying
// the number of raw histories that reach each state.
inline BoundCheckReport verify_hit_bound(int m, int n, int limit = oracle_limit()) {
  const int mn = m * n;
  require_within_limit(mn, limit);
  PosteriorOracle oracle(m, n, limit);
  BoundCheckReport report;
  report.m = m;
  report.n = n;
  report.mn_checked = mn;

  std::map<CanonicalState, std::uint64_t> level{{CanonicalState(n, {0, 0}), 1}};
  for (int t = 1; t <= mn; ++t) {
    std::map<CanonicalState, std::uint64_t> next_level;
    for (const auto& [state, count] : level) {
      ++report.states;
      report.histories += count;
      std::uint64_t total = 0;
      const auto hits = oracle.canonical_next(state, &total);
      if (total == 0) {
        report.pass = false;  // unreachable state reached: the walk itself is wrong
        continue;
      }
      int hit_sum = 0;
      for (auto [a, b] : state) hit_sum += b;
      for (int j = 0; j < n; ++j) {
        const auto [a, b] = state[j];
        const long long den = static_cast<long long>(mn) - a - hit_sum;
        if (den > 0) detail::record_bound(report, hits[j], total, m, b, den, count);
        if (t == mn) continue;
        if (hits[j] > 0) {
          CanonicalState child = state;
          child[j] = {a + 1, b + 1};
          next_level[PosteriorOracle::canonicalize(std::move(child))] += count;
        }
        if (hits[j] < total) {
          CanonicalState child = state;
          child[j] = {a + 1, b};
          next_level[PosteriorOracle::canonicalize(std::move(child))] += count;
        }
      }
    }
    level = std::move(next_level);
  }
  return report;
}

// Same check over raw histories with explicit deck orderings; no tallies, no
// symmetry. Exponential, for cross-checking verify_hit_bound on tiny decks.
inline BoundCheckReport verify_hit_bound_bruteforce(int m, int n, int limit = 9) {
  const int mn = m * n;
  require_within_limit(mn, limit);
  const auto orderings = enumerate_orderings(m, n, limit);
  BoundCheckReport report;
  report.m = m;
  report.n = n;
  report.mn_checked = mn;

  std::vector<int> a(n + 1, 0), b(n + 1, 0);
  int hit_sum = 0;
  std::function<void(int, const std::vector<std::size_t>&)> walk = [&](int t, const std::vector<std::size_t>& live) {
    ++report.histories;
    ++report.states;
    for (Label g = 1; g <= n; ++g) {
      std::vector<std::size_t> hit, miss;
      for (auto idx : live) (orderings[idx][t - 1] == g ? hit : miss).push_back(idx);
      const long long den = static_cast<long long>(mn) - a[g] - hit_sum;
      if (den > 0) detail::record_bound(report, hit.size(), live.size(), m, b[g], den, 1);
      if (t == mn) continue;
      ++a[g];
      if (!miss.empty()) walk(t + 1, miss);
      ++b[g];
      ++hit_sum;
      if (!hit.empty()) walk(t + 1, hit);
      --b[g];
      --hit_sum;
      --a[g];
    }
  };
  std::vector<std::size_t> all(orderings.size());
  std::iota(all.begin(), all.end(), 0);
  walk(1, all);
  return report;
}

// Value of a full-information game: state is the remaining composition.
inline double optimal_value_complete(int m, int n, int limit = oracle_limit()) {
  require_within_limit(m * n, limit);
  std::map<std::vector<int>, double> memo;
  std::function<double(std::vector<int>&, int)> value = [&](std::vector<int>& remaining, int left) -> double {
    if (left == 0) return 0.0;
    if (auto it = memo.find(remaining); it != memo.end()) return it->second;
    const int most = *std::max_element(remaining.begin(), remaining.end());
    double v = static_cast<double>(most) / left;
    for (std::size_t k = 0; k < remaining.size(); ++k) {
      if (remaining[k] == 0) continue;
      const double p = static_cast<double>(remaining[k]) / left;
      --remaining[k];
      v += p * value(remaining, left - 1);
      ++remaining[k];
    }
    memo.emplace(remaining, v);
    return v;
  };
  std::vector<int> start(n, m);
  return value(start, m * n);
}

// Optimal expected payoff under partial feedback, memoized on the tally state
// up to label permutation.
inline double optimal_value_partial(int m, int n, int limit = oracle_limit()) {
  const int mn = m * n;
  require_within_limit(mn, limit);
  PosteriorOracle oracle(m, n, std::max(limit, mn));
  std::map<CanonicalState, double> memo;
  std::function<double(const CanonicalState&, int)> value = [&](const CanonicalState& state, int t) -> double {
    if (t > mn) return 0.0;
    if (auto it = memo.find(state); it != memo.end()) return it->second;
    std::uint64_t total = 0;
    const auto hits = oracle.canonical_next(state, &total);
    double best = -1.0;
    for (int j = 0; j < n; ++j) {
      if (j > 0 && state[j] == state[j - 1]) continue;
      const auto [a, b] = state[j];
      const double p = static_cast<double>(hits[j]) / static_cast<double>(total);
      double v = 0.0;
      if (hits[j] > 0) {
        CanonicalState child = state;
        child[j] = {a + 1, b + 1};
        v += p * (1.0 + value(PosteriorOracle::canonicalize(std::move(child)), t + 1));
      }
      if (hits[j] < total) {
        CanonicalState child = state;
        child[j] = {a + 1, b};
        v += (1.0 - p) * value(PosteriorOracle::canonicalize(std::move(child)), t + 1);
      }
      best = std::max(best, v);
    }
    memo.emplace(state, best);
    return best;
  };
  return value(CanonicalState(n, {0, 0}), 1);
}

// Full game-tree recursion over raw visible histories, with the posterior
// taken from explicit deck orderings at every node. No tallies and no label
// symmetry; independent of optimal_value_partial.
inline double optimal_value_raw(int m, int n, int limit = kRawValueLimit) {
  const int mn = m * n;
  require_within_limit(mn, limit);
  const auto orderings = enumerate_orderings(m, n, limit);
  std::function<double(int, const std::vector<std::size_t>&)> value = [&](int t, const std::vector<std::size_t>& live) {
    if (t > mn) return 0.0;
    double best = -1.0;
    for (Label g = 1; g <= n; ++g) {
      std::vector<std::size_t> hit, miss;
      for (auto idx : live) (orderings[idx][t - 1] == g ? hit : miss).push_back(idx);
      const double p = static_cast<double>(hit.size()) / static_cast<double>(live.size());
      double v = 0.0;
      if (!hit.empty()) v += p * (1.0 + value(t + 1, hit));
      if (!miss.empty()) v += (1.0 - p) * value(t + 1, miss);
      best = std::max(best, v);
    }
    return best;
  };
  std::vector<std::size_t> all(orderings.size());
  std::iota(all.begin(), all.end(), 0);
  return value(1, all);
}

inline double optimal_value(const GameConfig& config, int limit = oracle_limit()) {
  config.validate();
  return config.feedback == FeedbackMode::Complete ? optimal_value_complete(config.m, config.n, limit)
                                                   : optimal_value_partial(config.m, config.n, limit);
}

// E[payoff] as the average over every deck ordering of the payoff the
// strategy collects on it.
inline double strategy_exact_value_bruteforce(const Strategy& prototype, const GameConfig& config,
                                              int limit = oracle_limit()) {
  config.validate();
  if (!prototype.deterministic()) throw RandomizedStrategyUnsupported(prototype.name() + " is randomized");
  const auto orderings = enumerate_orderings(config.m, config.n, limit);
  std::uint64_t sum = 0;
  for (const auto& order : orderings) {
    auto strategy = prototype.clone();
    sum += static_cast<std::uint64_t>(payoff(play_fixed_deck(config, *strategy, DeckState::from_order(config, order))));
  }
  return static_cast<double>(sum) / static_cast<double>(orderings.size());
}

// Same quantity by walking the tree of feedback bits: each node carries the
// number of deck orderings consistent with it, so the result is an exact
// ratio of integers. Partial feedback only; complete feedback falls back to
// the ordering enumeration.
inline double strategy_exact_value(const Strategy& prototype, const GameConfig& config, int limit = oracle_limit()) {
  config.validate();
  require_within_limit(config.rounds(), limit);
  if (!prototype.deterministic()) throw RandomizedStrategyUnsupported(prototype.name() + " is randomized");
  if (config.feedback == FeedbackMode::Complete) return strategy_exact_value_bruteforce(prototype, config, limit);

  const int m = config.m, n = config.n, mn = config.rounds();
  PosteriorOracle oracle(m, n, limit);
  std::vector<int> a(n + 1, 0), b(n + 1, 0);
  unsigned __int128 weighted = 0;
  std::uint64_t root_total = 0;

  std::function<void(Strategy&, int, int, std::uint64_t)> walk = [&](Strategy& strategy, int t, int score,
                                                                     std::uint64_t weight) {
    if (t > mn) {
      weighted += static_cast<unsigned __int128>(weight) * static_cast<unsigned>(score);
      return;
    }
    const Label g = strategy.next_guess();
    check_label(g, n);
    const auto counts = oracle.counts(a, b);
    if (t == 1) root_total = counts.total;
    const std::uint64_t hit_weight = counts.next[g];
    const std::uint64_t miss_weight = counts.total - hit_weight;
    // counts.total equals weight: both count orderings consistent with the node.
    ++a[g];
    if (miss_weight > 0) {
      auto branch = strategy.clone();
      branch->observe({g, false, std::nullopt});
      walk(*branch, t + 1, score, miss_weight);
    }
    if (hit_weight > 0) {
      ++b[g];
      auto branch = strategy.clone();
      branch->observe({g, true, std::nullopt});
      walk(*branch, t + 1, score + 1, hit_weight);
      --b[g];
    }
    --a[g];
  };

  auto root = prototype.clone();
  root->reset(rules_of(config), Rng{});
  walk(*root, 1, 0, 0);
  return static_cast<double>(weighted) / static_cast<double>(root_total);
}

}  // namespace cardgame
