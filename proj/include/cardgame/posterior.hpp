#pragma once

// Exact conditional distribution of the next card given what a partial-feedback
// Guesser has seen. Two independent routes:
//
//   * count_consistent_bruteforce: filters every explicit multiset permutation
//     of the deck against the history. Ground truth, exponential.
//   * PosteriorOracle: counts consistent orderings from the per-label tallies
//     (a_k, b_k) with a dynamic program over remaining compositions. Past
//     positions of a uniform deck are exchangeable, so only how many hits and
//     misses each label collected matters, not where they happened.
//
// Tests check the two agree on every reachable history of several small decks.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <mutex>
#include <numeric>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cardgame/errors.hpp"
#include "cardgame/game.hpp"

namespace cardgame {

inline constexpr int kDefaultOracleLimit = 12;
inline constexpr int kMaxOracleLimit = 20;  // 20! still fits in 64 bits

// Enumeration cap on m*n; CARDGAME_ORACLE_LIMIT overrides the default.
inline int oracle_limit() {
  if (const char* env = std::getenv("CARDGAME_ORACLE_LIMIT")) {
    char* end = nullptr;
    const long value = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && value >= 1) return static_cast<int>(std::min<long>(value, kMaxOracleLimit));
  }
  return kDefaultOracleLimit;
}

inline void require_within_limit(int mn, int limit) {
  if (mn > limit) throw OracleLimitExceeded(mn, limit);
}

// Guesser-visible partial-feedback history: own guesses and correctness bits.
struct History {
  std::vector<Label> g;
  std::vector<std::uint8_t> y;

  int rounds() const noexcept { return static_cast<int>(g.size()); }
  void push(Label guess, bool correct) {
    g.push_back(guess);
    y.push_back(correct ? 1 : 0);
  }
  void pop() {
    g.pop_back();
    y.pop_back();
  }
};

// Number of deck orderings consistent with a history, split by the label of
// the next card. Label-indexed (slot 0 unused).
struct PosteriorCounts {
  std::vector<std::uint64_t> next;
  std::uint64_t total = 0;

  double probability(Label k) const {
    return total == 0 ? 0.0 : static_cast<double>(next[k]) / static_cast<double>(total);
  }
  std::vector<double> distribution() const {
    std::vector<double> p(next.size(), 0.0);
    for (std::size_t k = 1; k < next.size(); ++k) p[k] = probability(static_cast<Label>(k));
    return p;
  }
};

// All distinct orderings of m copies of labels 1..n, lexicographic.
inline std::vector<std::vector<Label>> enumerate_orderings(int m, int n, int limit = oracle_limit()) {
  require_within_limit(m * n, limit);
  std::vector<Label> order;
  for (Label k = 1; k <= n; ++k) order.insert(order.end(), m, k);
  std::vector<std::vector<Label>> all;
  do {
    all.push_back(order);
  } while (std::next_permutation(order.begin(), order.end()));
  return all;
}

inline bool consistent(std::span<const Label> order, const History& h) {
  for (int i = 0; i < h.rounds(); ++i)
    if ((order[i] == h.g[i]) != (h.y[i] != 0)) return false;
  return true;
}

inline PosteriorCounts count_consistent_bruteforce(const GameConfig& config, const History& h,
                                                   int limit = oracle_limit()) {
  config.validate();
  require_within_limit(config.rounds(), limit);
  if (h.rounds() >= config.rounds()) throw IndexOutOfRange("history already covers every round");
  for (Label k : h.g) check_label(k, config.n);
  PosteriorCounts counts{std::vector<std::uint64_t>(config.n + 1, 0), 0};
  for (const auto& order : enumerate_orderings(config.m, config.n, limit)) {
    if (!consistent(order, h)) continue;
    ++counts.total;
    ++counts.next[order[h.rounds()]];
  }
  return counts;
}

// Exact distribution of the round-t card given (g_<t, y_<t), by explicit
// enumeration of deck orderings. Label-indexed; sums to 1.
inline std::vector<double> next_card_distribution(const GameConfig& config, const History& h,
                                                  int limit = oracle_limit()) {
  const auto counts = count_consistent_bruteforce(config, h, limit);
  if (counts.total == 0) throw InfeasibleHistory("no deck ordering is consistent with the history");
  return counts.distribution();
}

// Multiset of per-label (a, b) tallies in sorted order. Equal canonical states
// have label-permuted posteriors.
using CanonicalState = std::vector<std::pair<int, int>>;

inline std::string state_key(const CanonicalState& state) {
  std::string key;
  key.reserve(state.size() * 2);
  for (auto [a, b] : state) {
    key.push_back(static_cast<char>(a));
    key.push_back(static_cast<char>(b));
  }
  return key;
}

// Posterior counts from tallies, memoized on the canonical state. Thread-safe;
// concurrent inserts of the same key store identical values.
class PosteriorOracle {
 public:
  PosteriorOracle(int m, int n, int limit = oracle_limit()) : m_(m), n_(n), base_(m + 1) {
    GameConfig{m, n}.validate();
    require_within_limit(m * n, limit);
    states_ = 1;
    for (int i = 0; i < n; ++i) states_ *= static_cast<std::size_t>(base_);
    factorial_.assign(m * n + 1, 1);
    for (int i = 1; i <= m * n; ++i) factorial_[i] = factorial_[i - 1] * static_cast<std::uint64_t>(i);
  }

  int m() const noexcept { return m_; }
  int n() const noexcept { return n_; }

  // Counts for the state at position j of a canonical state (index-aligned).
  std::vector<std::uint64_t> canonical_next(const CanonicalState& state, std::uint64_t* total) const {
    const std::string key = state_key(state);
    {
      std::lock_guard lock(mutex_);
      if (auto it = cache_.find(key); it != cache_.end()) {
        if (total) *total = it->second.total;
        return it->second.next;
      }
    }
    Entry entry = compute(state);
    std::lock_guard lock(mutex_);
    auto [it, inserted] = cache_.emplace(key, std::move(entry));
    if (total) *total = it->second.total;
    return it->second.next;
  }

  // Label-indexed tallies (slot 0 unused).
  PosteriorCounts counts(std::span<const int> a, std::span<const int> b) const {
    std::vector<int> perm(n_);
    std::iota(perm.begin(), perm.end(), 1);
    std::stable_sort(perm.begin(), perm.end(), [&](int i, int j) {
      return std::pair(a[i], b[i]) < std::pair(a[j], b[j]);
    });
    CanonicalState state(n_);
    for (int i = 0; i < n_; ++i) state[i] = {a[perm[i]], b[perm[i]]};
    PosteriorCounts out{std::vector<std::uint64_t>(n_ + 1, 0), 0};
    const auto canonical = canonical_next(state, &out.total);
    for (int i = 0; i < n_; ++i) out.next[perm[i]] = canonical[i];
    return out;
  }

  PosteriorCounts counts(const History& h) const {
    std::vector<int> a(n_ + 1, 0), b(n_ + 1, 0);
    for (int i = 0; i < h.rounds(); ++i) {
      check_label(h.g[i], n_);
      ++a[h.g[i]];
      b[h.g[i]] += h.y[i];
    }
    return counts(a, b);
  }

  std::size_t cache_size() const {
    std::lock_guard lock(mutex_);
    return cache_.size();
  }

  static CanonicalState canonicalize(CanonicalState state) {
    std::sort(state.begin(), state.end());
    return state;
  }

 private:
  struct Entry {
    std::vector<std::uint64_t> next;
    std::uint64_t total = 0;
  };

  // Orderings of the remaining composition r (length L) as a multinomial.
  std::uint64_t arrangements(const std::vector<int>& r, int length) const {
    std::uint64_t value = factorial_[length];
    for (int c : r) value /= factorial_[c];
    return value;
  }

  Entry compute(const CanonicalState& state) const {
    Entry entry{std::vector<std::uint64_t>(n_, 0), 0};
    int past = 0;
    std::vector<int> start(n_);
    for (int i = 0; i < n_; ++i) {
      const auto [a, b] = state[i];
      if (b < 0 || a < b || b > m_) return entry;
      start[i] = m_ - b;
      past += a;
    }
    if (past >= m_ * n_) return entry;

    std::vector<std::size_t> stride(n_, 1);
    for (int i = 1; i < n_; ++i) stride[i] = stride[i - 1] * static_cast<std::size_t>(base_);
    auto encode = [&](const std::vector<int>& r) {
      std::size_t idx = 0;
      for (int i = 0; i < n_; ++i) idx += stride[i] * static_cast<std::size_t>(r[i]);
      return idx;
    };
    auto digit = [&](std::size_t idx, int i) { return static_cast<int>((idx / stride[i]) % base_); };

    // ways[r]: fillings of the miss slots processed so far that leave r behind.
    std::vector<std::uint64_t> ways(states_, 0), next_ways(states_, 0);
    ways[encode(start)] = 1;
    for (int group = 0; group < n_; ++group) {
      const int misses = state[group].first - state[group].second;
      for (int slot = 0; slot < misses; ++slot) {
        std::fill(next_ways.begin(), next_ways.end(), 0);
        for (std::size_t idx = 0; idx < states_; ++idx) {
          if (ways[idx] == 0) continue;
          for (int label = 0; label < n_; ++label)
            if (label != group && digit(idx, label) > 0) next_ways[idx - stride[label]] += ways[idx];
        }
        std::swap(ways, next_ways);
      }
    }

    const int length = m_ * n_ - past;
    std::vector<int> r(n_);
    for (std::size_t idx = 0; idx < states_; ++idx) {
      if (ways[idx] == 0) continue;
      int sum = 0;
      for (int i = 0; i < n_; ++i) sum += (r[i] = digit(idx, i));
      if (sum != length) continue;
      entry.total += ways[idx] * arrangements(r, length);
      for (int i = 0; i < n_; ++i) {
        if (r[i] == 0) continue;
        --r[i];
        entry.next[i] += ways[idx] * arrangements(r, length - 1);
        ++r[i];
      }
    }
    return entry;
  }

  int m_;
  int n_;
  int base_;
  std::size_t states_ = 1;
  std::vector<std::uint64_t> factorial_;
  mutable std::mutex mutex_;
  mutable std::unordered_map<std::string, Entry> cache_;
};

}  // namespace cardgame
