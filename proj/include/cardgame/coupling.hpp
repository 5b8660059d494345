#pragma once

// The capped coupled Boolean process z_1..z_mn built alongside a game, its
// per-label counts c(k,t), the penalty f and the per-label process
//   X_{k,t} = f(c(k,t) - a(k,t)/n) - 3 c(k,t) - 3 a(k,t)/n,
// together with checks of the properties the construction promises.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <numeric>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "cardgame/errors.hpp"
#include "cardgame/game.hpp"
#include "cardgame/parallel.hpp"
#include "cardgame/posterior.hpp"
#include "cardgame/rng.hpp"
#include "cardgame/stats.hpp"
#include "cardgame/strategy.hpp"

namespace cardgame {

inline constexpr int kExactTreeLimit = 8;

inline std::uint64_t isqrt(std::uint64_t x) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(x)));
  while (r * r > x) --r;
  while ((r + 1) * (r + 1) <= x) ++r;
  return r;
}

// Y = floor(sqrt(m) * n / 6) in integers: floor(sqrt(m n^2) / 6) equals
// floor(isqrt(m n^2) / 6).
inline int y_cap(int m, int n) {
  if (m < 1 || n < 1) throw InvalidConfig("m and n must both be at least 1");
  const auto mn2 = static_cast<std::uint64_t>(m) * static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(n);
  return static_cast<int>(isqrt(mn2) / 6);
}

// Zero on (0, Y/n), quadratic outside.
inline double f_penalty(double x, int Y, int n) {
  const double edge = static_cast<double>(Y) / n;
  if (x <= 0) return x * x;
  if (x < edge) return 0.0;
  return (x - edge) * (x - edge);
}

// f(x) >= max{0, x^2/2 - Y^2/n^2}.
inline bool f_lower_bound_check(double x, int Y, int n) {
  const double edge = static_cast<double>(Y) / n;
  return f_penalty(x, Y, n) >= std::max(0.0, x * x / 2 - edge * edge) - 1e-12;
}

inline double x_value(int c, int a, int Y, int n) {
  const double shift = static_cast<double>(a) / n;
  return f_penalty(c - shift, Y, n) - 3.0 * c - 3.0 * shift;
}

struct CouplingParams {
  int m = 1;
  int n = 1;
  int Y = 0;

  static CouplingParams of(int m, int n) {
    CouplingParams params{m, n, y_cap(m, n)};
    if (params.Y > m * n) throw InvalidConfig("cap exceeds the deck size");
    return params;
  }
  int rounds() const noexcept { return m * n; }
  // z_t is forced to 0 once the guessed label has been guessed mn - Y times.
  bool capped(int a) const noexcept { return a >= m * n - Y; }
  double p(int c, int a) const noexcept { return static_cast<double>(m - c) / static_cast<double>(m * n - a - Y); }
};

// Conditional mean of z_t given (g_<=t, y_<=t, z_<t), from p_t and the exact
// q_t = P(y_t = 1 | g_<=t, y_<t):
//   p >= q:  ((1-p) y + p - q) / (1 - q)   ->  1 if y, (p-q)/(1-q) otherwise
//   p <  q:  p y / q                       ->  p/q if y, 0 otherwise
// q = 1 uses the second form (y = 1 almost surely, mean p); q = 0 falls in the
// first (y = 0 almost surely, mean p). The reduced forms are exact in floating
// point at y = 1, p >= q, where the long form can round below 1.
inline double coupled_mean(double p, double q, bool y) {
  if (!(p >= -1e-12 && p <= 1 + 1e-12) || !(q >= -1e-12 && q <= 1 + 1e-12))
    throw NumericalRange("coupling probabilities out of range: p=" + std::to_string(p) + " q=" + std::to_string(q));
  p = std::clamp(p, 0.0, 1.0);
  q = std::clamp(q, 0.0, 1.0);
  if (q >= 1.0) return y ? p : 0.0;
  if (p >= q) return y ? 1.0 : (p - q) / (1.0 - q);
  return y ? p / q : 0.0;
}

struct CoupledTranscript {
  Transcript base;
  CouplingParams params;
  std::vector<std::uint8_t> z;
  std::vector<double> p;       // NaN where the guessed label is capped
  std::vector<double> q;       // exact P(y_t = 1 | g_<=t, y_<t)
  std::vector<double> z_mean;  // mean used to draw z_t
  std::vector<std::uint8_t> w;

  int rounds() const noexcept { return static_cast<int>(base.size()); }
  // E(z_t | g_<=t, z_<t): p_t, or 0 where capped.
  double z_conditional_mean(int t) const {
    const double v = p.at(t - 1);
    return std::isnan(v) ? 0.0 : v;
  }
};

// c(k,t) for every label at round t (label-indexed).
inline std::vector<int> z_counts_at(const CoupledTranscript& ct, int t) {
  std::vector<int> c(ct.params.n + 1, 0);
  for (int i = 0; i < t - 1; ++i) c[ct.base.g[i]] += ct.z[i];
  return c;
}

// Plays one game and draws z alongside it. Deck, strategy and z draws use
// independent streams under config.seed.
inline CoupledTranscript couple_game(const GameConfig& config, Strategy& strategy, const PosteriorOracle& oracle) {
  config.validate();
  if (config.feedback != FeedbackMode::Partial) throw WrongFeedbackMode("the coupling is defined for partial feedback");
  if (oracle.m() != config.m || oracle.n() != config.n) throw InvalidConfig("oracle built for a different deck");
  const auto params = CouplingParams::of(config.m, config.n);
  const int mn = config.rounds();

  Rng deck_rng(stream_seed(config.seed, Stream::Deck));
  Rng z_rng(stream_seed(config.seed, Stream::Coupling));
  DeckState deck = DeckState::shuffled(config, deck_rng);
  strategy.reset(rules_of(config), Rng(stream_seed(config.seed, Stream::Strategy)));

  CoupledTranscript ct{{config, {}, {}}, params, {}, {}, {}, {}, {}};
  std::vector<int> a(config.n + 1, 0), b(config.n + 1, 0), c(config.n + 1, 0);
  for (int t = 1; t <= mn; ++t) {
    const Label g = strategy.next_guess();
    check_label(g, config.n);
    const auto counts = oracle.counts(a, b);
    const double q = counts.probability(g);
    const bool y = deck.play_round(g).correct;

    double p = std::numeric_limits<double>::quiet_NaN();
    double mean = 0.0;
    if (!params.capped(a[g])) {
      p = params.p(c[g], a[g]);
      mean = coupled_mean(p, q, y);
    }
    const bool z = mean > 0.0 && bernoulli(z_rng, mean);

    ct.base.g.push_back(g);
    ct.base.y.push_back(y);
    ct.z.push_back(z);
    ct.p.push_back(p);
    ct.q.push_back(q);
    ct.z_mean.push_back(mean);
    ct.w.push_back(2 * a[g] <= mn);

    ++a[g];
    b[g] += y;
    c[g] += z;
    strategy.observe({g, y, std::nullopt});
  }
  return ct;
}

// m - max{mn - a(k,t) - Y, 0} <= c(k,t) <= m for every k and 1 <= t <= mn+1.
inline bool check_property_a(const CoupledTranscript& ct) {
  const auto& pr = ct.params;
  std::vector<int> a(pr.n + 1, 0), c(pr.n + 1, 0);
  for (int t = 1; t <= ct.rounds() + 1; ++t) {
    for (Label k = 1; k <= pr.n; ++k) {
      const int lower = pr.m - std::max(pr.m * pr.n - a[k] - pr.Y, 0);
      if (c[k] < lower || c[k] > pr.m) return false;
    }
    if (t <= ct.rounds()) {
      ++a[ct.base.g[t - 1]];
      c[ct.base.g[t - 1]] += ct.z[t - 1];
    }
  }
  return true;
}

// Wherever E(y_t | g_<=t, y_<t) <= E(z_t | g_<=t, z_<t), y_t <= z_t. q_t is
// recomputed from the oracle rather than read back from the transcript.
inline bool check_property_d(const CoupledTranscript& ct, const PosteriorOracle& oracle) {
  const int n = ct.params.n;
  std::vector<int> a(n + 1, 0), b(n + 1, 0);
  for (int t = 1; t <= ct.rounds(); ++t) {
    const Label g = ct.base.g[t - 1];
    const double q = oracle.counts(a, b).probability(g);
    if (q <= ct.z_conditional_mean(t) && ct.base.y[t - 1] > ct.z[t - 1]) return false;
    ++a[g];
    b[g] += ct.base.y[t - 1];
  }
  return true;
}

// (b(k,t) <= c(k,t)) or (sum y > Y), for every k and t.
inline bool compare_b_c(const CoupledTranscript& ct) {
  const int total = std::accumulate(ct.base.y.begin(), ct.base.y.end(), 0);
  if (total > ct.params.Y) return true;
  const int n = ct.params.n;
  std::vector<int> b(n + 1, 0), c(n + 1, 0);
  for (int t = 1; t <= ct.rounds(); ++t) {
    const Label g = ct.base.g[t - 1];
    b[g] += ct.base.y[t - 1];
    c[g] += ct.z[t - 1];
    if (b[g] > c[g]) return false;
  }
  return true;
}

enum class TauVariant {
  FirstZeroW,          // least t with w_t = 0, whatever was guessed
  FirstZeroWForLabel,  // least t with w_t = 0 and g_t = k
};

inline int tau_stop(const CoupledTranscript& ct, Label k, TauVariant variant = TauVariant::FirstZeroW) {
  for (int t = 1; t <= ct.rounds(); ++t) {
    if (ct.w[t - 1]) continue;
    if (variant == TauVariant::FirstZeroW || ct.base.g[t - 1] == k) return t;
  }
  return ct.rounds() + 1;
}

// X_{k,t} along a coupled transcript.
inline double x_at(const CoupledTranscript& ct, Label k, int t) {
  int a = 0, c = 0;
  for (int i = 0; i < t - 1; ++i) {
    if (ct.base.g[i] != k) continue;
    ++a;
    c += ct.z[i];
  }
  return x_value(c, a, ct.params.Y, ct.params.n);
}

struct DriftReport {
  int m = 0;
  int n = 0;
  std::string strategy;
  std::uint64_t nodes = 0;
  std::uint64_t classes = 0;        // distinct (g_<=t, z_<t)
  double max_drift = -std::numeric_limits<double>::infinity();
  double max_unguessed_drift = 0;   // |drift| for labels other than g_t
  double max_z_mean_error = 0;      // |E(z_t | g_<=t, z_<t) - p_t|
  bool pass = false;
};

inline nlohmann::json to_json(const DriftReport& r) {
  return {{"m", r.m},
          {"n", r.n},
          {"strategy", r.strategy},
          {"nodes", r.nodes},
          {"classes", r.classes},
          {"max_drift", r.max_drift},
          {"max_unguessed_drift", r.max_unguessed_drift},
          {"max_z_mean_error", r.max_z_mean_error},
          {"pass", r.pass}};
}

// Exact evaluation of E(X_{k,t+1} | g_<=t, z_<t) - X_{k,t} over the full tree of
// (y_t, z_t) outcomes, for every k, grouping tree nodes by (g_<=t, z_<t).
// Passes iff the largest drift is at most 1e-9.
inline DriftReport drift_step_check(const GameConfig& config, const Strategy& prototype,
                                    const PosteriorOracle& oracle, int limit = kExactTreeLimit) {
  config.validate();
  require_within_limit(config.rounds(), limit);
  if (!prototype.deterministic()) throw RandomizedStrategyUnsupported(prototype.name() + " is randomized");
  const auto params = CouplingParams::of(config.m, config.n);
  const int n = config.n, mn = config.rounds();

  struct ClassSums {
    double weight = 0;
    double z_weight = 0;
    std::vector<double> step;    // weighted E(X_{k,t+1} - X_{k,t} | node), label-indexed
    std::vector<double> x;       // X_{k,t}, determined by the class
    double p = 0;
  };
  std::map<std::string, ClassSums> classes;
  DriftReport report;
  report.m = config.m;
  report.n = n;
  report.strategy = prototype.name();

  std::vector<int> a(n + 1, 0), b(n + 1, 0), c(n + 1, 0);
  std::string key;  // g_1 z_1 g_2 z_2 ... g_t

  std::function<void(Strategy&, int, double)> walk = [&](Strategy& strategy, int t, double weight) {
    if (t > mn) return;
    ++report.nodes;
    const Label g = strategy.next_guess();
    check_label(g, n);
    const double q = oracle.counts(a, b).probability(g);
    const bool capped = params.capped(a[g]);
    const double p = capped ? 0.0 : params.p(c[g], a[g]);

    key.push_back(static_cast<char>(g));
    auto& sums = classes[key];
    if (sums.step.empty()) {
      sums.step.assign(n + 1, 0.0);
      sums.x.assign(n + 1, 0.0);
      for (Label k = 1; k <= n; ++k) sums.x[k] = x_value(c[k], a[k], params.Y, n);
      sums.p = p;
    }
    sums.weight += weight;

    for (int y = 0; y <= 1; ++y) {
      const double py = y ? q : 1.0 - q;
      if (py <= 0) continue;
      const double mean = capped ? 0.0 : coupled_mean(p, q, y == 1);
      for (int z = 0; z <= 1; ++z) {
        const double pz = z ? mean : 1.0 - mean;
        if (pz <= 0) continue;
        const double w = weight * py * pz;
        sums.z_weight += w * z;
        for (Label k = 1; k <= n; ++k)
          sums.step[k] += w * (k == g ? x_value(c[k] + z, a[k] + 1, params.Y, n) - sums.x[k] : 0.0);
        if (t == mn) continue;
        ++a[g];
        b[g] += y;
        c[g] += z;
        key.push_back(static_cast<char>('0' + z));
        auto branch = strategy.clone();
        branch->observe({g, y == 1, std::nullopt});
        walk(*branch, t + 1, w);
        key.pop_back();
        --a[g];
        b[g] -= y;
        c[g] -= z;
      }
    }
    key.pop_back();
  };

  auto root = prototype.clone();
  root->reset(rules_of(config), Rng{});
  walk(*root, 1, 1.0);

  for (const auto& [k_, sums] : classes) {
    const Label g = static_cast<Label>(k_.back());
    for (Label k = 1; k <= n; ++k) {
      const double drift = sums.step[k] / sums.weight;
      report.max_drift = std::max(report.max_drift, drift);
      if (k != g) report.max_unguessed_drift = std::max(report.max_unguessed_drift, std::abs(drift));
    }
    report.max_z_mean_error = std::max(report.max_z_mean_error, std::abs(sums.z_weight / sums.weight - sums.p));
  }
  report.classes = classes.size();
  report.pass = report.max_drift <= 1e-9;
  return report;
}

// Monte Carlo diagnostics of the coupled process.
struct CouplingDiagnostics {
  int m = 0;
  int n = 0;
  int Y = 0;
  std::string strategy;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::uint64_t min_class_samples = 1000;

  std::uint64_t prop_a_failures = 0;
  std::uint64_t prop_d_failures = 0;
  std::uint64_t b_le_c_failures = 0;
  std::uint64_t over_cap = 0;  // trajectories with sum y > Y

  double prop_c_worst_z = 0;   // max |mean z - p| / sigma over large (g_<=t, z_<t) classes
  std::uint64_t prop_c_classes = 0;
  bool prop_c_exact_ok = true;  // classes with p in {0, 1} match exactly
  double prop_b_worst_z = 0;    // max |corr(z_t, y_t')| sqrt(N) over large (g_<=t, y_<=t) classes
  std::uint64_t prop_b_pairs = 0;

  RunningStats sum_z;
  RunningStats sum_y;
  // Per label k: X_{k, tau_k} for both stopping-time readings, and X_{k, mn+1}.
  std::vector<RunningStats> x_tau;
  std::vector<RunningStats> x_tau_label;
  std::vector<RunningStats> x_final;

  bool prop_a_pass() const { return prop_a_failures == 0; }
  bool prop_d_pass() const { return prop_d_failures == 0; }
  bool b_le_c_pass() const { return b_le_c_failures == 0; }
  bool prop_c_pass() const { return prop_c_exact_ok && prop_c_worst_z <= 5.0; }
  bool prop_b_pass() const { return prop_b_worst_z <= 5.0; }

  // max over k of mean / std_error for E(X_{k,tau_k}); <= 3 is consistent with <= 0.
  double optional_stopping_worst_z(const std::vector<RunningStats>& per_label) const {
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 1; k < per_label.size(); ++k) {
      const auto& s = per_label[k];
      const double se = s.std_error();
      worst = std::max(worst, se > 0 ? s.mean() / se : (s.mean() > 1e-12 ? 1e300 : -1e300));
    }
    return worst;
  }
};

namespace detail {

struct ZClass {
  std::uint64_t count = 0;
  std::uint64_t z_sum = 0;
  double p = 0;
};

struct YClass {
  std::uint64_t count = 0;
  std::uint64_t z_sum = 0;
  std::vector<std::uint64_t> y_sum;   // by later round t'
  std::vector<std::uint64_t> zy_sum;
};

struct CouplingPartial {
  std::uint64_t prop_a_failures = 0, prop_d_failures = 0, b_le_c_failures = 0, over_cap = 0;
  std::unordered_map<std::string, ZClass> z_classes;
  std::unordered_map<std::string, YClass> y_classes;
  RunningStats sum_z, sum_y;
  std::vector<RunningStats> x_tau, x_tau_label, x_final;
};

}  // namespace detail

inline CouplingDiagnostics run_coupling_diagnostics(int m, int n, const StrategySpec& spec, std::uint64_t trials,
                                                    std::uint64_t seed, unsigned jobs = default_jobs(),
                                                    std::uint64_t min_class_samples = 1000) {
  const GameConfig shape{m, n, FeedbackMode::Partial, seed};
  shape.validate();
  const auto oracle = std::make_shared<const PosteriorOracle>(m, n);
  const auto prototype = make_strategy(spec, rules_of(shape));
  const auto params = CouplingParams::of(m, n);
  const int mn = m * n;

  auto partials = run_chunks(trials, jobs, [&](std::uint64_t begin, std::uint64_t end) {
    detail::CouplingPartial part;
    part.x_tau.resize(n + 1);
    part.x_tau_label.resize(n + 1);
    part.x_final.resize(n + 1);
    for (std::uint64_t i = begin; i < end; ++i) {
      const GameConfig config{m, n, FeedbackMode::Partial, derive_seed(seed, i)};
      auto strategy = prototype->clone();
      const auto ct = couple_game(config, *strategy, *oracle);
      part.prop_a_failures += !check_property_a(ct);
      part.prop_d_failures += !check_property_d(ct, *oracle);
      part.b_le_c_failures += !compare_b_c(ct);
      const int ys = std::accumulate(ct.base.y.begin(), ct.base.y.end(), 0);
      const int zs = std::accumulate(ct.z.begin(), ct.z.end(), 0);
      part.over_cap += ys > params.Y;
      part.sum_y.add(ys);
      part.sum_z.add(zs);
      for (Label k = 1; k <= n; ++k) {
        part.x_tau[k].add(x_at(ct, k, tau_stop(ct, k, TauVariant::FirstZeroW)));
        part.x_tau_label[k].add(x_at(ct, k, tau_stop(ct, k, TauVariant::FirstZeroWForLabel)));
        part.x_final[k].add(x_at(ct, k, mn + 1));
      }

      std::string zkey, ykey;
      for (int t = 1; t <= mn; ++t) {
        const char g = static_cast<char>(ct.base.g[t - 1]);
        zkey.push_back(g);
        auto& zc = part.z_classes[zkey];
        ++zc.count;
        zc.z_sum += ct.z[t - 1];
        zc.p = ct.z_conditional_mean(t);
        zkey.push_back(static_cast<char>('0' + ct.z[t - 1]));

        ykey.push_back(g);
        ykey.push_back(static_cast<char>('0' + ct.base.y[t - 1]));
        auto& yc = part.y_classes[ykey];
        if (yc.y_sum.empty()) {
          yc.y_sum.assign(mn + 1, 0);
          yc.zy_sum.assign(mn + 1, 0);
        }
        ++yc.count;
        yc.z_sum += ct.z[t - 1];
        for (int later = t + 1; later <= mn; ++later) {
          yc.y_sum[later] += ct.base.y[later - 1];
          yc.zy_sum[later] += ct.z[t - 1] & ct.base.y[later - 1];
        }
      }
    }
    return part;
  });

  CouplingDiagnostics d;
  d.m = m;
  d.n = n;
  d.Y = params.Y;
  d.strategy = to_string(spec);
  d.trials = trials;
  d.seed = seed;
  d.min_class_samples = min_class_samples;
  d.x_tau.resize(n + 1);
  d.x_tau_label.resize(n + 1);
  d.x_final.resize(n + 1);
  std::map<std::string, detail::ZClass> z_classes;
  std::map<std::string, detail::YClass> y_classes;
  for (auto& part : partials) {
    d.prop_a_failures += part.prop_a_failures;
    d.prop_d_failures += part.prop_d_failures;
    d.b_le_c_failures += part.b_le_c_failures;
    d.over_cap += part.over_cap;
    d.sum_z.merge(part.sum_z);
    d.sum_y.merge(part.sum_y);
    for (Label k = 1; k <= n; ++k) {
      d.x_tau[k].merge(part.x_tau[k]);
      d.x_tau_label[k].merge(part.x_tau_label[k]);
      d.x_final[k].merge(part.x_final[k]);
    }
    for (auto& [key, zc] : part.z_classes) {
      auto& into = z_classes[key];
      into.count += zc.count;
      into.z_sum += zc.z_sum;
      into.p = zc.p;
    }
    for (auto& [key, yc] : part.y_classes) {
      auto& into = y_classes[key];
      if (into.y_sum.empty()) {
        into.y_sum.assign(mn + 1, 0);
        into.zy_sum.assign(mn + 1, 0);
      }
      into.count += yc.count;
      into.z_sum += yc.z_sum;
      for (int t = 0; t <= mn; ++t) {
        into.y_sum[t] += yc.y_sum[t];
        into.zy_sum[t] += yc.zy_sum[t];
      }
    }
  }

  for (const auto& [key, zc] : z_classes) {
    if (zc.count < min_class_samples) continue;
    ++d.prop_c_classes;
    const double mean = static_cast<double>(zc.z_sum) / static_cast<double>(zc.count);
    const double var = zc.p * (1 - zc.p);
    if (var <= 0) {
      if (std::abs(mean - zc.p) > 0) d.prop_c_exact_ok = false;
      continue;
    }
    d.prop_c_worst_z = std::max(d.prop_c_worst_z, std::abs(mean - zc.p) / std::sqrt(var / static_cast<double>(zc.count)));
  }
  for (const auto& [key, yc] : y_classes) {
    if (yc.count < min_class_samples) continue;
    const int t = static_cast<int>(key.size() / 2);
    const double N = static_cast<double>(yc.count);
    const double mz = static_cast<double>(yc.z_sum) / N;
    for (int later = t + 1; later <= mn; ++later) {
      const double my = static_cast<double>(yc.y_sum[later]) / N;
      const double var = mz * (1 - mz) * my * (1 - my);
      if (var <= 0) continue;  // one side is constant in this class
      ++d.prop_b_pairs;
      const double cov = static_cast<double>(yc.zy_sum[later]) / N - mz * my;
      d.prop_b_worst_z = std::max(d.prop_b_worst_z, std::abs(cov) / std::sqrt(var) * std::sqrt(N));
    }
  }
  return d;
}

inline nlohmann::json to_json(const CouplingDiagnostics& d) {
  return {{"config", {{"m", d.m}, {"n", d.n}, {"Y", d.Y}, {"strategy", d.strategy}, {"seed", d.seed}}},
          {"trials", d.trials},
          {"prop_a_pass", d.prop_a_pass()},
          {"prop_b_pass", d.prop_b_pass()},
          {"prop_b_worst_z", d.prop_b_worst_z},
          {"prop_b_pairs", d.prop_b_pairs},
          {"prop_c_worst_z", d.prop_c_worst_z},
          {"prop_c_classes", d.prop_c_classes},
          {"prop_c_pass", d.prop_c_pass()},
          {"prop_d_pass", d.prop_d_pass()},
          {"lemma26_pass", d.b_le_c_pass()},
          {"over_cap", d.over_cap},
          {"mean_sum_z", d.sum_z.mean()},
          {"sum_z_std_error", d.sum_z.std_error()},
          {"mean_sum_y", d.sum_y.mean()},
          {"optional_stopping_worst_z", d.optional_stopping_worst_z(d.x_tau)},
          {"optional_stopping_label_worst_z", d.optional_stopping_worst_z(d.x_tau_label)}};
}

}  // namespace cardgame
