#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cardgame/coupling.hpp"
#include "cardgame/game.hpp"
#include "cardgame/parallel.hpp"
#include "cardgame/play.hpp"
#include "cardgame/stats.hpp"
#include "cardgame/strategy.hpp"

namespace cardgame {

inline constexpr double kZ95 = 1.96;

struct EstimateReport {
  GameConfig config;  // seed holds the master seed
  StrategySpec strategy;
  std::uint64_t trials = 0;
  double mean = 0;
  double variance = 0;
  double std_error = 0;
  double ci_lo = 0;
  double ci_hi = 0;
  double z = kZ95;
  int min_payoff = 0;
  int max_payoff = 0;
  std::uint64_t over_cap = 0;  // games with payoff > floor(sqrt(m) n / 6)
};

inline nlohmann::json to_json(const EstimateReport& r) {
  return {{"m", r.config.m},
          {"n", r.config.n},
          {"feedback", std::string(to_string(r.config.feedback))},
          {"seed", r.config.seed},
          {"strategy", to_string(r.strategy)},
          {"trials", r.trials},
          {"mean", r.mean},
          {"variance", r.variance},
          {"std_error", r.std_error},
          {"ci95", {r.ci_lo, r.ci_hi}},
          {"z", r.z},
          {"min_payoff", r.min_payoff},
          {"max_payoff", r.max_payoff},
          {"over_cap", r.over_cap}};
}

namespace detail {

struct PayoffPartial {
  RunningStats stats;
  int min_payoff = 0;
  int max_payoff = 0;
  std::uint64_t over_cap = 0;
};

}  // namespace detail

// Game i uses seed derive_seed(master_seed, i); chunks merge in index order,
// so the report is bit-identical for any `jobs`.
inline EstimateReport run_monte_carlo(const GameConfig& shape, const StrategySpec& spec, std::uint64_t trials,
                                      std::uint64_t master_seed, unsigned jobs = default_jobs(), double z = kZ95) {
  shape.validate();
  if (trials < 1) throw InvalidConfig("trials must be at least 1");
  const auto prototype = make_strategy(spec, rules_of(shape));
  const int cap = y_cap(shape.m, shape.n);

  auto partials = run_chunks(trials, jobs, [&](std::uint64_t begin, std::uint64_t end) {
    detail::PayoffPartial part;
    part.min_payoff = shape.rounds();
    GameRunner runner;
    auto strategy = prototype->clone();
    for (std::uint64_t i = begin; i < end; ++i) {
      GameConfig config = shape;
      config.seed = derive_seed(master_seed, i);
      const int score = runner.play(config, *strategy);
      part.stats.add(score);
      part.min_payoff = std::min(part.min_payoff, score);
      part.max_payoff = std::max(part.max_payoff, score);
      part.over_cap += score > cap;
    }
    return part;
  });

  EstimateReport report;
  report.config = shape;
  report.config.seed = master_seed;
  report.strategy = spec;
  report.trials = trials;
  report.z = z;
  report.min_payoff = shape.rounds();
  RunningStats stats;
  for (const auto& part : partials) {
    stats.merge(part.stats);
    report.min_payoff = std::min(report.min_payoff, part.min_payoff);
    report.max_payoff = std::max(report.max_payoff, part.max_payoff);
    report.over_cap += part.over_cap;
  }
  report.mean = stats.mean();
  report.variance = stats.variance();
  report.std_error = stats.std_error();
  report.ci_lo = report.mean - z * report.std_error;
  report.ci_hi = report.mean + z * report.std_error;
  return report;
}

enum class BoundKind { Upper500, Lower40, CompleteTrend, ZDeviation300, Tail72 };

inline std::string to_string(BoundKind kind) {
  switch (kind) {
    case BoundKind::Upper500: return "upper500";
    case BoundKind::Lower40: return "lower40";
    case BoundKind::CompleteTrend: return "complete_trend";
    case BoundKind::ZDeviation300: return "z_deviation300";
    case BoundKind::Tail72: return "tail72";
  }
  return "?";
}

struct BoundCheck {
  BoundKind kind = BoundKind::Upper500;
  double threshold = 0;
  double observed = 0;
  bool in_scope = true;  // outside the theorem's hypotheses the check is informational
  bool pass = false;
  std::optional<double> benchmark;
  std::string note;
};

inline BoundCheck make_check(BoundKind kind, double threshold, double observed) {
  BoundCheck c;
  c.kind = kind;
  c.threshold = threshold;
  c.observed = observed;
  return c;
}

inline nlohmann::json to_json(const BoundCheck& c) {
  nlohmann::json j = {{"kind", to_string(c.kind)},
                      {"threshold", c.threshold},
                      {"observed", c.observed},
                      {"in_scope", c.in_scope}};
  j["pass"] = c.in_scope ? nlohmann::json(c.pass) : nlohmann::json(nullptr);
  if (c.benchmark) j["benchmark"] = *c.benchmark;
  if (!c.note.empty()) j["note"] = c.note;
  return j;
}

// ci95.hi <= m + 500 sqrt(m), in scope when n >= 1200 sqrt(m).
inline BoundCheck check_upper_bound(const EstimateReport& r) {
  const int m = r.config.m, n = r.config.n;
  auto c = make_check(BoundKind::Upper500, m + 500.0 * std::sqrt(static_cast<double>(m)), r.ci_hi);
  c.in_scope = static_cast<long long>(n) * n >= 1440000LL * m;
  c.pass = c.in_scope && r.ci_hi <= c.threshold;
  c.benchmark = r.mean - m;  // observed excess over the trivial strategy
  if (!c.in_scope) c.note = "n < 1200 sqrt(m): out of theorem scope";
  return c;
}

// ci95.lo > m, in scope when n >= 8m; mean - m is reported next to sqrt(m)/40.
inline BoundCheck check_lower_direction(const EstimateReport& r) {
  const int m = r.config.m, n = r.config.n;
  auto c = make_check(BoundKind::Lower40, static_cast<double>(m), r.mean - m);
  c.in_scope = n >= 8 * m;
  c.pass = c.in_scope && r.ci_lo > m;
  c.benchmark = std::sqrt(static_cast<double>(m)) / 40.0;
  if (!c.in_scope) c.note = "n < 8m: out of theorem scope";
  return c;
}

// Frequency of {sum y > Y} against min(1, 2 exp(-sqrt(m) n / 72)), with 3 sigma
// of sampling slack.
inline BoundCheck check_tail(const EstimateReport& r) {
  const int m = r.config.m, n = r.config.n;
  const double freq = static_cast<double>(r.over_cap) / static_cast<double>(r.trials);
  const double bound = std::min(1.0, 2.0 * std::exp(-std::sqrt(static_cast<double>(m)) * n / 72.0));
  const double sigma = std::sqrt(freq * (1 - freq) / static_cast<double>(r.trials));
  auto c = make_check(BoundKind::Tail72, bound, freq);
  c.pass = freq <= bound + 3 * sigma;
  return c;
}

// |mean(sum z) - m| + 3 sigma <= 300 sqrt(m) over coupled trajectories.
inline BoundCheck check_z_deviation(const CouplingDiagnostics& d) {
  auto c = make_check(BoundKind::ZDeviation300, 300.0 * std::sqrt(static_cast<double>(d.m)), std::abs(d.sum_z.mean() - d.m));
  c.in_scope = d.n >= 2 && d.trials > 0;
  c.pass = c.in_scope && c.observed + 3 * d.sum_z.std_error() <= c.threshold;
  if (!c.in_scope) c.note = "needs n >= 2 and at least one trajectory";
  return c;
}

inline BoundCheck check_z_deviation(int m, int n, const StrategySpec& spec, std::uint64_t trials, std::uint64_t seed,
                                    unsigned jobs = default_jobs()) {
  if (n < 2) {
    auto c = make_check(BoundKind::ZDeviation300, 300.0 * std::sqrt(static_cast<double>(m)), 0);
    c.in_scope = false;
    c.note = "needs n >= 2";
    return c;
  }
  return check_z_deviation(run_coupling_diagnostics(m, n, spec, trials, seed, jobs));
}

struct TrendRow {
  int m = 0;
  EstimateReport report;
  double excess = 0;
  double ratio = 0;  // excess / ((pi / sqrt 2) sqrt(m ln m)); NaN at m = 1
};

struct TrendReport {
  std::vector<TrendRow> rows;
  bool increasing = true;
  bool ratios_in_range = true;
  bool pass() const { return increasing && ratios_in_range; }
};

// greedy-remaining under complete feedback at m = n. Asserts only that the
// excess grows strictly with m and that the ratio to the asymptotic rate lies
// in [0.3, 3.0] wherever it is defined.
inline TrendReport complete_feedback_trend(const std::vector<int>& m_list, std::uint64_t trials, std::uint64_t seed,
                                           unsigned jobs = default_jobs()) {
  TrendReport trend;
  for (std::size_t i = 0; i < m_list.size(); ++i) {
    const int m = m_list[i];
    TrendRow row;
    row.m = m;
    row.report = run_monte_carlo({m, m, FeedbackMode::Complete}, {StrategyKind::GreedyRemaining}, trials,
                                 derive_seed(seed, static_cast<std::uint64_t>(m)), jobs);
    row.excess = row.report.mean - m;
    const double rate = std::numbers::pi / std::numbers::sqrt2 * std::sqrt(m * std::log(static_cast<double>(m)));
    row.ratio = rate > 0 ? row.excess / rate : std::nan("");
    if (rate > 0 && !(row.ratio >= 0.3 && row.ratio <= 3.0)) trend.ratios_in_range = false;
    if (i > 0 && !(row.excess > trend.rows.back().excess)) trend.increasing = false;
    trend.rows.push_back(row);
  }
  return trend;
}

inline nlohmann::json to_json(const TrendReport& t) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : t.rows)
    rows.push_back({{"m", r.m},
                    {"mean", r.report.mean},
                    {"std_error", r.report.std_error},
                    {"excess", r.excess},
                    {"ratio", std::isnan(r.ratio) ? nlohmann::json(nullptr) : nlohmann::json(r.ratio)}});
  return {{"rows", rows}, {"increasing", t.increasing}, {"ratios_in_range", t.ratios_in_range}, {"pass", t.pass()}};
}

// Sweep over the Cartesian product of m, n and strategies.
struct GridSpec {
  std::vector<int> m;
  std::vector<int> n;
  std::vector<StrategySpec> strategies;
  std::uint64_t trials = 1000;
  FeedbackMode feedback = FeedbackMode::Partial;

  std::size_t rows() const { return m.size() * n.size() * strategies.size(); }
};

// {"m":[...], "n":[...], "strategies":["sticky", ...], "trials":N, "feedback":"partial"}
inline GridSpec parse_grid(const nlohmann::json& j) {
  GridSpec grid;
  grid.m = j.at("m").get<std::vector<int>>();
  grid.n = j.at("n").get<std::vector<int>>();
  for (const auto& s : j.at("strategies")) grid.strategies.push_back(parse_strategy(s.get<std::string>()));
  if (j.contains("trials")) grid.trials = j.at("trials").get<std::uint64_t>();
  if (j.contains("feedback")) grid.feedback = parse_feedback(j.at("feedback").get<std::string>());
  if (grid.trials < 1) throw InvalidConfig("trials must be at least 1");
  return grid;
}

struct SweepRow {
  std::size_t index = 0;
  int m = 0;
  int n = 0;
  StrategySpec strategy;
  std::optional<EstimateReport> report;
  std::optional<BoundCheck> bound;
  std::string error;
};

// Row i is seeded with derive_seed(seed, i), so a run resumed at `start_row`
// reproduces the tail of a full run. Rows that throw are flagged and skipped.
inline std::vector<SweepRow> sweep(const GridSpec& grid, std::uint64_t seed, std::size_t start_row = 0,
                                   unsigned jobs = default_jobs()) {
  std::vector<SweepRow> rows;
  std::size_t index = 0;
  for (int m : grid.m)
    for (int n : grid.n)
      for (const auto& spec : grid.strategies) {
        const std::size_t row_index = index++;
        if (row_index < start_row) continue;
        SweepRow row{row_index, m, n, spec, std::nullopt, std::nullopt, {}};
        try {
          row.report = run_monte_carlo({m, n, grid.feedback}, spec, grid.trials, derive_seed(seed, row_index), jobs);
          auto upper = check_upper_bound(*row.report);
          auto lower = check_lower_direction(*row.report);
          if (upper.in_scope) row.bound = upper;
          else if (lower.in_scope) row.bound = lower;
        } catch (const std::exception& e) {
          row.error = e.what();
        }
        rows.push_back(std::move(row));
      }
  return rows;
}

inline std::string format_number(double v) {
  std::ostringstream out;
  out.precision(17);
  out << v;
  return out.str();
}

inline std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << "m,n,strategy,trials,mean,std_error,ci_lo,ci_hi,bound_kind,threshold,pass\n";
  for (const auto& row : rows) {
    out << row.m << ',' << row.n << ',' << to_string(row.strategy) << ',';
    if (!row.report) {
      out << ",,,,,error,,error\n";
      continue;
    }
    const auto& r = *row.report;
    out << r.trials << ',' << format_number(r.mean) << ',' << format_number(r.std_error) << ','
        << format_number(r.ci_lo) << ',' << format_number(r.ci_hi) << ',';
    if (row.bound)
      out << to_string(row.bound->kind) << ',' << format_number(row.bound->threshold) << ','
          << (row.bound->pass ? "true" : "false") << '\n';
    else
      out << "none,,\n";
  }
  return out.str();
}

inline nlohmann::json sweep_json(const std::vector<SweepRow>& rows) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& row : rows) {
    nlohmann::json j = {{"row", row.index}, {"m", row.m}, {"n", row.n}, {"strategy", to_string(row.strategy)}};
    if (row.report) {
      const auto& r = *row.report;
      j["trials"] = r.trials;
      j["mean"] = r.mean;
      j["std_error"] = r.std_error;
      j["ci_lo"] = r.ci_lo;
      j["ci_hi"] = r.ci_hi;
    }
    j["bound_kind"] = row.bound ? to_string(row.bound->kind) : (row.report ? "none" : "error");
    j["threshold"] = row.bound ? nlohmann::json(row.bound->threshold) : nlohmann::json(nullptr);
    j["pass"] = row.bound ? nlohmann::json(row.bound->pass) : nlohmann::json(nullptr);
    if (!row.error.empty()) j["error"] = row.error;
    out.push_back(j);
  }
  return out;
}

}  // namespace cardgame
