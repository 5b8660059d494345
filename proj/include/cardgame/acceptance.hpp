#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cardgame/coupling.hpp"
#include "cardgame/experiments.hpp"
#include "cardgame/oracle.hpp"

namespace cardgame {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

inline nlohmann::json to_json(const CriterionResult& r) {
  return {{"id", r.id}, {"title", r.title}, {"pass", r.pass}, {"detail", r.detail}, {"seconds", r.seconds}};
}

enum class Suite { Bounds, Coupling, All };

inline Suite parse_suite(const std::string& s) {
  if (s == "bounds") return Suite::Bounds;
  if (s == "coupling") return Suite::Coupling;
  if (s == "all") return Suite::All;
  throw InvalidConfig("unknown suite '" + s + "' (expected bounds, coupling or all)");
}

class AcceptanceRunner {
 public:
  explicit AcceptanceRunner(std::uint64_t seed, unsigned jobs = default_jobs()) : seed_(seed), jobs_(jobs) {}

  static std::vector<int> criteria(Suite suite) {
    switch (suite) {
      case Suite::Bounds: return {1, 2, 6, 7, 8, 10, 11};
      case Suite::Coupling: return {3, 4, 5, 9};
      case Suite::All: break;
    }
    return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11};
  }

  CriterionResult run(int id) {
    CriterionResult r;
    r.id = id;
    const auto start = std::chrono::steady_clock::now();
    try {
      switch (id) {
        case 1: hit_bound(r); break;
        case 2: optimal_goldens(r); break;
        case 3: coupling_properties(r); break;
        case 4: exact_drift(r); break;
        case 5: b_le_c(r); break;
        case 6: upper_bound(r); break;
        case 7: lower_direction(r); break;
        case 8: tail(r); break;
        case 9: z_deviation(r); break;
        case 10: trend(r); break;
        case 11: infrastructure(r); break;
        default: throw InvalidConfig("no criterion " + std::to_string(id));
      }
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail += std::string(r.detail.empty() ? "" : "; ") + "exception: " + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
  }

  std::vector<CriterionResult> run(Suite suite, const std::function<void(const CriterionResult&)>& on_result = {}) {
    std::vector<CriterionResult> out;
    for (int id : criteria(suite)) {
      out.push_back(run(id));
      if (on_result) on_result(out.back());
    }
    return out;
  }

 private:
  std::uint64_t seed_for(int id) const { return derive_seed(seed_, static_cast<std::uint64_t>(id)); }

  // The (2,3) greedy-bound coupling run is shared by criteria 3, 5 and 9.
  const CouplingDiagnostics& coupled_23() {
    if (!coupled_23_)
      coupled_23_ = run_coupling_diagnostics(2, 3, parse_strategy("greedy-bound"), 100000, seed_for(3), jobs_);
    return *coupled_23_;
  }

  static std::string fmt(double v) {
    std::ostringstream out;
    out.precision(6);
    out << v;
    return out.str();
  }

  void hit_bound(CriterionResult& r) {
    r.title = "hit-probability bound, every reachable history, mn <= 9";
    const auto start = std::chrono::steady_clock::now();
    r.pass = true;
    double worst = -1e300;
    std::uint64_t histories = 0;
    int configs = 0;
    for (int m = 1; m <= 9; ++m)
      for (int n = 1; m * n <= 9; ++n) {
        auto rep = verify_hit_bound(m, n, kMaxOracleLimit);
        ++configs;
        histories += rep.histories;
        if (rep.checks > 0) worst = std::max(worst, rep.max_slack);
        if (!rep.pass || rep.max_slack > 1e-12) r.pass = false;
      }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs >= 60) r.pass = false;
    r.detail = std::to_string(configs) + " configs, " + std::to_string(histories) + " histories, max slack " +
               fmt(worst) + ", " + fmt(secs) + "s";
  }

  void optimal_goldens(CriterionResult& r) {
    r.title = "optimal-value goldens and strategy values below optimum";
    const double v11 = optimal_value_partial(1, 1), v12 = optimal_value_partial(1, 2);
    const double canon = optimal_value_partial(1, 3), raw = optimal_value_raw(1, 3);
    bool pass = v11 == 1.0 && std::abs(v12 - 1.5) <= 1e-12 && std::abs(canon - raw) <= 1e-12;
    int compared = 0;
    for (auto [m, n] : {std::pair{1, 2}, {1, 3}, {2, 2}}) {
      GameConfig partial{m, n, FeedbackMode::Partial};
      GameConfig complete{m, n, FeedbackMode::Complete};
      const double opt_p = optimal_value(partial), opt_c = optimal_value(complete);
      std::vector<std::string> names{"sticky", "greedy-bound", "exact-greedy"};
      for (int k = 1; k <= n; ++k) names.push_back("fixed:" + std::to_string(k));
      for (const auto& name : names) {
        auto s = make_strategy(parse_strategy(name), rules_of(partial));
        if (strategy_exact_value(*s, partial) > opt_p + 1e-12) pass = false;
        ++compared;
      }
      auto gr = make_strategy(parse_strategy("greedy-remaining"), rules_of(complete));
      if (strategy_exact_value(*gr, complete) > opt_c + 1e-12) pass = false;
      ++compared;
    }
    r.pass = pass;
    r.detail = "opt(1,1)=" + fmt(v11) + " opt(1,2)=" + fmt(v12) + " opt(1,3) canonical=" + fmt(canon) +
               " raw=" + fmt(raw) + ", " + std::to_string(compared) + " strategy values checked";
  }

  void coupling_properties(CriterionResult& r) {
    r.title = "coupling properties (a)-(d) at (2,3), 1e5 trajectories";
    const auto& d = coupled_23();
    r.pass = d.prop_a_pass() && d.prop_d_pass() && d.prop_c_pass() && d.prop_b_pass();
    r.detail = "a failures " + std::to_string(d.prop_a_failures) + ", d failures " +
               std::to_string(d.prop_d_failures) + ", c worst z " + fmt(d.prop_c_worst_z) + " over " +
               std::to_string(d.prop_c_classes) + " classes, b worst z " + fmt(d.prop_b_worst_z) + " over " +
               std::to_string(d.prop_b_pairs) + " pairs";
  }

  void exact_drift(CriterionResult& r) {
    r.title = "exact supermartingale drift at (1,2), (2,2)";
    r.pass = true;
    double worst = -1e300;
    std::uint64_t nodes = 0;
    for (auto [m, n] : {std::pair{1, 2}, {2, 2}}) {
      GameConfig config{m, n, FeedbackMode::Partial};
      PosteriorOracle oracle(m, n);
      for (const char* name : {"sticky", "greedy-bound"}) {
        auto s = make_strategy(parse_strategy(name), rules_of(config));
        auto rep = drift_step_check(config, *s, oracle);
        worst = std::max(worst, rep.max_drift);
        nodes += rep.nodes;
        if (!rep.pass) r.pass = false;
      }
    }
    r.detail = "max drift " + fmt(worst) + " over " + std::to_string(nodes) + " tree nodes";
  }

  void b_le_c(CriterionResult& r) {
    r.title = "b <= c on every coupled trajectory at (2,3)";
    const auto& d = coupled_23();
    r.pass = d.b_le_c_pass() && d.trials == 100000;
    r.detail = std::to_string(d.trials - d.b_le_c_failures) + "/" + std::to_string(d.trials) + " trajectories";
  }

  void upper_bound(CriterionResult& r) {
    r.title = "upper bound m + 500 sqrt(m) at theorem scale";
    r.pass = true;
    std::string detail;
    std::uint64_t row = 0;
    for (auto [m, n] : {std::pair{1, 1200}, {4, 2400}})
      for (const char* name : {"sticky", "greedy-bound", "random"}) {
        auto rep = run_monte_carlo({m, n, FeedbackMode::Partial}, parse_strategy(name), 10000,
                                   derive_seed(seed_for(6), row++), jobs_);
        auto c = check_upper_bound(rep);
        if (!c.pass) r.pass = false;
        detail += (detail.empty() ? "" : ", ") + std::string("(") + std::to_string(m) + "," + std::to_string(n) +
                  ") " + name + " hi=" + fmt(rep.ci_hi) + " excess=" + fmt(rep.mean - m);
      }
    r.detail = detail;
  }

  void lower_direction(CriterionResult& r) {
    r.title = "sticky beats m at (25,200)";
    auto rep = run_monte_carlo({25, 200, FeedbackMode::Partial}, parse_strategy("sticky"), 100000, seed_for(7), jobs_);
    auto c = check_lower_direction(rep);
    r.pass = c.pass;
    r.detail = "ci95 [" + fmt(rep.ci_lo) + ", " + fmt(rep.ci_hi) + "], mean-m " + fmt(rep.mean - 25) +
               " vs benchmark " + fmt(*c.benchmark) + " (reported only)";
  }

  void tail(CriterionResult& r) {
    r.title = "no sum y > Y at (4,2400), 1e5 games per strategy";
    r.pass = true;
    std::string detail;
    std::uint64_t row = 0;
    for (const char* name : {"fixed:1", "sticky", "random", "greedy-bound"}) {
      auto rep = run_monte_carlo({4, 2400, FeedbackMode::Partial}, parse_strategy(name), 100000,
                                 derive_seed(seed_for(8), row++), jobs_);
      if (rep.over_cap != 0) r.pass = false;
      detail += (detail.empty() ? "" : ", ") + std::string(name) + " " + std::to_string(rep.over_cap) +
                " (max " + std::to_string(rep.max_payoff) + ")";
    }
    r.detail = "Y=" + std::to_string(y_cap(4, 2400)) + ": " + detail;
  }

  void z_deviation(CriterionResult& r) {
    r.title = "|mean(sum z) - m| + 3 sigma <= 300 sqrt(m) at (2,3), (1,2)";
    auto c23 = check_z_deviation(coupled_23());
    auto d12 = run_coupling_diagnostics(1, 2, parse_strategy("greedy-bound"), 100000, seed_for(9), jobs_);
    auto c12 = check_z_deviation(d12);
    r.pass = c23.pass && c12.pass;
    r.detail = "(2,3) deviation " + fmt(c23.observed) + " vs " + fmt(c23.threshold) + ", (1,2) deviation " +
               fmt(c12.observed) + " vs " + fmt(c12.threshold);
  }

  void trend(CriterionResult& r) {
    r.title = "complete-feedback excess grows like sqrt(m ln m)";
    auto t = complete_feedback_trend({10, 20, 40}, 10000, seed_for(10), jobs_);
    r.pass = t.pass();
    std::string detail;
    for (const auto& row : t.rows)
      detail += (detail.empty() ? "" : ", ") + std::string("m=") + std::to_string(row.m) + " excess " +
                fmt(row.excess) + " ratio " + fmt(row.ratio);
    r.detail = detail;
  }

  void infrastructure(CriterionResult& r) {
    r.title = "Monte Carlo matches exact values; results independent of jobs";
    bool pass = true;
    double worst_z = 0;
    int points = 0;
    std::uint64_t row = 0;
    auto compare = [&](const GameConfig& config, const std::string& name) {
      const auto spec = parse_strategy(name);
      auto proto = make_strategy(spec, rules_of(config));
      const double exact = strategy_exact_value(*proto, config);
      auto rep = run_monte_carlo(config, spec, 20000, derive_seed(seed_for(11), row++), jobs_);
      const double diff = std::abs(rep.mean - exact);
      const double z = rep.std_error > 0 ? diff / rep.std_error : (diff > 1e-12 ? 1e300 : 0);
      worst_z = std::max(worst_z, z);
      if (z > 5) pass = false;
      ++points;
    };
    for (int m = 1; m <= 4; ++m)
      for (int n = 1; m * n <= 8; ++n) {
        GameConfig partial{m, n, FeedbackMode::Partial};
        for (const char* name : {"fixed:1", "sticky", "greedy-bound", "exact-greedy"}) compare(partial, name);
        if (m * n <= 6) compare({m, n, FeedbackMode::Complete}, "greedy-remaining");
      }
    // Bit identity across worker counts, and across repeated runs.
    const GameConfig shape{2, 40, FeedbackMode::Partial};
    auto one = run_monte_carlo(shape, parse_strategy("random"), 20000, seed_for(11), 1);
    auto many = run_monte_carlo(shape, parse_strategy("random"), 20000, seed_for(11), 4);
    auto again = run_monte_carlo(shape, parse_strategy("random"), 20000, seed_for(11), 3);
    const bool identical = one.mean == many.mean && one.variance == many.variance && one.mean == again.mean &&
                           one.variance == again.variance;
    auto c1 = run_coupling_diagnostics(1, 3, parse_strategy("sticky"), 6000, seed_for(11), 1);
    auto c4 = run_coupling_diagnostics(1, 3, parse_strategy("sticky"), 6000, seed_for(11), 4);
    const bool coupled_identical = to_json(c1).dump() == to_json(c4).dump();
    r.pass = pass && identical && coupled_identical;
    r.detail = std::to_string(points) + " grid points, worst z " + fmt(worst_z) + ", jobs-independent " +
               (identical && coupled_identical ? "yes" : "no");
  }

  std::uint64_t seed_;
  unsigned jobs_;
  std::optional<CouplingDiagnostics> coupled_23_;
};

}  // namespace cardgame
