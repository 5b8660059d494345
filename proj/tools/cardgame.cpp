#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "cardgame/acceptance.hpp"
#include "cardgame/coupling.hpp"
#include "cardgame/experiments.hpp"
#include "cardgame/oracle.hpp"
#include "cardgame/play.hpp"

using namespace cardgame;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kFailure = 1, kUsage = 2, kLimit = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void write_text(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string fixed(double v, int digits = 4) {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(digits);
  out << v;
  return out.str();
}

struct SimulateArgs {
  int m = 0, n = 0;
  std::string strategy, feedback = "partial", out, transcript;
  std::uint64_t trials = 0, seed = 0;
  unsigned jobs = default_jobs();
  double z = kZ95;
};

int cmd_simulate(const SimulateArgs& a) {
  const GameConfig shape{a.m, a.n, parse_feedback(a.feedback)};
  shape.validate();
  const auto spec = parse_strategy(a.strategy);
  const auto report = run_monte_carlo(shape, spec, a.trials, a.seed, a.jobs, a.z);

  json j = to_json(report);
  j["bounds"] = json::array();
  for (const auto& check : {check_upper_bound(report), check_lower_direction(report), check_tail(report)})
    j["bounds"].push_back(to_json(check));

  if (!a.transcript.empty()) {
    // Game 0 of the run, replayed with its own seed.
    GameConfig config = shape;
    config.seed = derive_seed(a.seed, 0);
    auto strategy = make_strategy(spec, rules_of(config));
    write_text(a.transcript, dump(to_json(play_game(config, *strategy))));
  }
  if (a.out == "-") {
    std::cout << dump(j);
  } else {
    if (!a.out.empty()) write_text(a.out, dump(j));
    std::cout << "m=" << a.m << " n=" << a.n << " " << to_string(spec) << " trials=" << report.trials
              << " mean=" << fixed(report.mean) << " se=" << fixed(report.std_error) << " ci95=["
              << fixed(report.ci_lo) << ", " << fixed(report.ci_hi) << "]\n";
  }
  return kOk;
}

struct OracleArgs {
  int m = 0, n = 0;
  bool optimal = false, verify = false;
  std::string feedback = "partial", out;
};

int cmd_oracle(const OracleArgs& a) {
  if (!a.optimal && !a.verify) throw UsageError("oracle: pass --optimal and/or --verify-3-1");
  const GameConfig config{a.m, a.n, parse_feedback(a.feedback)};
  config.validate();
  require_within_limit(config.rounds(), oracle_limit());

  json j = {{"m", a.m}, {"n", a.n}, {"oracle_limit", oracle_limit()}};
  bool pass = true;
  if (a.optimal) {
    const double value = optimal_value(config);
    j["feedback"] = std::string(to_string(config.feedback));
    j["optimal_value"] = value;
    if (a.out.empty()) std::cout << "optimal_value " << fixed(value, 12) << "\n";
  }
  if (a.verify) {
    const auto report = verify_hit_bound(a.m, a.n);
    j["verify_3_1"] = to_json(report);
    pass = report.pass;
    if (a.out.empty())
      std::cout << "verify_3_1 " << (report.pass ? "pass" : "FAIL") << " histories=" << report.histories
                << " checks=" << report.checks << " max_slack=" << report.max_slack << "\n";
  }
  if (!a.out.empty()) write_text(a.out, dump(j));
  return pass ? kOk : kFailure;
}

struct CoupleArgs {
  int m = 0, n = 0;
  std::string strategy, out;
  std::uint64_t trials = 0;
  std::optional<std::uint64_t> seed;
  bool exact_drift = false;
  unsigned jobs = default_jobs();
};

int cmd_couple(const CoupleArgs& a) {
  const GameConfig config{a.m, a.n, FeedbackMode::Partial};
  config.validate();
  const auto spec = parse_strategy(a.strategy);
  if (a.trials == 0 && !a.exact_drift) throw UsageError("couple: pass --trials N --seed S and/or --exact-drift");
  if (a.trials > 0 && !a.seed) throw UsageError("couple: --seed is required with --trials");
  require_within_limit(config.rounds(), oracle_limit());

  const auto oracle = std::make_shared<const PosteriorOracle>(a.m, a.n);
  const auto prototype = make_strategy(spec, rules_of(config));
  const auto params = CouplingParams::of(a.m, a.n);

  json j;
  bool pass = true;
  if (a.trials > 0) {
    const auto d = run_coupling_diagnostics(a.m, a.n, spec, a.trials, *a.seed, a.jobs);
    j = to_json(d);
    const auto zdev = check_z_deviation(d);
    j["z_deviation"] = to_json(zdev);
    pass = d.prop_a_pass() && d.prop_b_pass() && d.prop_c_pass() && d.prop_d_pass() && d.b_le_c_pass();
  } else {
    j = {{"config", {{"m", a.m}, {"n", a.n}, {"Y", params.Y}, {"strategy", to_string(spec)}, {"seed", nullptr}}},
         {"trials", 0}};
  }

  // The exact tree is run on request, and opportunistically when it is small.
  const bool feasible = prototype->deterministic() && config.rounds() <= kExactTreeLimit;
  if (a.exact_drift || feasible) {
    if (!prototype->deterministic()) throw RandomizedStrategyUnsupported(to_string(spec) + " is randomized");
    const auto drift = drift_step_check(config, *prototype, *oracle);
    j["max_drift"] = drift.max_drift;
    j["drift"] = to_json(drift);
    pass = pass && drift.pass;
  } else {
    j["max_drift"] = nullptr;
  }
  j["pass"] = pass;
  write_text(a.out.empty() ? "-" : a.out, dump(j));
  return pass ? kOk : kFailure;
}

struct SweepArgs {
  std::string grid, out, json_out;
  std::uint64_t seed = 0;
  std::size_t start_row = 0;
  unsigned jobs = default_jobs();
};

int cmd_sweep(const SweepArgs& a) {
  std::ifstream in(a.grid);
  if (!in) throw UsageError("cannot read grid file " + a.grid);
  GridSpec grid;
  try {
    grid = parse_grid(json::parse(in));
  } catch (const json::exception& e) {
    throw UsageError(std::string("malformed grid: ") + e.what());
  }
  const auto rows = sweep(grid, a.seed, a.start_row, a.jobs);
  write_text(a.out.empty() ? "-" : a.out, sweep_csv(rows));
  if (!a.json_out.empty()) write_text(a.json_out, dump(sweep_json(rows)));

  int failed = 0;
  for (const auto& row : rows) {
    // The lower bound is about some strategy, so a per-row lower40 miss is not an error.
    const bool hard = row.bound && row.bound->kind == BoundKind::Upper500;
    const bool bad = !row.error.empty() || (hard && row.bound->in_scope && !row.bound->pass);
    if (!bad) continue;
    ++failed;
    std::cerr << "row " << row.index << " (m=" << row.m << ", n=" << row.n << ", " << to_string(row.strategy)
              << "): " << (row.error.empty() ? to_string(row.bound->kind) + " failed" : row.error) << "\n";
  }
  return failed == 0 ? kOk : kFailure;
}

struct VerifyArgs {
  std::string suite = "all", out;
  std::uint64_t seed = 0;
  unsigned jobs = default_jobs();
};

int cmd_verify(const VerifyArgs& a) {
  const Suite suite = parse_suite(a.suite);
  AcceptanceRunner runner(a.seed, a.jobs);
  json criteria = json::array();
  bool pass = true;
  runner.run(suite, [&](const CriterionResult& r) {
    std::cout << (r.pass ? "PASS" : "FAIL") << " AC" << r.id << " " << r.title << ": " << r.detail << std::endl;
    criteria.push_back(to_json(r));
    pass = pass && r.pass;
  });
  if (!a.out.empty())
    write_text(a.out, dump({{"suite", a.suite}, {"seed", a.seed}, {"criteria", criteria}, {"pass", pass}}));
  return pass ? kOk : kFailure;
}

struct PlayArgs {
  int m = 0, n = 0;
  std::string feedback = "partial";
  std::uint64_t seed = 0;
};

int cmd_play(const PlayArgs& a) {
  const GameConfig config{a.m, a.n, parse_feedback(a.feedback), a.seed};
  config.validate();
  Rng rng(stream_seed(config.seed, Stream::Deck));
  auto deck = DeckState::shuffled(config, rng);
  std::cout << "Deck of " << config.rounds() << " cards: labels 1.." << a.n << ", " << a.m
            << " copies each. Guess a label per line, q to quit.\n";
  int score = 0, round = 0;
  std::string line;
  while (!deck.exhausted()) {
    std::cout << "round " << round + 1 << "/" << config.rounds() << "> " << std::flush;
    if (!std::getline(std::cin, line)) {
      std::cout << "\n";
      break;
    }
    if (line == "q") break;
    Label guess = 0;
    try {
      std::size_t used = 0;
      guess = std::stoi(line, &used);
      if (used != line.size()) throw std::invalid_argument(line);
      check_label(guess, a.n);
    } catch (const std::exception&) {
      std::cout << "enter a label between 1 and " << a.n << "\n";
      continue;
    }
    const auto result = deck.play_round(guess);
    ++round;
    score += result.correct;
    std::cout << (result.correct ? "correct" : "wrong");
    if (result.revealed) std::cout << " (card was " << *result.revealed << ")";
    std::cout << ", score " << score << "\n";
  }
  std::cout << "final score " << score << " after " << round << " rounds (guessing one label scores " << a.m
            << ")\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Card guessing game: simulation, exact oracles and coupling diagnostics"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo estimate of the expected payoff");
  simulate->add_option("--m", sim.m, "copies of each label")->required();
  simulate->add_option("--n", sim.n, "number of labels")->required();
  simulate->add_option("--strategy", sim.strategy, "fixed:K, sticky, random, greedy-bound, exact-greedy, greedy-remaining")
      ->required();
  simulate->add_option("--trials", sim.trials, "number of games")->required()->check(CLI::PositiveNumber);
  simulate->add_option("--seed", sim.seed, "master seed")->required();
  simulate->add_option("--feedback", sim.feedback, "partial or complete")->capture_default_str();
  simulate->add_option("--out", sim.out, "write the JSON report here ('-' for stdout)");
  simulate->add_option("--save-transcript", sim.transcript, "write the transcript of game 0 here");
  simulate->add_option("--jobs", sim.jobs, "worker threads")->check(CLI::PositiveNumber);
  simulate->add_option("--z", sim.z, "confidence multiplier")->capture_default_str();

  OracleArgs orc;
  auto* oracle = app.add_subcommand("oracle", "Exact values and the hit-probability bound for small decks");
  oracle->add_option("--m", orc.m)->required();
  oracle->add_option("--n", orc.n)->required();
  oracle->add_flag("--optimal", orc.optimal, "optimal expected payoff");
  oracle->add_flag("--verify-3-1", orc.verify, "check the hit-probability bound on every reachable history");
  oracle->add_option("--feedback", orc.feedback, "partial or complete (for --optimal)")->capture_default_str();
  oracle->add_option("--out", orc.out, "write a JSON report here ('-' for stdout)");

  CoupleArgs cpl;
  auto* couple = app.add_subcommand("couple", "Coupled z-process diagnostics");
  couple->add_option("--m", cpl.m)->required();
  couple->add_option("--n", cpl.n)->required();
  couple->add_option("--strategy", cpl.strategy)->required();
  couple->add_option("--trials", cpl.trials, "coupled trajectories to sample");
  couple->add_option("--seed", cpl.seed, "master seed (required with --trials)");
  couple->add_flag("--exact-drift", cpl.exact_drift, "evaluate the drift over the full probability tree");
  couple->add_option("--out", cpl.out, "write the JSON report here instead of stdout");
  couple->add_option("--jobs", cpl.jobs)->check(CLI::PositiveNumber);

  SweepArgs swp;
  auto* sweep_cmd = app.add_subcommand("sweep", "Monte Carlo over a grid of (m, n, strategy)");
  sweep_cmd->add_option("--grid", swp.grid, "JSON grid spec")->required();
  sweep_cmd->add_option("--seed", swp.seed)->required();
  sweep_cmd->add_option("--out", swp.out, "CSV output (default stdout)");
  sweep_cmd->add_option("--json", swp.json_out, "also write the rows as JSON");
  sweep_cmd->add_option("--start-row", swp.start_row, "resume from this row index");
  sweep_cmd->add_option("--jobs", swp.jobs)->check(CLI::PositiveNumber);

  VerifyArgs ver;
  auto* verify = app.add_subcommand("verify", "Run the acceptance suite");
  verify->add_option("--suite", ver.suite, "bounds, coupling or all")
      ->check(CLI::IsMember({"bounds", "coupling", "all"}))
      ->capture_default_str();
  verify->add_option("--seed", ver.seed)->required();
  verify->add_option("--out", ver.out, "write a JSON summary here");
  verify->add_option("--jobs", ver.jobs)->check(CLI::PositiveNumber);

  PlayArgs ply;
  auto* play = app.add_subcommand("play", "Play a game at the terminal");
  play->add_option("--m", ply.m)->required();
  play->add_option("--n", ply.n)->required();
  play->add_option("--feedback", ply.feedback)->capture_default_str();
  play->add_option("--seed", ply.seed)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (simulate->parsed()) return cmd_simulate(sim);
    if (oracle->parsed()) return cmd_oracle(orc);
    if (couple->parsed()) return cmd_couple(cpl);
    if (sweep_cmd->parsed()) return cmd_sweep(swp);
    if (verify->parsed()) return cmd_verify(ver);
    if (play->parsed()) return cmd_play(ply);
  } catch (const OracleLimitExceeded& e) {
    std::cerr << "error: " << e.what() << " (raise CARDGAME_ORACLE_LIMIT, at most " << kMaxOracleLimit << ")\n";
    return kLimit;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const InvalidConfig& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const InvalidLabel& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const WrongFeedbackMode& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const RandomizedStrategyUnsupported& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kUsage;
}
