#include <cstdio>
#include <cstdlib>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "cardgame/acceptance.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria, one PASS/FAIL line each"};
  std::uint64_t seed = 1;
  std::string suite = "all";
  unsigned jobs = cardgame::default_jobs();
  app.add_option("--seed", seed, "master seed");
  app.add_option("--suite", suite, "bounds, coupling or all");
  app.add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
  CLI11_PARSE(app, argc, argv);

  try {
    cardgame::AcceptanceRunner runner(seed, jobs);
    int failed = 0;
    runner.run(cardgame::parse_suite(suite), [&](const cardgame::CriterionResult& r) {
      std::printf("%s AC%d %s: %s [%.1fs]\n", r.pass ? "PASS" : "FAIL", r.id, r.title.c_str(), r.detail.c_str(),
                  r.seconds);
      std::fflush(stdout);
      failed += !r.pass;
    });
    return failed == 0 ? 0 : 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
