// SPDX-License-Identifier: Apache-2.0
// proofpilot: solve, train, eval and verify from the command line.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "proofpilot/harness/harness.hpp"

namespace {

namespace ph = proofpilot::harness;

enum Exit : int {
  kOk = 0,
  kUsage = 1,
  kParse = 2,
  kLimit = 3,
  kVerifyFailed = 4,
  kInternal = 70,
};

struct Flags {
  std::vector<std::string> inputs;
  std::string policy;
  std::optional<std::size_t> max_steps;
  std::optional<double> max_seconds;
  std::optional<std::size_t> iterations;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> jobs;
  std::string config;
  std::string out;
  bool timing = false;
};

void add_run_flags(CLI::App *cmd, Flags &f, bool training) {
  cmd->add_option("problems", f.inputs, "Problem files, directories or .txt lists")->required();
  if (!training) cmd->add_option("--policy", f.policy, "baseline, bfs, random or a checkpoint file");
  cmd->add_option("--max-steps", f.max_steps, "Step limit per episode (default 2000)");
  cmd->add_option("--max-seconds", f.max_seconds, "Time limit per episode (default 100)");
  if (training) cmd->add_option("--iterations", f.iterations, "Training iterations (default 10)");
  cmd->add_option("--seed", f.seed, "Root random seed (default 0)");
  cmd->add_option("--jobs", f.jobs, "Worker threads for episodes (default 1)");
  cmd->add_option("--config", f.config, "JSON file of configuration overrides");
  cmd->add_option("--out", f.out, "Output directory for reports, dumps and checkpoints");
  cmd->add_flag("--timing", f.timing, "Include wall-clock seconds in reports");
}

ph::RunConfig build_config(const Flags &f, ph::Command command) {
  ph::RunConfig cfg;
  cfg.command = command;
  cfg.inputs = f.inputs;
  if (!f.config.empty()) {
    std::ifstream in(f.config);
    if (!in) throw ph::UsageError("cannot read config '" + f.config + "'");
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception &e) {
      throw ph::UsageError("config '" + f.config + "' is not valid JSON: " + e.what());
    }
    ph::apply_overrides(cfg, j);
  }
  if (!f.policy.empty()) cfg.policy = f.policy;
  if (f.max_steps) cfg.trainer.limits.max_steps = *f.max_steps;
  if (f.max_seconds) cfg.trainer.limits.max_seconds = *f.max_seconds;
  if (f.iterations) cfg.iterations = *f.iterations;
  if (f.seed) cfg.seed = *f.seed;
  if (f.jobs) cfg.trainer.jobs = *f.jobs;
  if (!f.out.empty()) cfg.out = f.out;
  cfg.timing = f.timing;
  if (cfg.trainer.limits.max_steps == 0 || !(cfg.trainer.limits.max_seconds > 0.0)) {
    throw ph::UsageError("limits must be positive");
  }
  if (cfg.trainer.jobs == 0) throw ph::UsageError("--jobs must be positive");
  return cfg;
}

int solve_exit(const ph::RunReport &r) {
  for (const auto &row : r.rows) {
    if (row.verified && !*row.verified) return kVerifyFailed;
  }
  if (r.rows.size() == 1) {
    const auto o = r.rows.front().outcome;
    if (o != proofpilot::engine::Outcome::Refutation && o != proofpilot::engine::Outcome::Saturated) return kLimit;
  }
  return kOk;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Saturation prover with a learned clause-selection policy"};
  app.require_subcommand(1);
  Flags solve_flags, train_flags, eval_flags;
  auto *solve = app.add_subcommand("solve", "Run a policy on problems and verify the refutations");
  add_run_flags(solve, solve_flags, false);
  auto *train = app.add_subcommand("train", "Train a policy from scratch on a corpus");
  add_run_flags(train, train_flags, true);
  auto *eval = app.add_subcommand("eval", "Evaluate a checkpoint greedily on problems");
  add_run_flags(eval, eval_flags, false);
  auto *verify = app.add_subcommand("verify", "Check a derivation dump independently");
  std::string dump_path, problem_path;
  verify->add_option("dump", dump_path, "Derivation dump (JSON)")->required();
  verify->add_option("--problem", problem_path, "Problem file the dump must start from");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*solve) return solve_exit(ph::cmd_solve(build_config(solve_flags, ph::Command::Solve), std::cout));
    if (*eval) return solve_exit(ph::cmd_eval(build_config(eval_flags, ph::Command::Eval), std::cout));
    if (*train) {
      ph::cmd_train(build_config(train_flags, ph::Command::Train), std::cout);
      return kOk;
    }
    std::optional<std::filesystem::path> problem;
    if (!problem_path.empty()) problem = problem_path;
    const auto result = ph::cmd_verify(dump_path, problem);
    if (result.ok) {
      std::cout << "ok\n";
      return kOk;
    }
    std::cout << "FAIL";
    if (result.failed_clause) std::cout << " at clause " << *result.failed_clause;
    std::cout << ": " << result.message << '\n';
    return kVerifyFailed;
  } catch (const ph::ProblemParseError &e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kParse;
  } catch (const ph::UsageError &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception &e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternal;
  }
}
