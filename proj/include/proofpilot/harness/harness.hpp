// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "proofpilot/engine/episode.hpp"
#include "proofpilot/engine/proof_io.hpp"
#include "proofpilot/rl/trainer.hpp"

namespace proofpilot::harness {

/// Bad flags, unreadable files or invalid configuration.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A problem file that does not parse; the message carries path:line:column.
class ProblemParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Expands files, directories (recursively, `*.p` only, sorted) and list
/// files (`*.txt`, one path per line relative to the list) into problem paths.
std::vector<std::filesystem::path> collect_problem_files(const std::vector<std::string> &inputs);

std::vector<fol::Problem> load_problems(const std::vector<std::filesystem::path> &paths);

enum class Command { Solve, Train, Eval, Verify };

struct RunConfig {
  Command command = Command::Solve;
  std::vector<std::string> inputs;
  std::string policy = "baseline";  // baseline | bfs | random | <checkpoint path>
  std::uint64_t seed = 0;
  std::size_t iterations = 10;
  std::optional<std::filesystem::path> out;
  rl::TrainerConfig trainer;  // also carries limits, jobs and vectorizer settings
  bool timing = false;        // include wall-clock seconds in reports
};

/// Merges a JSON object of overrides into `cfg`. Recognized top-level keys:
/// "seed", "iterations", "jobs", "policy", plus every TrainerConfig key.
void apply_overrides(RunConfig &cfg, const nlohmann::json &overrides);

struct ProblemRow {
  std::string problem;
  engine::Outcome outcome = engine::Outcome::StepLimit;
  std::size_t steps = 0;
  std::size_t proof_length = 0;
  double seconds = 0.0;
  std::optional<bool> verified;
  std::string proof_text;  // listing of the refutation, empty otherwise
};

struct RunReport {
  std::string command;
  std::string policy;
  std::uint64_t seed = 0;
  std::vector<ProblemRow> rows;
  std::vector<rl::IterationStats> iterations;

  std::size_t solved() const;
  std::size_t saturated() const;
  /// Index into `iterations` of the first iteration with the most solved.
  std::optional<std::size_t> best_iteration() const;
};

nlohmann::json report_to_json(const RunReport &r, bool timing = false);

/// Fixed-width table of the per-iteration statistics.
std::string iteration_table(const RunReport &r);

/// Policy by name, or a network policy loaded from a checkpoint path.
std::unique_ptr<engine::Policy> make_policy(const std::string &spec, const rl::SamplingConfig &sampling);

/// Runs one episode per problem with the configured policy, checks every
/// refutation with the independent verifier and, with an output directory,
/// writes `<problem>.proof.json` dumps and `report.json`.
RunReport cmd_solve(const RunConfig &cfg, std::ostream &log);

/// Trains from a fresh network for `iterations` iterations, writing
/// `stats.jsonl`, `checkpoint-NNN.json` per iteration and `report.json`
/// when an output directory is set.
RunReport cmd_train(const RunConfig &cfg, std::ostream &log);

/// Like cmd_solve with a checkpoint policy selecting greedily.
RunReport cmd_eval(const RunConfig &cfg, std::ostream &log);

/// Verifies a derivation dump file, optionally against its problem file.
engine::VerifyResult cmd_verify(const std::filesystem::path &dump,
                                const std::optional<std::filesystem::path> &problem = std::nullopt);

}  // namespace proofpilot::harness
