// SPDX-License-Identifier: Apache-2.0
#include "proofpilot/harness/harness.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "proofpilot/common/parallel.hpp"
#include "proofpilot/rl/checkpoint.hpp"
#include "proofpilot/rl/neural_policy.hpp"

namespace proofpilot::harness {

namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw UsageError("cannot write '" + path.string() + "'");
}

void prepare_out(const std::optional<fs::path> &out) {
  if (!out) return;
  std::error_code ec;
  fs::create_directories(*out, ec);
  if (ec) throw UsageError("cannot create output directory '" + out->string() + "': " + ec.message());
}

void collect(const fs::path &p, std::vector<fs::path> &out) {
  std::error_code ec;
  if (fs::is_directory(p, ec)) {
    std::vector<fs::path> found;
    for (const auto &entry : fs::recursive_directory_iterator(p)) {
      if (entry.is_regular_file() && entry.path().extension() == ".p") found.push_back(entry.path());
    }
    std::sort(found.begin(), found.end());
    out.insert(out.end(), found.begin(), found.end());
  } else if (p.extension() == ".txt") {
    std::istringstream lines(read_file(p));
    for (std::string line; std::getline(lines, line);) {
      line.erase(0, line.find_first_not_of(" \t\r"));
      line.erase(line.find_last_not_of(" \t\r") + 1);
      if (line.empty() || line[0] == '#') continue;
      collect(p.parent_path() / line, out);
    }
  } else if (fs::is_regular_file(p, ec)) {
    out.push_back(p);
  } else {
    throw UsageError("no such problem file or directory: '" + p.string() + "'");
  }
}

ProblemRow row_from(const engine::EpisodeResult &ep) {
  return ProblemRow{ep.problem, ep.outcome, ep.steps.size(), ep.proof.size(), ep.seconds, std::nullopt, {}};
}

RunReport run_policy(const RunConfig &cfg, const std::string &command, const rl::SamplingConfig &sampling,
                     std::ostream &log) {
  const auto problems = load_problems(collect_problem_files(cfg.inputs));
  if (problems.empty()) throw UsageError("no problems given");
  prepare_out(cfg.out);
  // Fail on a bad checkpoint before any work starts.
  make_policy(cfg.policy, sampling);

  RunReport report;
  report.command = command;
  report.policy = cfg.policy;
  report.seed = cfg.seed;
  report.rows.resize(problems.size());
  std::vector<nlohmann::json> dumps(problems.size());
  parallel_for(problems.size(), cfg.trainer.jobs, [&](std::size_t i) {
    auto policy = make_policy(cfg.policy, sampling);
    Rng rng(derive_seed(cfg.seed, {rl::kEvalStream, i}));
    const auto ep = engine::run_episode(problems[i], *policy, cfg.trainer.limits, rng);
    ProblemRow row = row_from(ep);
    if (ep.solved()) {
      const fol::ClauseId empty = *ep.engine->empty_clause();
      dumps[i] = engine::derivation_dump(*ep.engine, empty, problems[i].name);
      row.verified = engine::verify_dump(dumps[i], &problems[i]).ok;
      row.proof_text = engine::proof_listing(*ep.engine, empty);
    }
    report.rows[i] = std::move(row);
  });

  for (std::size_t i = 0; i < problems.size(); ++i) {
    const ProblemRow &row = report.rows[i];
    log << row.problem << ": " << engine::outcome_name(row.outcome) << " steps=" << row.steps;
    if (row.verified) log << " proof=" << row.proof_length << " verified=" << (*row.verified ? "yes" : "NO");
    log << '\n';
    if (cfg.out && !dumps[i].is_null()) write_file(*cfg.out / (row.problem + ".proof.json"), dumps[i].dump(2) + "\n");
  }
  if (report.rows.size() == 1 && !report.rows[0].proof_text.empty()) log << report.rows[0].proof_text;
  log << "solved " << report.solved() << "/" << report.rows.size() << ", saturated " << report.saturated() << '\n';
  if (cfg.out) write_file(*cfg.out / "report.json", report_to_json(report, cfg.timing).dump(2) + "\n");
  return report;
}

}  // namespace

std::vector<fs::path> collect_problem_files(const std::vector<std::string> &inputs) {
  std::vector<fs::path> out;
  for (const std::string &in : inputs) collect(fs::path(in), out);
  return out;
}

std::vector<fol::Problem> load_problems(const std::vector<fs::path> &paths) {
  std::vector<fol::Problem> problems;
  for (const fs::path &p : paths) {
    const std::string text = read_file(p);
    try {
      problems.push_back(fol::parse_problem(text, p.stem().string()));
    } catch (const fol::ParseError &e) {
      throw ProblemParseError(p.string() + ":" + std::to_string(e.line()) + ":" + std::to_string(e.column()) +
                              ": " + e.what());
    }
  }
  return problems;
}

void apply_overrides(RunConfig &cfg, const nlohmann::json &overrides) {
  if (!overrides.is_object()) throw UsageError("config must be a JSON object");
  try {
    cfg.seed = overrides.value("seed", cfg.seed);
    cfg.iterations = overrides.value("iterations", cfg.iterations);
    cfg.policy = overrides.value("policy", cfg.policy);
    cfg.trainer.jobs = overrides.value("jobs", cfg.trainer.jobs);
    rl::from_json(overrides, cfg.trainer);
    cfg.trainer.validate();
  } catch (const nlohmann::json::exception &e) {
    throw UsageError(std::string("invalid config: ") + e.what());
  } catch (const std::invalid_argument &e) {
    throw UsageError(std::string("invalid config: ") + e.what());
  }
}

std::size_t RunReport::solved() const {
  return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const ProblemRow &r) {
    return r.outcome == engine::Outcome::Refutation;
  }));
}

std::size_t RunReport::saturated() const {
  return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const ProblemRow &r) {
    return r.outcome == engine::Outcome::Saturated;
  }));
}

std::optional<std::size_t> RunReport::best_iteration() const {
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < iterations.size(); ++i) {
    if (!best || iterations[i].solved > iterations[*best].solved) best = i;
  }
  return best;
}

nlohmann::json report_to_json(const RunReport &r, bool timing) {
  nlohmann::json rows = nlohmann::json::array();
  for (const ProblemRow &p : r.rows) {
    nlohmann::json row{{"problem", p.problem},
                       {"outcome", engine::outcome_name(p.outcome)},
                       {"steps", p.steps},
                       {"proof_length", p.proof_length},
                       {"verified", p.verified ? nlohmann::json(*p.verified) : nlohmann::json(nullptr)}};
    if (timing) row["seconds"] = p.seconds;
    rows.push_back(std::move(row));
  }
  nlohmann::json iterations = nlohmann::json::array();
  for (const auto &s : r.iterations) iterations.push_back(rl::stats_to_json(s, timing));
  nlohmann::json j{{"command", r.command},
                   {"policy", r.policy},
                   {"seed", r.seed},
                   {"problems", std::move(rows)},
                   {"totals", {{"attempted", r.rows.size()}, {"solved", r.solved()}, {"saturated", r.saturated()}}},
                   {"iterations", std::move(iterations)}};
  if (auto best = r.best_iteration()) {
    j["best_iteration"] = {{"iteration", r.iterations[*best].iteration}, {"solved", r.iterations[*best].solved}};
  } else {
    j["best_iteration"] = nullptr;
  }
  return j;
}

std::string iteration_table(const RunReport &r) {
  std::ostringstream out;
  out << std::left << std::setw(6) << "iter" << std::right << std::setw(8) << "solved" << std::setw(12) << "mean steps"
      << std::setw(12) << "mean proof" << std::setw(12) << "mean loss" << std::setw(8) << "tau" << '\n';
  for (const auto &s : r.iterations) {
    out << std::left << std::setw(6) << s.iteration << std::right << std::setw(8) << s.solved << std::fixed
        << std::setprecision(2) << std::setw(12) << s.mean_proof_steps << std::setw(12) << s.mean_proof_length
        << std::setprecision(5) << std::setw(12) << s.mean_loss << std::setprecision(4) << std::setw(8)
        << s.temperature << '\n';
    out.unsetf(std::ios::fixed);
  }
  return out.str();
}

std::unique_ptr<engine::Policy> make_policy(const std::string &spec, const rl::SamplingConfig &sampling) {
  if (spec == "baseline") return std::make_unique<engine::AgeWeightPolicy>();
  if (spec == "bfs") return std::make_unique<engine::BreadthFirstPolicy>();
  if (spec == "random") return std::make_unique<engine::UniformRandomPolicy>();
  if (!fs::exists(spec)) {
    throw UsageError("unknown policy '" + spec + "' (expected baseline, bfs, random or a checkpoint file)");
  }
  try {
    rl::Checkpoint cp = rl::load_checkpoint(spec);
    auto params = std::make_shared<const nn::PolicyParameters>(std::move(cp.params));
    return std::make_unique<rl::NeuralPolicy>(std::move(params), cp.vectorizer, sampling);
  } catch (const rl::CheckpointError &e) {
    throw UsageError(std::string("bad checkpoint: ") + e.what());
  }
}

RunReport cmd_solve(const RunConfig &cfg, std::ostream &log) {
  return run_policy(cfg, "solve", rl::SamplingConfig{cfg.trainer.temperature, cfg.trainer.threshold}, log);
}

RunReport cmd_eval(const RunConfig &cfg, std::ostream &log) {
  if (cfg.policy == "baseline" || cfg.policy == "bfs" || cfg.policy == "random") {
    throw UsageError("eval needs a checkpoint given with --policy");
  }
  return run_policy(cfg, "eval", rl::SamplingConfig{1.0, 0}, log);
}

RunReport cmd_train(const RunConfig &cfg, std::ostream &log) {
  const auto problems = load_problems(collect_problem_files(cfg.inputs));
  if (problems.empty()) throw UsageError("no problems given");
  prepare_out(cfg.out);
  rl::TrainerConfig tc = cfg.trainer;
  tc.seed = cfg.seed;
  RunReport report;
  report.command = "train";
  report.policy = "neural";
  report.seed = cfg.seed;
  if (cfg.iterations == 0) {
    if (cfg.out) write_file(*cfg.out / "report.json", report_to_json(report, cfg.timing).dump(2) + "\n");
    return report;
  }
  rl::Trainer trainer(tc, problems);
  std::ofstream stats;
  if (cfg.out) {
    stats.open(*cfg.out / "stats.jsonl", std::ios::binary);
    if (!stats) throw UsageError("cannot write stats to '" + cfg.out->string() + "'");
  }
  for (std::size_t k = 0; k < cfg.iterations; ++k) {
    rl::IterationStats s = trainer.run_iteration();
    log << "iteration " << s.iteration << ": solved " << s.solved << "/" << s.attempted << ", mean steps "
        << s.mean_proof_steps << ", mean loss " << s.mean_loss << ", tau " << s.temperature << std::endl;
    if (cfg.out) {
      stats << rl::stats_to_json(s, cfg.timing).dump() << '\n' << std::flush;
      std::ostringstream name;
      name << "checkpoint-" << std::setw(3) << std::setfill('0') << s.iteration << ".json";
      rl::save_checkpoint(*cfg.out / name.str(), trainer.parameters(), tc.vectorizer);
    }
    report.iterations.push_back(std::move(s));
  }
  for (const rl::ProblemStats &p : report.iterations.back().problems) {
    report.rows.push_back(ProblemRow{p.problem, p.outcome, p.steps, p.proof_length, p.seconds, std::nullopt, {}});
  }
  log << iteration_table(report);
  if (auto best = report.best_iteration()) {
    log << "best iteration " << report.iterations[*best].iteration << ": solved " << report.iterations[*best].solved
        << "/" << problems.size() << '\n';
  }
  if (cfg.out) write_file(*cfg.out / "report.json", report_to_json(report, cfg.timing).dump(2) + "\n");
  return report;
}

engine::VerifyResult cmd_verify(const fs::path &dump, const std::optional<fs::path> &problem) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_file(dump));
  } catch (const nlohmann::json::exception &e) {
    return engine::VerifyResult{false, std::nullopt, std::string("malformed dump: ") + e.what()};
  }
  if (problem) {
    const auto ps = load_problems({*problem});
    return engine::verify_dump(j, &ps.front());
  }
  return engine::verify_dump(j, nullptr);
}

}  // namespace proofpilot::harness
