// SPDX-License-Identifier: Apache-2.0
#include "proofpilot/rl/examples.hpp"

#include <stdexcept>

namespace proofpilot::rl {

std::vector<double> step_rewards(std::size_t num_steps, std::span<const engine::ProofStep> proof, bool solved) {
  std::vector<double> r(num_steps, 0.0);
  if (!solved || num_steps == 0) return r;
  const double value = 1.0 / static_cast<double>(num_steps);
  for (const engine::ProofStep &p : proof) {
    if (p.step >= num_steps) throw std::out_of_range("proof step beyond the episode");
    r[p.step] = value;
  }
  return r;
}

std::vector<TrainingExample> assign_rewards(const engine::EpisodeResult &episode,
                                            std::shared_ptr<const nn::FeatureTable> features,
                                            std::size_t iteration) {
  const std::vector<double> rewards = step_rewards(episode.steps.size(), episode.proof, episode.solved());
  auto data = std::make_shared<EpisodeData>();
  data->features = std::move(features);
  for (const engine::StepRecord &s : episode.steps) {
    if (s.num_clauses > data->features->rows.size()) {
      throw std::invalid_argument("assign_rewards: features do not cover the episode");
    }
    data->selected.push_back(s.action.clause);
    data->num_clauses.push_back(s.num_clauses);
  }
  std::vector<TrainingExample> out;
  out.reserve(episode.steps.size());
  for (std::size_t t = 0; t < episode.steps.size(); ++t) {
    out.push_back(TrainingExample{episode.problem, data, t, episode.steps[t].action_index, rewards[t], iteration});
  }
  return out;
}

engine::StateSnapshot TrainingExample::state() const {
  return engine::snapshot_from(std::span(episode->selected).first(step), episode->num_clauses.at(step));
}

const char *normalization_name(RewardNormalization mode) {
  switch (mode) {
    case RewardNormalization::None:
      return "none";
    case RewardNormalization::BaselineSteps:
      return "baseline_steps";
    case RewardNormalization::RelativeBest:
      return "relative_best";
  }
  return "unknown";
}

RewardNormalization parse_normalization(const std::string &name) {
  if (name == "none") return RewardNormalization::None;
  if (name == "baseline_steps") return RewardNormalization::BaselineSteps;
  if (name == "relative_best") return RewardNormalization::RelativeBest;
  throw std::invalid_argument("unknown reward normalization '" + name + "'");
}

void normalize_rewards(std::vector<TrainingExample> &examples, RewardNormalization mode,
                       const NormalizationContext &context) {
  auto record = [](const std::map<std::string, double> &m, const std::string &problem, const char *what) {
    auto it = m.find(problem);
    if (it == m.end()) throw std::out_of_range(std::string("no ") + what + " record for problem '" + problem + "'");
    return it->second;
  };
  for (TrainingExample &ex : examples) {
    switch (mode) {
      case RewardNormalization::None:
        break;
      case RewardNormalization::BaselineSteps:
        ex.reward *= record(context.baseline_steps, ex.problem, "baseline");
        break;
      case RewardNormalization::RelativeBest:
        if (ex.reward != 0.0) ex.reward /= record(context.best_reward, ex.problem, "best-reward");
        break;
    }
  }
}

ExampleBuffer::ExampleBuffer(std::size_t window) : window_(window) {
  if (window == 0) throw std::invalid_argument("example buffer: window must be positive");
}

void ExampleBuffer::add(std::size_t iteration, std::vector<TrainingExample> examples) {
  auto &slot = by_iteration_[iteration];
  for (auto &ex : examples) slot.push_back(std::move(ex));
  while (!by_iteration_.empty() && by_iteration_.begin()->first + window_ <= iteration) {
    by_iteration_.erase(by_iteration_.begin());
  }
}

std::size_t ExampleBuffer::size() const {
  std::size_t n = 0;
  for (const auto &[_, v] : by_iteration_) n += v.size();
  return n;
}

std::vector<const TrainingExample *> ExampleBuffer::all() const {
  std::vector<const TrainingExample *> out;
  for (const auto &[_, v] : by_iteration_) {
    for (const auto &ex : v) out.push_back(&ex);
  }
  return out;
}

std::vector<std::size_t> ExampleBuffer::iterations() const {
  std::vector<std::size_t> out;
  for (const auto &[k, _] : by_iteration_) out.push_back(k);
  return out;
}

}  // namespace proofpilot::rl
