// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <deque>
#include <map>
#include <span>
#include <memory>
#include <string>
#include <vector>

#include "proofpilot/engine/episode.hpp"
#include "proofpilot/nn/network.hpp"

namespace proofpilot::rl {

using fol::ClauseId;

/// What is needed to rebuild every state of one episode: clause features,
/// the clause selected at each step and the store size at each step.
struct EpisodeData {
  std::shared_ptr<const nn::FeatureTable> features;
  std::vector<ClauseId> selected;
  std::vector<std::size_t> num_clauses;
};

struct TrainingExample {
  std::string problem;
  std::shared_ptr<const EpisodeData> episode;
  std::size_t step = 0;
  std::size_t action = 0;
  double reward = 0.0;
  std::size_t iteration = 0;

  /// Processed clauses and available actions when the action was chosen.
  engine::StateSnapshot state() const;
};

/// Per-step rewards: 1/steps on proof steps of a refutation, 0 elsewhere.
std::vector<double> step_rewards(std::size_t num_steps, std::span<const engine::ProofStep> proof, bool solved);

/// One example per step of `episode`; `features` must cover every clause
/// the episode's states refer to.
std::vector<TrainingExample> assign_rewards(const engine::EpisodeResult &episode,
                                            std::shared_ptr<const nn::FeatureTable> features,
                                            std::size_t iteration);

enum class RewardNormalization { None, BaselineSteps, RelativeBest };

const char *normalization_name(RewardNormalization mode);
RewardNormalization parse_normalization(const std::string &name);

struct NormalizationContext {
  std::map<std::string, double> baseline_steps;  // steps the baseline needed per problem
  std::map<std::string, double> best_reward;     // best step reward seen per problem
};

/// Rescales rewards in place. Throws std::out_of_range when a required
/// baseline or best-reward record is missing.
void normalize_rewards(std::vector<TrainingExample> &examples, RewardNormalization mode,
                       const NormalizationContext &context);

/// Examples grouped by iteration; keeps the most recent `window` iterations.
class ExampleBuffer {
 public:
  explicit ExampleBuffer(std::size_t window);

  /// Stores the examples of iteration `iteration` and evicts every
  /// iteration at or below `iteration - window`.
  void add(std::size_t iteration, std::vector<TrainingExample> examples);

  std::size_t window() const { return window_; }
  std::size_t size() const;
  std::vector<const TrainingExample *> all() const;
  std::vector<std::size_t> iterations() const;

 private:
  std::size_t window_;
  std::map<std::size_t, std::vector<TrainingExample>> by_iteration_;
};

}  // namespace proofpilot::rl
