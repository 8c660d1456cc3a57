// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <vector>

#include "json.hpp"
#include "proofpilot/features/vectorizer.hpp"
#include "proofpilot/rl/examples.hpp"
#include "proofpilot/rl/neural_policy.hpp"
#include "proofpilot/rl/optimizer.hpp"

namespace proofpilot::rl {

enum class TemperatureSchedule { PerEpisode, PerIteration };

struct TrainerConfig {
  double lambda = 0.004;
  double temperature = 1.13;
  std::uint64_t threshold = 11;
  double temperature_decay = 0.9998;
  TemperatureSchedule schedule = TemperatureSchedule::PerEpisode;
  AdamConfig adam;
  std::size_t batch_size = 32;
  std::size_t epochs = 15;
  std::size_t window = 20;
  RewardNormalization normalization = RewardNormalization::None;
  bool dropout_in_training = true;
  bool include_failed_episodes = false;
  std::uint64_t seed = 0;
  engine::Limits limits;
  std::size_t jobs = 1;
  nn::NetworkConfig network;  // input_dim follows the vectorizer
  features::VectorizerConfig vectorizer;

  void validate() const;
};

void to_json(nlohmann::json &j, const TrainerConfig &c);
/// Fields absent from `j` keep their current values.
void from_json(const nlohmann::json &j, TrainerConfig &c);

struct ProblemStats {
  std::string problem;
  engine::Outcome outcome = engine::Outcome::StepLimit;
  std::size_t steps = 0;
  std::size_t proof_length = 0;
  double seconds = 0.0;
};

struct IterationStats {
  std::size_t iteration = 0;
  double temperature = 0.0;
  std::size_t attempted = 0;
  std::size_t solved = 0;
  double mean_proof_steps = 0.0;    // episode steps over solved problems
  double median_proof_steps = 0.0;
  double mean_proof_length = 0.0;   // proof steps over solved problems
  double mean_loss = 0.0;
  std::size_t updates = 0;
  std::size_t examples_added = 0;
  std::size_t buffer_size = 0;
  std::vector<ProblemStats> problems;
};

/// Stats as JSON. Wall-clock fields are only written when `timing` is set,
/// so the default form is reproducible byte for byte.
nlohmann::json stats_to_json(const IterationStats &s, bool timing = false);

/// Tabula-rasa training loop: roll out every problem with the current
/// policy, turn solved episodes into rewarded examples, then fit the policy
/// to the buffered examples of the last `window` iterations.
class Trainer {
 public:
  Trainer(TrainerConfig config, std::vector<fol::Problem> corpus);

  IterationStats run_iteration();

  const TrainerConfig &config() const { return config_; }
  const nn::PolicyParameters &parameters() const { return *params_; }
  std::shared_ptr<const nn::PolicyParameters> snapshot() const { return params_; }
  std::size_t iteration() const { return iteration_; }
  std::size_t episodes_completed() const { return episodes_; }
  const ExampleBuffer &buffer() const { return buffer_; }
  const NormalizationContext &normalization_context() const { return norm_; }

 private:
  double temperature_for(std::size_t problem_index) const;

  TrainerConfig config_;
  std::vector<fol::Problem> corpus_;
  std::shared_ptr<nn::PolicyParameters> params_;
  AdamState adam_;
  ExampleBuffer buffer_;
  NormalizationContext norm_;
  std::size_t iteration_ = 0;
  std::size_t episodes_ = 0;
};

/// Stream tags for derive_seed.
enum SeedStream : std::uint64_t { kInitStream = 1, kRolloutStream = 2, kTrainStream = 3, kEvalStream = 4 };

}  // namespace proofpilot::rl
