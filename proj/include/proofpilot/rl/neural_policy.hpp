// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <vector>

#include "proofpilot/engine/policy.hpp"
#include "proofpilot/features/vectorizer.hpp"
#include "proofpilot/nn/network.hpp"

namespace proofpilot::rl {

using fol::ClauseId;

struct SamplingConfig {
  double temperature = 1.13;
  std::uint64_t threshold = 11;  // steps sampled before switching to argmax
};

/// Network-driven action selection. Scores are maintained incrementally:
/// clause embeddings, combined processed columns and the projected action
/// rows are computed once per clause and the max-pooled score of each action
/// is updated as processed clauses arrive. The result equals a fresh
/// eval-mode `nn::forward` on the same state.
class NeuralPolicy final : public engine::Policy {
 public:
  NeuralPolicy(std::shared_ptr<const nn::PolicyParameters> params, features::VectorizerConfig vectorizer,
               SamplingConfig sampling);

  std::string name() const override { return "neural"; }
  void begin_episode(const engine::Saturation &engine) override;
  engine::Decision select(const engine::Saturation &engine, Rng &rng) override;

  /// Action probabilities for the current state, in action order.
  std::vector<double> distribution(const engine::Saturation &engine);

  /// Sparse features of every clause seen so far in the episode.
  std::shared_ptr<const nn::FeatureTable> features() const { return table_; }

  void set_sampling(SamplingConfig s) { sampling_ = s; }
  const SamplingConfig &sampling() const { return sampling_; }

 private:
  struct ActionSlot {
    Eigen::VectorXd u;  // W_a^T a
    double score = 0.0;
    bool ready = false;
  };

  void sync(const engine::Saturation &engine);
  ActionSlot &slot(const engine::Action &a);

  std::shared_ptr<const nn::PolicyParameters> params_;
  features::VectorizerConfig vectorizer_;
  SamplingConfig sampling_;
  std::shared_ptr<nn::FeatureTable> table_;
  std::vector<Eigen::VectorXd> embeddings_;  // by clause id
  Eigen::VectorXd conjecture_;
  std::vector<Eigen::VectorXd> columns_;  // combined processed clauses
  std::vector<ActionSlot> slots_;         // by clause id * |I| + rule
};

}  // namespace proofpilot::rl
