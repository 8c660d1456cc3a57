// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "proofpilot/rl/examples.hpp"

namespace proofpilot::rl {

struct LossResult {
  double loss = 0.0;
  double policy = 0.0;   // -mean(r log p_a)
  double entropy = 0.0;  // mean policy entropy
  nn::ParameterBuffer grad;
};

/// Entropy-regularized policy-gradient loss over `batch`, recomputing the
/// network output for every example, with its exact parameter gradient.
/// `rng` drives dropout in train mode.
LossResult compute_loss(std::span<const TrainingExample *const> batch, const nn::PolicyParameters &params,
                        double lambda, nn::Mode mode, Rng *rng = nullptr);

/// Gradient of one example's loss term with respect to its pooled scores.
std::vector<double> score_gradient(std::span<const double> probs, std::size_t action, double reward,
                                   double lambda);

struct AdamConfig {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  double weight_decay = 0.0;
};

struct AdamState {
  std::vector<double> m;
  std::vector<double> v;
  std::uint64_t t = 0;
};

/// One bias-corrected Adam update of `params` in place.
void adam_step(std::span<double> params, std::span<const double> grad, AdamState &state,
               const AdamConfig &cfg);

}  // namespace proofpilot::rl
