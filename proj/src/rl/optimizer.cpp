// SPDX-License-Identifier: Apache-2.0
#include "proofpilot/rl/optimizer.hpp"

#include <algorithm>
#include <cmath>

namespace proofpilot::rl {

namespace {

struct LogProbs {
  std::vector<double> probs;
  std::vector<double> logp;
  double entropy = 0.0;
};

// Log-softmax straight from the pooled scores so tiny probabilities keep a
// finite logarithm.
LogProbs log_softmax(std::span<const double> scores) {
  double top = scores[0];
  for (double s : scores) top = std::max(top, s);
  double z = 0.0;
  for (double s : scores) z += std::exp(s - top);
  const double log_z = top + std::log(z);
  LogProbs out;
  for (double s : scores) {
    out.logp.push_back(s - log_z);
    out.probs.push_back(std::exp(s - log_z));
  }
  for (std::size_t i = 0; i < scores.size(); ++i) out.entropy -= out.probs[i] * out.logp[i];
  return out;
}

}  // namespace

std::vector<double> score_gradient(std::span<const double> probs, std::size_t action, double reward,
                                   double lambda) {
  double entropy = 0.0;
  for (double p : probs) {
    if (p > 0.0) entropy -= p * std::log(p);
  }
  std::vector<double> g(probs.size());
  for (std::size_t i = 0; i < probs.size(); ++i) {
    const double onehot = i == action ? 1.0 : 0.0;
    const double plogp = probs[i] > 0.0 ? probs[i] * (std::log(probs[i]) + entropy) : 0.0;
    g[i] = -reward * (onehot - probs[i]) + lambda * plogp;
  }
  return g;
}

LossResult compute_loss(std::span<const TrainingExample *const> batch, const nn::PolicyParameters &params,
                        double lambda, nn::Mode mode, Rng *rng) {
  if (batch.empty()) throw std::invalid_argument("compute_loss: empty batch");
  LossResult out;
  out.grad.assign(params.size(), 0.0);
  const double inv_b = 1.0 / static_cast<double>(batch.size());
  for (const TrainingExample *ex : batch) {
    const engine::StateSnapshot state = ex->state();
    const nn::StateInput input{*ex->episode->features, state.processed, state.actions};
    const nn::ForwardCache cache = nn::forward(input, params, mode, rng);
    if (ex->action >= cache.scores.size()) throw std::out_of_range("compute_loss: chosen action out of range");
    const LogProbs lp = log_softmax(cache.scores);
    out.policy -= ex->reward * lp.logp[ex->action] * inv_b;
    out.entropy += lp.entropy * inv_b;
    // dL/ds_i = -r (e_a - p)_i + lambda p_i (log p_i + H)
    std::vector<double> ds(lp.probs.size());
    for (std::size_t i = 0; i < ds.size(); ++i) {
      const double onehot = i == ex->action ? 1.0 : 0.0;
      ds[i] = (-ex->reward * (onehot - lp.probs[i]) + lambda * lp.probs[i] * (lp.logp[i] + lp.entropy)) * inv_b;
    }
    nn::backward(cache, ds, params, out.grad);
  }
  out.loss = out.policy - lambda * out.entropy;
  if (!std::isfinite(out.loss)) throw nn::NumericalError("compute_loss: non-finite loss");
  return out;
}

void adam_step(std::span<double> params, std::span<const double> grad, AdamState &state,
               const AdamConfig &cfg) {
  if (grad.size() != params.size()) throw nn::ShapeError("adam_step: gradient size mismatch");
  if (state.m.empty()) {
    state.m.assign(params.size(), 0.0);
    state.v.assign(params.size(), 0.0);
  }
  if (state.m.size() != params.size()) throw nn::ShapeError("adam_step: optimizer state size mismatch");
  ++state.t;
  const double c1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(state.t));
  const double c2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(state.t));
  for (std::size_t i = 0; i < params.size(); ++i) {
    const double g = grad[i] + cfg.weight_decay * params[i];
    state.m[i] = cfg.beta1 * state.m[i] + (1.0 - cfg.beta1) * g;
    state.v[i] = cfg.beta2 * state.v[i] + (1.0 - cfg.beta2) * g * g;
    const double step = cfg.lr * (state.m[i] / c1) / (std::sqrt(state.v[i] / c2) + cfg.eps);
    if (!std::isfinite(step)) throw nn::NumericalError("adam_step: non-finite update");
    params[i] -= step;
  }
}

}  // namespace proofpilot::rl
