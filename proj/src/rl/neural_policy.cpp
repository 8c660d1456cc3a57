// SPDX-License-Identifier: Apache-2.0
#include "proofpilot/rl/neural_policy.hpp"

#include <limits>

#include "proofpilot/rl/sampling.hpp"

namespace proofpilot::rl {

NeuralPolicy::NeuralPolicy(std::shared_ptr<const nn::PolicyParameters> params,
                           features::VectorizerConfig vectorizer, SamplingConfig sampling)
    : params_(std::move(params)), vectorizer_(vectorizer), sampling_(sampling) {
  if (!params_) throw std::invalid_argument("neural policy: no parameters");
  vectorizer_.validate();
  if (vectorizer_.dimension() != params_->config().input_dim) {
    throw nn::ShapeError("neural policy: vectorizer dimension " + std::to_string(vectorizer_.dimension()) +
                         " does not match network input " + std::to_string(params_->config().input_dim));
  }
}

void NeuralPolicy::begin_episode(const engine::Saturation &engine) {
  table_ = std::make_shared<nn::FeatureTable>();
  embeddings_.clear();
  columns_.clear();
  slots_.clear();
  table_->conjecture = engine.conjecture_clauses();
  if (table_->conjecture.empty()) {
    for (ClauseId id = 0; id < engine.num_inputs(); ++id) table_->conjecture.push_back(id);
  }
  sync(engine);
  std::vector<Eigen::VectorXd> conj;
  for (ClauseId id : table_->conjecture) conj.push_back(embeddings_[id]);
  conjecture_ = nn::pool_conjecture(conj);
}

NeuralPolicy::ActionSlot &NeuralPolicy::slot(const engine::Action &a) {
  const std::size_t i = std::size_t{a.clause} * params_->config().num_rules + static_cast<std::size_t>(a.rule);
  if (i >= slots_.size()) slots_.resize(i + 1);
  return slots_[i];
}

void NeuralPolicy::sync(const engine::Saturation &engine) {
  const auto &clauses = engine.derivation().clauses;
  while (table_->rows.size() < clauses.size()) {
    const fol::Clause &c = clauses[table_->rows.size()];
    table_->rows.push_back(features::vectorize_clause(c, engine.symbols(), vectorizer_));
    embeddings_.push_back(nn::embed(table_->rows.back(), *params_, nn::Mode::Eval));
  }
}

std::vector<double> NeuralPolicy::distribution(const engine::Saturation &engine) {
  if (!table_) throw std::logic_error("neural policy: begin_episode was not called");
  sync(engine);
  const auto &state = engine.state();
  if (state.actions.empty()) throw std::invalid_argument("neural policy: no available actions");
  const nn::PolicyParameters &p = *params_;
  const Eigen::Index e = p.width();
  const auto W_a = p.matrix(p.attention_index());

  // A new processed clause adds a column; the first one replaces the
  // cold-start conjecture column, which invalidates every pooled score.
  const bool was_cold = columns_.empty();
  const std::size_t first_new = columns_.size();
  for (std::size_t j = first_new; j < state.processed.size(); ++j) {
    columns_.push_back(nn::combine(embeddings_[state.processed[j]], conjecture_, p));
  }
  const bool reset = was_cold && !columns_.empty();

  for (const engine::Action &a : state.actions) {
    ActionSlot &s = slot(a);
    if (!s.ready) {
      s.u = W_a.topRows(e).transpose() * embeddings_[a.clause];
      s.u += W_a.row(e + static_cast<Eigen::Index>(a.rule)).transpose();
    }
    if (!s.ready || reset) {
      s.score = -std::numeric_limits<double>::infinity();
      if (columns_.empty()) {
        s.score = s.u.dot(conjecture_);
      } else {
        for (const auto &c : columns_) s.score = std::max(s.score, s.u.dot(c));
      }
      s.ready = true;
    } else {
      for (std::size_t j = first_new; j < columns_.size(); ++j) s.score = std::max(s.score, s.u.dot(columns_[j]));
    }
  }
  std::vector<double> scores;
  scores.reserve(state.actions.size());
  for (const engine::Action &a : state.actions) scores.push_back(slot(a).score);
  return nn::softmax(scores);
}

engine::Decision NeuralPolicy::select(const engine::Saturation &engine, Rng &rng) {
  const std::vector<double> probs = distribution(engine);
  const std::size_t i = sample_action(probs, engine.state().step, sampling_.temperature, sampling_.threshold, rng);
  return engine::Decision{i, probs[i]};
}

}  // namespace proofpilot::rl
