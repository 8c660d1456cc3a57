// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <span>
#include <vector>

#include "proofpilot/common/random.hpp"
#include "proofpilot/engine/saturation.hpp"
#include "proofpilot/features/sparse_vector.hpp"
#include "proofpilot/nn/parameters.hpp"

namespace proofpilot::nn {

using features::SparseFeatureVector;
using fol::ClauseId;

enum class Mode { Train, Eval };

/// Intermediate values of one embedding pass, kept for backprop.
struct EmbedTrace {
  SparseFeatureVector input;
  std::vector<Eigen::VectorXd> pre;   // W x + b per layer
  std::vector<Eigen::VectorXd> post;  // after ReLU and dropout
  std::vector<Eigen::VectorXd> mask;  // dropout scale per unit (empty when none)
};

/// k fully-connected ReLU layers mapping a sparse clause vector to R^e.
/// In train mode inverted dropout follows every layer but the last.
Eigen::VectorXd embed(const SparseFeatureVector &v, const PolicyParameters &params, Mode mode,
                      Rng *rng = nullptr, EmbedTrace *trace = nullptr);

/// Element-wise mean of the negated-conjecture embeddings.
Eigen::VectorXd pool_conjecture(std::span<const Eigen::VectorXd> embeddings);

struct CombineTrace {
  Eigen::VectorXd input;   // h_p || h_c
  Eigen::VectorXd hidden;  // pre-activation of F's hidden layer
};

/// h_p + h_c + F(h_p || h_c), with F a one-hidden-layer ReLU network.
Eigen::VectorXd combine(const Eigen::VectorXd &h_p, const Eigen::VectorXd &h_c,
                        const PolicyParameters &params, CombineTrace *trace = nullptr);

/// H = A^T W_a C: scores of M actions (columns of A) against N processed
/// clauses (columns of C).
Eigen::MatrixXd attention(const Eigen::MatrixXd &A, const Eigen::MatrixXd &C,
                          const Eigen::Ref<const RowMatrix> &W_a);

/// Numerically stable softmax.
std::vector<double> softmax(std::span<const double> scores);

/// Row-wise max pooling of H followed by a softmax over actions. `argmax`
/// receives the pooled column of every row (first on ties).
std::vector<double> action_distribution(const Eigen::MatrixXd &H, std::vector<Eigen::Index> *argmax = nullptr,
                                        std::vector<double> *scores = nullptr);

/// Sparse clause features indexed by clause id for one episode, plus the
/// clauses pooled into the conjecture representation.
struct FeatureTable {
  std::vector<SparseFeatureVector> rows;
  std::vector<ClauseId> conjecture;
};

/// One proof state as seen by the network.
struct StateInput {
  const FeatureTable &features;
  std::span<const ClauseId> processed;
  std::span<const engine::Action> actions;
};

/// Everything backward() needs from a forward pass. Embedding and combiner
/// intermediates are stored one column per clause. `inputs` points into the
/// FeatureTable passed to forward(), which must outlive the cache.
struct ForwardCache {
  Mode mode = Mode::Eval;
  std::vector<ClauseId> unique;  // clauses embedded, one column each
  std::vector<const SparseFeatureVector *> inputs;
  std::vector<Eigen::MatrixXd> pre;   // per embedding layer, e x U
  std::vector<Eigen::MatrixXd> post;  // per embedding layer, after ReLU and dropout
  std::vector<Eigen::MatrixXd> mask;  // per embedding layer, empty when no dropout
  Eigen::MatrixXd embeddings;         // e x U
  std::vector<Eigen::Index> processed_cols;
  std::vector<Eigen::Index> action_cols;
  std::vector<Eigen::Index> conj_cols;
  std::vector<std::uint32_t> action_rules;
  Eigen::VectorXd conjecture;  // pooled h_c
  bool cold_start = false;
  Eigen::MatrixXd combine_input;   // 2e x N, h_p || h_c
  Eigen::MatrixXd combine_hidden;  // pre-activation of F's hidden layer
  Eigen::MatrixXd C;  // e x N
  RowMatrix P;        // U x e, clause part of A^T W_a
  Eigen::MatrixXd H;  // M x N
  std::vector<Eigen::Index> argmax;
  std::vector<double> scores;
  std::vector<double> probs;
};

/// Full pipeline: embed, pool conjecture, combine processed clauses, attend,
/// pool and normalize. With no processed clause the pooled conjecture
/// stands in as the single column of C.
ForwardCache forward(const StateInput &input, const PolicyParameters &params, Mode mode,
                     Rng *rng = nullptr);

/// Accumulates into `grad` the gradient of a scalar loss whose derivative
/// with respect to the pooled action scores is `dscores`. Dropout masks are
/// replayed from the cache.
void backward(const ForwardCache &cache, std::span<const double> dscores,
              const PolicyParameters &params, std::span<double> grad);

}  // namespace proofpilot::nn
