// SPDX-License-Identifier: Apache-2.0
#include "proofpilot/nn/network.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace proofpilot::nn {

namespace {

Eigen::VectorXd relu(const Eigen::VectorXd &x) { return x.cwiseMax(0.0); }

void require_finite(const Eigen::MatrixXd &m, const char *what) {
  if (!m.allFinite()) throw NumericalError(std::string("non-finite values in ") + what);
}

}  // namespace

Eigen::VectorXd embed(const SparseFeatureVector &v, const PolicyParameters &params, Mode mode,
                      Rng *rng, EmbedTrace *trace) {
  const NetworkConfig &cfg = params.config();
  if (v.dim() != cfg.input_dim) {
    throw ShapeError("embed: feature dimension " + std::to_string(v.dim()) + " != network input " +
                     std::to_string(cfg.input_dim));
  }
  const bool dropout = mode == Mode::Train && cfg.dropout > 0.0;
  if (dropout && rng == nullptr) throw std::invalid_argument("embed: train mode needs a dropout rng");
  if (trace) *trace = EmbedTrace{v, {}, {}, {}};

  Eigen::VectorXd x;
  for (std::uint32_t l = 0; l < cfg.layers; ++l) {
    const auto W = params.matrix(params.embed_weight_index(l));
    Eigen::VectorXd pre = params.vector(params.embed_bias_index(l));
    if (l == 0) {
      for (const auto &[i, value] : v.entries()) pre.noalias() += value * W.col(i);
    } else {
      pre.noalias() += W * x;
    }
    Eigen::VectorXd post = relu(pre);
    Eigen::VectorXd mask;
    if (dropout && l + 1 < cfg.layers) {
      mask.resize(post.size());
      const double keep = 1.0 - cfg.dropout;
      for (Eigen::Index k = 0; k < mask.size(); ++k) mask[k] = uniform01(*rng) < keep ? 1.0 / keep : 0.0;
      post = post.cwiseProduct(mask);
    }
    if (trace) {
      trace->pre.push_back(pre);
      trace->post.push_back(post);
      trace->mask.push_back(std::move(mask));
    }
    x = std::move(post);
  }
  if (!x.allFinite()) throw NumericalError("embed: non-finite output");
  return x;
}

Eigen::VectorXd pool_conjecture(std::span<const Eigen::VectorXd> embeddings) {
  if (embeddings.empty()) throw std::invalid_argument("pool_conjecture: no conjecture clauses");
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(embeddings.front().size());
  for (const auto &h : embeddings) {
    if (h.size() != sum.size()) throw ShapeError("pool_conjecture: inconsistent widths");
    sum += h;
  }
  return sum / static_cast<double>(embeddings.size());
}

Eigen::VectorXd combine(const Eigen::VectorXd &h_p, const Eigen::VectorXd &h_c,
                        const PolicyParameters &params, CombineTrace *trace) {
  const Eigen::Index e = params.width();
  if (h_p.size() != e || h_c.size() != e) throw ShapeError("combine: operands must have width e");
  Eigen::VectorXd input(2 * e);
  input << h_p, h_c;
  Eigen::VectorXd hidden = params.vector(params.combine_hidden_bias_index());
  hidden.noalias() += params.matrix(params.combine_hidden_weight_index()) * input;
  Eigen::VectorXd out = h_p + h_c + params.vector(params.combine_out_bias_index());
  out.noalias() += params.matrix(params.combine_out_weight_index()) * relu(hidden);
  if (trace) {
    trace->input = std::move(input);
    trace->hidden = std::move(hidden);
  }
  return out;
}

Eigen::MatrixXd attention(const Eigen::MatrixXd &A, const Eigen::MatrixXd &C,
                          const Eigen::Ref<const RowMatrix> &W_a) {
  if (A.rows() != W_a.rows() || C.rows() != W_a.cols()) {
    throw ShapeError("attention: A is " + std::to_string(A.rows()) + "x" + std::to_string(A.cols()) +
                     ", W_a is " + std::to_string(W_a.rows()) + "x" + std::to_string(W_a.cols()) +
                     ", C is " + std::to_string(C.rows()) + "x" + std::to_string(C.cols()));
  }
  Eigen::MatrixXd U = A.transpose() * W_a;
  return U * C;
}

std::vector<double> softmax(std::span<const double> scores) {
  if (scores.empty()) throw std::invalid_argument("softmax: no scores");
  const double top = *std::max_element(scores.begin(), scores.end());
  if (!std::isfinite(top)) throw NumericalError("softmax: non-finite scores");
  std::vector<double> p(scores.size());
  double z = 0.0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (!std::isfinite(scores[i])) throw NumericalError("softmax: non-finite scores");
    p[i] = std::exp(scores[i] - top);
    z += p[i];
  }
  for (double &x : p) x /= z;
  return p;
}

std::vector<double> action_distribution(const Eigen::MatrixXd &H, std::vector<Eigen::Index> *argmax,
                                        std::vector<double> *scores) {
  if (H.rows() < 1 || H.cols() < 1) throw ShapeError("action_distribution: empty score matrix");
  std::vector<double> pooled(static_cast<std::size_t>(H.rows()));
  if (argmax) argmax->assign(pooled.size(), 0);
  for (Eigen::Index i = 0; i < H.rows(); ++i) {
    Eigen::Index best = 0;
    for (Eigen::Index j = 1; j < H.cols(); ++j) {
      if (H(i, j) > H(i, best)) best = j;
    }
    pooled[i] = H(i, best);
    if (argmax) (*argmax)[i] = best;
  }
  auto p = softmax(pooled);
  if (scores) *scores = std::move(pooled);
  return p;
}

ForwardCache forward(const StateInput &input, const PolicyParameters &params, Mode mode, Rng *rng) {
  const NetworkConfig &cfg = params.config();
  const Eigen::Index e = cfg.units;
  if (input.actions.empty()) throw std::invalid_argument("forward: no available actions");
  if (input.features.conjecture.empty()) throw std::invalid_argument("forward: no conjecture clauses");
  const bool dropout = mode == Mode::Train && cfg.dropout > 0.0;
  if (dropout && rng == nullptr) throw std::invalid_argument("forward: train mode needs a dropout rng");

  ForwardCache cache;
  cache.mode = mode;
  std::unordered_map<ClauseId, Eigen::Index> column;
  auto col_of = [&](ClauseId id) {
    auto [it, inserted] = column.emplace(id, static_cast<Eigen::Index>(cache.unique.size()));
    if (inserted) cache.unique.push_back(id);
    return it->second;
  };
  for (ClauseId id : input.features.conjecture) cache.conj_cols.push_back(col_of(id));
  for (ClauseId id : input.processed) cache.processed_cols.push_back(col_of(id));
  for (const engine::Action &a : input.actions) {
    cache.action_cols.push_back(col_of(a.clause));
    cache.action_rules.push_back(static_cast<std::uint32_t>(a.rule));
  }

  const auto U_count = static_cast<Eigen::Index>(cache.unique.size());
  for (ClauseId id : cache.unique) {
    if (id >= input.features.rows.size()) throw ShapeError("forward: clause without features");
    const SparseFeatureVector &v = input.features.rows[id];
    if (v.dim() != cfg.input_dim) {
      throw ShapeError("forward: feature dimension " + std::to_string(v.dim()) + " != network input " +
                       std::to_string(cfg.input_dim));
    }
    cache.inputs.push_back(&v);
  }

  // Masks are drawn clause by clause, layer by layer, as embed() draws them.
  const std::uint32_t layers = cfg.layers;
  cache.mask.resize(layers);
  if (dropout) {
    const double keep = 1.0 - cfg.dropout;
    for (std::uint32_t l = 0; l + 1 < layers; ++l) cache.mask[l].resize(e, U_count);
    for (Eigen::Index u = 0; u < U_count; ++u) {
      for (std::uint32_t l = 0; l + 1 < layers; ++l) {
        for (Eigen::Index k = 0; k < e; ++k) cache.mask[l](k, u) = uniform01(*rng) < keep ? 1.0 / keep : 0.0;
      }
    }
  }

  cache.pre.resize(layers);
  cache.post.resize(layers);
  for (std::uint32_t l = 0; l < layers; ++l) {
    const auto W = params.matrix(params.embed_weight_index(l));
    const auto b = params.vector(params.embed_bias_index(l));
    Eigen::MatrixXd &pre = cache.pre[l];
    if (l == 0) {
      // Row by row so the sparse gather reads contiguous weights.
      pre.resize(e, U_count);
      for (Eigen::Index r = 0; r < e; ++r) {
        const double *w = W.row(r).data();
        for (Eigen::Index u = 0; u < U_count; ++u) {
          double acc = b[r];
          for (const auto &[i, value] : cache.inputs[u]->entries()) acc += value * w[i];
          pre(r, u) = acc;
        }
      }
    } else {
      pre.noalias() = W * cache.post[l - 1];
      pre.colwise() += b;
    }
    cache.post[l] = pre.cwiseMax(0.0);
    if (cache.mask[l].size() > 0) cache.post[l] = cache.post[l].cwiseProduct(cache.mask[l]);
  }
  cache.embeddings = cache.post.back();
  if (!cache.embeddings.allFinite()) throw NumericalError("embed: non-finite output");

  cache.conjecture = Eigen::VectorXd::Zero(e);
  for (Eigen::Index c : cache.conj_cols) cache.conjecture += cache.embeddings.col(c);
  cache.conjecture /= static_cast<double>(cache.conj_cols.size());

  const auto N = static_cast<Eigen::Index>(cache.processed_cols.size());
  cache.cold_start = N == 0;
  if (cache.cold_start) {
    cache.C = cache.conjecture;
  } else {
    cache.combine_input.resize(2 * e, N);
    for (Eigen::Index j = 0; j < N; ++j) {
      cache.combine_input.col(j).head(e) = cache.embeddings.col(cache.processed_cols[j]);
      cache.combine_input.col(j).tail(e) = cache.conjecture;
    }
    cache.combine_hidden.noalias() = params.matrix(params.combine_hidden_weight_index()) * cache.combine_input;
    cache.combine_hidden.colwise() += params.vector(params.combine_hidden_bias_index());
    cache.C = cache.combine_input.topRows(e);
    cache.C.colwise() += cache.conjecture;
    cache.C.colwise() += params.vector(params.combine_out_bias_index());
    cache.C.noalias() += params.matrix(params.combine_out_weight_index()) * cache.combine_hidden.cwiseMax(0.0);
  }

  // An action's column of A is its clause embedding stacked on a rule one-hot,
  // so A^T W_a C splits into a per-clause term and a per-rule term.
  const auto M = static_cast<Eigen::Index>(input.actions.size());
  const auto W_a = params.matrix(params.attention_index());
  for (Eigen::Index i = 0; i < M; ++i) {
    if (cache.action_rules[i] >= cfg.num_rules) throw ShapeError("forward: rule id out of range");
  }
  cache.P.noalias() = cache.embeddings.transpose() * W_a.topRows(e);
  const Eigen::MatrixXd HP = cache.P * cache.C;
  const Eigen::MatrixXd HR = W_a.bottomRows(cfg.num_rules) * cache.C;
  cache.H.resize(M, cache.C.cols());
  for (Eigen::Index i = 0; i < M; ++i) {
    cache.H.row(i) = HP.row(cache.action_cols[i]) + HR.row(cache.action_rules[i]);
  }
  require_finite(cache.H, "attention scores");
  cache.probs = action_distribution(cache.H, &cache.argmax, &cache.scores);
  return cache;
}

void backward(const ForwardCache &cache, std::span<const double> dscores, const PolicyParameters &params,
              std::span<double> grad) {
  const NetworkConfig &cfg = params.config();
  const Eigen::Index e = cfg.units;
  const auto M = static_cast<Eigen::Index>(cache.scores.size());
  if (static_cast<Eigen::Index>(dscores.size()) != M) throw ShapeError("backward: score gradient length mismatch");
  if (grad.size() != params.size()) throw ShapeError("backward: gradient buffer has the wrong size");
  const std::span<double> g = grad;

  // Max pooling routes each row's gradient to its winning column. G and GR
  // collect the gradient of U per clause and per rule.
  const auto W_a = params.matrix(params.attention_index());
  const auto W_rule = W_a.bottomRows(cfg.num_rules);
  const auto U_count = static_cast<Eigen::Index>(cache.unique.size());
  Eigen::MatrixXd G = Eigen::MatrixXd::Zero(e, U_count);
  Eigen::MatrixXd GR = Eigen::MatrixXd::Zero(e, cfg.num_rules);
  Eigen::MatrixXd dC = Eigen::MatrixXd::Zero(e, cache.C.cols());
  for (Eigen::Index i = 0; i < M; ++i) {
    const double ds = dscores[i];
    if (ds == 0.0) continue;
    const Eigen::Index j = cache.argmax[i];
    G.col(cache.action_cols[i]) += ds * cache.C.col(j);
    GR.col(cache.action_rules[i]) += ds * cache.C.col(j);
    dC.col(j) += ds * (cache.P.row(cache.action_cols[i]) + W_rule.row(cache.action_rules[i])).transpose();
  }
  auto dW_a = params.matrix(g, params.attention_index());
  dW_a.topRows(e).noalias() += cache.embeddings * G.transpose();
  dW_a.bottomRows(cfg.num_rules) += GR.transpose();
  Eigen::MatrixXd dEmb = W_a.topRows(e) * G;

  Eigen::VectorXd dconj = Eigen::VectorXd::Zero(e);
  if (cache.cold_start) {
    dconj += dC.col(0);
  } else {
    const auto W1 = params.matrix(params.combine_hidden_weight_index());
    const auto W2 = params.matrix(params.combine_out_weight_index());
    const Eigen::MatrixXd hidden = cache.combine_hidden.cwiseMax(0.0);
    params.matrix(g, params.combine_out_weight_index()).noalias() += dC * hidden.transpose();
    params.vector(g, params.combine_out_bias_index()) += dC.rowwise().sum();
    Eigen::MatrixXd dhidden = W2.transpose() * dC;
    dhidden = dhidden.cwiseProduct((cache.combine_hidden.array() > 0.0).cast<double>().matrix());
    params.matrix(g, params.combine_hidden_weight_index()).noalias() += dhidden * cache.combine_input.transpose();
    params.vector(g, params.combine_hidden_bias_index()) += dhidden.rowwise().sum();
    const Eigen::MatrixXd dinput = W1.transpose() * dhidden;
    for (Eigen::Index j = 0; j < dC.cols(); ++j) {
      dEmb.col(cache.processed_cols[j]) += dC.col(j) + dinput.col(j).head(e);
    }
    dconj += dC.rowwise().sum() + dinput.bottomRows(e).rowwise().sum();
  }
  const double share = 1.0 / static_cast<double>(cache.conj_cols.size());
  for (Eigen::Index c : cache.conj_cols) dEmb.col(c) += share * dconj;

  Eigen::MatrixXd dout = std::move(dEmb);
  for (std::uint32_t l = cfg.layers; l-- > 0;) {
    Eigen::MatrixXd dpre = dout.cwiseProduct((cache.pre[l].array() > 0.0).cast<double>().matrix());
    if (cache.mask[l].size() > 0) dpre = dpre.cwiseProduct(cache.mask[l]);
    params.vector(g, params.embed_bias_index(l)) += dpre.rowwise().sum();
    auto dW = params.matrix(g, params.embed_weight_index(l));
    if (l == 0) {
      for (Eigen::Index r = 0; r < e; ++r) {
        double *gw = dW.row(r).data();
        for (Eigen::Index u = 0; u < U_count; ++u) {
          const double d = dpre(r, u);
          if (d == 0.0) continue;
          for (const auto &[i, value] : cache.inputs[u]->entries()) gw[i] += value * d;
        }
      }
    } else {
      dW.noalias() += dpre * cache.post[l - 1].transpose();
      dout.noalias() = params.matrix(params.embed_weight_index(l)).transpose() * dpre;
    }
  }
}

}  // namespace proofpilot::nn
