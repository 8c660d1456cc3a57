// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "proofpilot/fol/clause.hpp"

namespace proofpilot::nn {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
/// Flat parameter-shaped storage. Vectorized Eigen kernels peel loops by
/// address, so a fixed base alignment keeps results independent of where
/// the buffer was allocated.
using ParameterBuffer = std::vector<double, Eigen::aligned_allocator<double>>;
using MatrixMap = Eigen::Map<RowMatrix>;
using ConstMatrixMap = Eigen::Map<const RowMatrix>;
using VectorMap = Eigen::Map<Eigen::VectorXd>;
using ConstVectorMap = Eigen::Map<const Eigen::VectorXd>;

class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct NetworkConfig {
  std::uint32_t input_dim = 0;  // sparse feature dimension
  std::uint32_t units = 161;    // embedding width e
  std::uint32_t layers = 2;     // embedding depth k
  double dropout = 0.57;
  std::uint32_t num_rules = static_cast<std::uint32_t>(fol::kNumRules);

  void validate() const;
  friend bool operator==(const NetworkConfig &, const NetworkConfig &) = default;
};

void to_json(nlohmann::json &j, const NetworkConfig &c);
void from_json(const nlohmann::json &j, NetworkConfig &c);

struct TensorSpec {
  std::string name;
  std::uint32_t rows;
  std::uint32_t cols;
  std::size_t offset;
  std::size_t size() const { return std::size_t{rows} * cols; }
};

/// All trainable weights in one flat buffer: k embedding layers, the
/// combiner feed-forward net F (2e -> e -> e) and the attention matrix W_a
/// of shape (e + |I|) x e. Gradient and optimizer buffers share the layout.
class PolicyParameters {
 public:
  explicit PolicyParameters(NetworkConfig config);

  /// Glorot-uniform weights, zero biases.
  static PolicyParameters initialized(const NetworkConfig &config, std::uint64_t seed);

  const NetworkConfig &config() const { return config_; }
  std::uint32_t width() const { return config_.units; }
  std::uint64_t seed() const { return seed_; }
  void set_seed(std::uint64_t seed) { seed_ = seed; }

  ParameterBuffer &values() { return values_; }
  const ParameterBuffer &values() const { return values_; }
  const std::vector<TensorSpec> &tensors() const { return tensors_; }
  std::size_t size() const { return values_.size(); }

  std::size_t embed_weight_index(std::uint32_t layer) const { return 2 * layer; }
  std::size_t embed_bias_index(std::uint32_t layer) const { return 2 * layer + 1; }
  std::size_t combine_hidden_weight_index() const { return 2 * config_.layers; }
  std::size_t combine_hidden_bias_index() const { return 2 * config_.layers + 1; }
  std::size_t combine_out_weight_index() const { return 2 * config_.layers + 2; }
  std::size_t combine_out_bias_index() const { return 2 * config_.layers + 3; }
  std::size_t attention_index() const { return 2 * config_.layers + 4; }

  ConstMatrixMap matrix(std::size_t tensor) const { return matrix(std::span<const double>(values_), tensor); }
  MatrixMap matrix(std::size_t tensor) { return matrix(std::span<double>(values_), tensor); }
  ConstVectorMap vector(std::size_t tensor) const { return vector(std::span<const double>(values_), tensor); }

  /// Views into any buffer laid out like `values()`.
  ConstMatrixMap matrix(std::span<const double> buffer, std::size_t tensor) const;
  MatrixMap matrix(std::span<double> buffer, std::size_t tensor) const;
  ConstVectorMap vector(std::span<const double> buffer, std::size_t tensor) const;
  VectorMap vector(std::span<double> buffer, std::size_t tensor) const;

  bool all_finite() const;

 private:
  NetworkConfig config_;
  std::uint64_t seed_ = 0;
  std::vector<TensorSpec> tensors_;
  ParameterBuffer values_;
};

}  // namespace proofpilot::nn
