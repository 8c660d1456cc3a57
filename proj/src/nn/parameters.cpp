// SPDX-License-Identifier: Apache-2.0
#include "proofpilot/nn/parameters.hpp"

#include <cmath>

#include "proofpilot/common/random.hpp"

namespace proofpilot::nn {

void NetworkConfig::validate() const {
  if (input_dim == 0) throw ShapeError("network: input dimension must be positive");
  if (units == 0) throw ShapeError("network: units must be positive");
  if (layers == 0) throw ShapeError("network: at least one embedding layer is required");
  if (!(dropout >= 0.0 && dropout < 1.0)) throw ShapeError("network: dropout must lie in [0, 1)");
  if (num_rules == 0) throw ShapeError("network: rule count must be positive");
}

void to_json(nlohmann::json &j, const NetworkConfig &c) {
  j = nlohmann::json{{"input_dim", c.input_dim},
                     {"units", c.units},
                     {"layers", c.layers},
                     {"dropout", c.dropout},
                     {"num_rules", c.num_rules}};
}

void from_json(const nlohmann::json &j, NetworkConfig &c) {
  c.input_dim = j.value("input_dim", c.input_dim);
  c.units = j.value("units", c.units);
  c.layers = j.value("layers", c.layers);
  c.dropout = j.value("dropout", c.dropout);
  c.num_rules = j.value("num_rules", c.num_rules);
}

PolicyParameters::PolicyParameters(NetworkConfig config) : config_(config) {
  config_.validate();
  const std::uint32_t e = config_.units;
  std::size_t offset = 0;
  auto add = [&](std::string name, std::uint32_t rows, std::uint32_t cols) {
    tensors_.push_back(TensorSpec{std::move(name), rows, cols, offset});
    offset += std::size_t{rows} * cols;
  };
  for (std::uint32_t l = 0; l < config_.layers; ++l) {
    add("embed." + std::to_string(l) + ".weight", e, l == 0 ? config_.input_dim : e);
    add("embed." + std::to_string(l) + ".bias", e, 1);
  }
  add("combine.hidden.weight", e, 2 * e);
  add("combine.hidden.bias", e, 1);
  add("combine.out.weight", e, e);
  add("combine.out.bias", e, 1);
  add("attention.weight", e + config_.num_rules, e);
  values_.assign(offset, 0.0);
}

PolicyParameters PolicyParameters::initialized(const NetworkConfig &config, std::uint64_t seed) {
  PolicyParameters p(config);
  p.seed_ = seed;
  Rng rng(seed);
  for (const TensorSpec &t : p.tensors_) {
    if (t.cols == 1) continue;  // biases start at zero
    const double fan = static_cast<double>(t.rows) + static_cast<double>(t.cols);
    const double bound = std::sqrt(6.0 / fan);
    for (std::size_t i = 0; i < t.size(); ++i) {
      p.values_[t.offset + i] = (2.0 * uniform01(rng) - 1.0) * bound;
    }
  }
  return p;
}

ConstMatrixMap PolicyParameters::matrix(std::span<const double> buffer, std::size_t tensor) const {
  const TensorSpec &t = tensors_.at(tensor);
  return ConstMatrixMap(buffer.data() + t.offset, t.rows, t.cols);
}

MatrixMap PolicyParameters::matrix(std::span<double> buffer, std::size_t tensor) const {
  const TensorSpec &t = tensors_.at(tensor);
  return MatrixMap(buffer.data() + t.offset, t.rows, t.cols);
}

ConstVectorMap PolicyParameters::vector(std::span<const double> buffer, std::size_t tensor) const {
  const TensorSpec &t = tensors_.at(tensor);
  return ConstVectorMap(buffer.data() + t.offset, static_cast<Eigen::Index>(t.size()));
}

VectorMap PolicyParameters::vector(std::span<double> buffer, std::size_t tensor) const {
  const TensorSpec &t = tensors_.at(tensor);
  return VectorMap(buffer.data() + t.offset, static_cast<Eigen::Index>(t.size()));
}

bool PolicyParameters::all_finite() const {
  for (double v : values_) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

}  // namespace proofpilot::nn
