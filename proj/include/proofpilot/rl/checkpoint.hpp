// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"
#include "proofpilot/features/vectorizer.hpp"
#include "proofpilot/nn/parameters.hpp"

namespace proofpilot::rl {

struct Checkpoint {
  nn::PolicyParameters params;
  features::VectorizerConfig vectorizer;
};

class CheckpointError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Hex MD5 of the canonical JSON of both configurations.
std::string config_hash(const nn::NetworkConfig &network, const features::VectorizerConfig &vectorizer);

nlohmann::json checkpoint_to_json(const nn::PolicyParameters &params, const features::VectorizerConfig &vectorizer);
Checkpoint checkpoint_from_json(const nlohmann::json &j);

void save_checkpoint(const std::filesystem::path &path, const nn::PolicyParameters &params,
                     const features::VectorizerConfig &vectorizer);
Checkpoint load_checkpoint(const std::filesystem::path &path);

}  // namespace proofpilot::rl
