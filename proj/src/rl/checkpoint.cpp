// SPDX-License-Identifier: Apache-2.0
#include "proofpilot/rl/checkpoint.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "proofpilot/features/md5.hpp"

namespace proofpilot::rl {

namespace {

constexpr const char *kFormat = "proofpilot-checkpoint";
constexpr int kVersion = 1;

}  // namespace

std::string config_hash(const nn::NetworkConfig &network, const features::VectorizerConfig &vectorizer) {
  const nlohmann::json j{{"network", network}, {"vectorizer", vectorizer}};
  const auto digest = features::md5(j.dump());
  std::string hex;
  char buf[3];
  for (std::uint8_t b : digest) {
    std::snprintf(buf, sizeof buf, "%02x", b);
    hex += buf;
  }
  return hex;
}

nlohmann::json checkpoint_to_json(const nn::PolicyParameters &params, const features::VectorizerConfig &vectorizer) {
  nlohmann::json tensors = nlohmann::json::array();
  for (const nn::TensorSpec &t : params.tensors()) {
    std::vector<double> data(params.values().begin() + static_cast<std::ptrdiff_t>(t.offset),
                             params.values().begin() + static_cast<std::ptrdiff_t>(t.offset + t.size()));
    tensors.push_back({{"name", t.name}, {"shape", {t.rows, t.cols}}, {"data", std::move(data)}});
  }
  return nlohmann::json{{"format", kFormat},
                        {"version", kVersion},
                        {"seed", params.seed()},
                        {"config_hash", config_hash(params.config(), vectorizer)},
                        {"config", {{"network", params.config()}, {"vectorizer", vectorizer}}},
                        {"tensors", std::move(tensors)}};
}

Checkpoint checkpoint_from_json(const nlohmann::json &j) {
  try {
    if (j.at("format") != kFormat) throw CheckpointError("not a proofpilot checkpoint");
    if (j.at("version") != kVersion) throw CheckpointError("unsupported checkpoint version");
    const auto network = j.at("config").at("network").get<nn::NetworkConfig>();
    const auto vectorizer = j.at("config").at("vectorizer").get<features::VectorizerConfig>();
    if (j.at("config_hash") != config_hash(network, vectorizer)) throw CheckpointError("config hash mismatch");
    if (vectorizer.dimension() != network.input_dim) {
      throw CheckpointError("vectorizer dimension does not match network input");
    }
    Checkpoint cp{nn::PolicyParameters(network), vectorizer};
    cp.params.set_seed(j.at("seed").get<std::uint64_t>());
    const auto &tensors = j.at("tensors");
    if (tensors.size() != cp.params.tensors().size()) throw CheckpointError("tensor count mismatch");
    for (std::size_t i = 0; i < tensors.size(); ++i) {
      const nn::TensorSpec &spec = cp.params.tensors()[i];
      const auto &t = tensors[i];
      if (t.at("name") != spec.name || t.at("shape") != nlohmann::json{spec.rows, spec.cols}) {
        throw CheckpointError("tensor '" + spec.name + "' has an unexpected name or shape");
      }
      const auto data = t.at("data").get<std::vector<double>>();
      if (data.size() != spec.size()) throw CheckpointError("tensor '" + spec.name + "' has the wrong size");
      std::copy(data.begin(), data.end(), cp.params.values().begin() + static_cast<std::ptrdiff_t>(spec.offset));
    }
    if (!cp.params.all_finite()) throw CheckpointError("checkpoint contains non-finite values");
    return cp;
  } catch (const nlohmann::json::exception &e) {
    throw CheckpointError(std::string("malformed checkpoint: ") + e.what());
  } catch (const nn::ShapeError &e) {
    throw CheckpointError(std::string("invalid checkpoint config: ") + e.what());
  }
}

void save_checkpoint(const std::filesystem::path &path, const nn::PolicyParameters &params,
                     const features::VectorizerConfig &vectorizer) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CheckpointError("cannot write checkpoint " + path.string());
  out << checkpoint_to_json(params, vectorizer).dump() << '\n';
  if (!out) throw CheckpointError("failed writing checkpoint " + path.string());
}

Checkpoint load_checkpoint(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CheckpointError("cannot read checkpoint " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(ss.str());
  } catch (const nlohmann::json::exception &e) {
    throw CheckpointError("malformed checkpoint " + path.string() + ": " + e.what());
  }
  return checkpoint_from_json(j);
}

}  // namespace proofpilot::rl
