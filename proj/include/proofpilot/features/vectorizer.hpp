// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <string>
#include <vector>

#include "json.hpp"
#include "proofpilot/features/chains.hpp"
#include "proofpilot/features/walks.hpp"

namespace proofpilot::features {

struct VectorizerConfig {
  std::uint32_t d = 645;         // chain hash size per polarity
  std::uint32_t walk_dim = 256;  // hash size of each term-walk module
  bool treat_constants_as_functions = true;
  bool use_chains = true;
  std::array<bool, 3> use_walks{true, true, true};  // lengths 1, 2, 3
  bool use_base = true;

  std::uint32_t dimension() const;
  void validate() const;
};

void to_json(nlohmann::json &j, const VectorizerConfig &c);
void from_json(const nlohmann::json &j, VectorizerConfig &c);

inline constexpr std::size_t kNumBaseFeatures = 4;

/// [age, weight, literal count, set of support].
std::array<double, kNumBaseFeatures> base_features(const fol::Clause &c);

struct ModuleSpan {
  std::string name;
  std::uint32_t offset;
  std::uint32_t dim;
};

/// Module layout in concatenation order: chains, walks 1..3, base.
std::vector<ModuleSpan> module_layout(const VectorizerConfig &cfg);

SparseFeatureVector vectorize_clause(const fol::Clause &c, const fol::SymbolTable &symbols,
                                     const VectorizerConfig &cfg);

struct ActionFeatures {
  SparseFeatureVector clause;
  std::array<double, fol::kNumRules> rule_one_hot{};
};

ActionFeatures vectorize_action(fol::InferenceRule rule, const fol::Clause &c,
                                const fol::SymbolTable &symbols, const VectorizerConfig &cfg);

/// `# module <name> <offset> <dim>` header lines followed by one
/// `index:value` line per non-zero entry.
std::string debug_dump(const SparseFeatureVector &v, const VectorizerConfig &cfg);

}  // namespace proofpilot::features
