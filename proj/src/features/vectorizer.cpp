// SPDX-License-Identifier: Apache-2.0
#include "proofpilot/features/vectorizer.hpp"

#include <sstream>
#include <stdexcept>

namespace proofpilot::features {

std::uint32_t VectorizerConfig::dimension() const {
  std::uint32_t dim = 0;
  for (const ModuleSpan &m : module_layout(*this)) dim += m.dim;
  return dim;
}

void VectorizerConfig::validate() const {
  if (d == 0) throw std::invalid_argument("vectorizer: d must be positive");
  if (walk_dim == 0) throw std::invalid_argument("vectorizer: walk_dim must be positive");
  if (dimension() == 0) throw std::invalid_argument("vectorizer: no module enabled");
}

void to_json(nlohmann::json &j, const VectorizerConfig &c) {
  j = nlohmann::json{{"d", c.d},
                     {"walk_dim", c.walk_dim},
                     {"treat_constants_as_functions", c.treat_constants_as_functions},
                     {"use_chains", c.use_chains},
                     {"use_walks", c.use_walks},
                     {"use_base", c.use_base}};
}

void from_json(const nlohmann::json &j, VectorizerConfig &c) {
  c.d = j.value("d", c.d);
  c.walk_dim = j.value("walk_dim", c.walk_dim);
  c.treat_constants_as_functions = j.value("treat_constants_as_functions", c.treat_constants_as_functions);
  c.use_chains = j.value("use_chains", c.use_chains);
  c.use_walks = j.value("use_walks", c.use_walks);
  c.use_base = j.value("use_base", c.use_base);
}

std::array<double, kNumBaseFeatures> base_features(const fol::Clause &c) {
  return {static_cast<double>(c.age), static_cast<double>(fol::clause_weight(c)),
          static_cast<double>(fol::literal_count(c)), c.set_of_support ? 1.0 : 0.0};
}

std::vector<ModuleSpan> module_layout(const VectorizerConfig &cfg) {
  std::vector<ModuleSpan> spans;
  std::uint32_t offset = 0;
  auto push = [&](std::string name, std::uint32_t dim) {
    spans.push_back(ModuleSpan{std::move(name), offset, dim});
    offset += dim;
  };
  if (cfg.use_chains) push("chains", 2 * cfg.d);
  for (std::size_t l = 0; l < 3; ++l) {
    if (cfg.use_walks[l]) push("walks" + std::to_string(l + 1), cfg.walk_dim);
  }
  if (cfg.use_base) push("base", kNumBaseFeatures);
  return spans;
}

SparseFeatureVector vectorize_clause(const fol::Clause &c, const fol::SymbolTable &symbols,
                                     const VectorizerConfig &cfg) {
  SparseFeatureVector v;
  if (cfg.use_chains) v.append(chain_vectorize(c, symbols, cfg.d, cfg.treat_constants_as_functions));
  for (std::size_t l = 0; l < 3; ++l) {
    if (cfg.use_walks[l]) {
      v.append(walk_vectorize(c, symbols, l + 1, cfg.walk_dim, cfg.treat_constants_as_functions));
    }
  }
  if (cfg.use_base) {
    SparseFeatureVector base(kNumBaseFeatures);
    const auto slots = base_features(c);
    for (std::uint32_t i = 0; i < kNumBaseFeatures; ++i) base.add(i, slots[i]);
    v.append(base);
  }
  return v;
}

ActionFeatures vectorize_action(fol::InferenceRule rule, const fol::Clause &c,
                                const fol::SymbolTable &symbols, const VectorizerConfig &cfg) {
  ActionFeatures a;
  a.clause = vectorize_clause(c, symbols, cfg);
  a.rule_one_hot[static_cast<std::size_t>(rule)] = 1.0;
  return a;
}

std::string debug_dump(const SparseFeatureVector &v, const VectorizerConfig &cfg) {
  std::ostringstream out;
  for (const ModuleSpan &m : module_layout(cfg)) {
    out << "# module " << m.name << ' ' << m.offset << ' ' << m.dim << '\n';
  }
  for (const auto &[i, value] : v.entries()) out << i << ':' << value << '\n';
  return out.str();
}

}  // namespace proofpilot::features
