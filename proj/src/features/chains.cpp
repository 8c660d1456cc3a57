// SPDX-License-Identifier: Apache-2.0
#include "proofpilot/features/chains.hpp"

#include "proofpilot/features/md5.hpp"

namespace proofpilot::features {

namespace {

// Linearizations of every path from `t` down to a leaf.
void leaf_paths(const fol::Term &t, const fol::SymbolTable &symbols, bool constants_as_functions,
                std::vector<std::string> &out) {
  if (t.is_variable()) {
    out.emplace_back("*");
    return;
  }
  const std::string &name = symbols.name(t.head());
  if (t.arity() == 0) {
    out.push_back(constants_as_functions ? name : std::string("*"));
    return;
  }
  for (std::size_t i = 0; i < t.arity(); ++i) {
    std::vector<std::string> below;
    leaf_paths(t.args()[i], symbols, constants_as_functions, below);
    for (const std::string &inner : below) {
      std::string s = name + "(";
      for (std::size_t k = 0; k < t.arity(); ++k) {
        if (k) s += ',';
        s += k == i ? inner : "*";
      }
      s += ')';
      out.push_back(std::move(s));
    }
  }
}

}  // namespace

std::vector<ChainPattern> chain_patterns(const fol::Clause &c, const fol::SymbolTable &symbols,
                                         bool constants_as_functions) {
  std::vector<ChainPattern> out;
  for (const fol::Literal &lit : c.literals) {
    // A propositional atom is its own (trivial) chain.
    std::vector<std::string> paths;
    if (lit.atom.arity() == 0) {
      paths.push_back(symbols.name(lit.atom.head()));
    } else {
      leaf_paths(lit.atom, symbols, constants_as_functions, paths);
    }
    for (std::string &p : paths) out.push_back(ChainPattern{std::move(p), lit.positive});
  }
  return out;
}

std::uint32_t hash_pattern(const ChainPattern &p, std::uint32_t d) {
  const auto bucket = static_cast<std::uint32_t>(md5_prefix64(p.linearization) % d);
  return p.positive ? bucket : d + bucket;
}

SparseFeatureVector chain_vectorize(const fol::Clause &c, const fol::SymbolTable &symbols,
                                    std::uint32_t d, bool constants_as_functions) {
  SparseFeatureVector v(2 * d);
  for (const ChainPattern &p : chain_patterns(c, symbols, constants_as_functions)) {
    v.add(hash_pattern(p, d), 1.0);
  }
  return v;
}

}  // namespace proofpilot::features
