// SPDX-License-Identifier: Apache-2.0
#include "proofpilot/features/walks.hpp"

#include "proofpilot/features/md5.hpp"

namespace proofpilot::features {

namespace {

std::string label(const fol::Term &t, const fol::SymbolTable &symbols, bool constants_as_functions) {
  if (t.is_variable()) return "*";
  if (t.arity() == 0 && !constants_as_functions) return "*";
  return symbols.name(t.head());
}

struct WalkCollector {
  const fol::SymbolTable &symbols;
  std::size_t length;
  bool constants_as_functions;
  std::vector<std::string> &out;

  // Extends `prefix` (which ends at `t`, `depth` nodes long) downwards.
  void extend(const fol::Term &t, const std::string &prefix, std::size_t depth) {
    if (depth == length) {
      out.push_back(prefix);
      return;
    }
    if (t.is_variable()) return;
    for (const fol::Term &child : t.args()) {
      extend(child, prefix + kWalkSeparator + label(child, symbols, constants_as_functions), depth + 1);
    }
  }

  void start_everywhere(const fol::Term &t, const std::string &own_label) {
    extend(t, own_label, 1);
    if (t.is_variable()) return;
    for (const fol::Term &child : t.args()) {
      start_everywhere(child, label(child, symbols, constants_as_functions));
    }
  }
};

}  // namespace

std::vector<std::string> term_walks(const fol::Clause &c, const fol::SymbolTable &symbols,
                                    std::size_t length, bool constants_as_functions) {
  std::vector<std::string> out;
  if (length == 0) return out;
  WalkCollector collector{symbols, length, constants_as_functions, out};
  for (const fol::Literal &lit : c.literals) {
    const std::string root = (lit.positive ? "+" : "-") + symbols.name(lit.atom.head());
    collector.start_everywhere(lit.atom, root);
  }
  return out;
}

SparseFeatureVector walk_vectorize(const fol::Clause &c, const fol::SymbolTable &symbols,
                                   std::size_t length, std::uint32_t dim,
                                   bool constants_as_functions) {
  SparseFeatureVector v(dim);
  for (const std::string &w : term_walks(c, symbols, length, constants_as_functions)) {
    v.add(static_cast<std::uint32_t>(md5_prefix64(w) % dim), 1.0);
  }
  return v;
}

}  // namespace proofpilot::features
