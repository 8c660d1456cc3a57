// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "proofpilot/features/sparse_vector.hpp"
#include "proofpilot/fol/clause.hpp"

namespace proofpilot::features {

/// Linear path from a literal's predicate down to one leaf, e.g.
/// `q(f(g(*,*),*),*)`. Siblings off the path and variables print as `*`.
struct ChainPattern {
  std::string linearization;
  bool positive = true;

  friend bool operator==(const ChainPattern &, const ChainPattern &) = default;
  friend auto operator<=>(const ChainPattern &, const ChainPattern &) = default;
};

/// One pattern per root-to-leaf path of every literal (a multiset, in
/// traversal order). Constants end a chain under their own name when
/// `constants_as_functions` is set and are wildcarded otherwise.
std::vector<ChainPattern> chain_patterns(const fol::Clause &c, const fol::SymbolTable &symbols,
                                         bool constants_as_functions = true);

/// MD5 bucket of a pattern: positive patterns land in [0, d), negative ones
/// in [d, 2d).
std::uint32_t hash_pattern(const ChainPattern &p, std::uint32_t d);

/// Pattern counts hashed into a 2d-dimensional vector.
SparseFeatureVector chain_vectorize(const fol::Clause &c, const fol::SymbolTable &symbols,
                                    std::uint32_t d, bool constants_as_functions = true);

}  // namespace proofpilot::features
