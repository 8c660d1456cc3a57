// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "proofpilot/features/sparse_vector.hpp"
#include "proofpilot/fol/clause.hpp"

namespace proofpilot::features {

inline constexpr char kWalkSeparator = '/';

/// Downward symbol sequences of exactly `length` nodes in each literal's
/// tree, joined with '/'. The literal's predicate carries its polarity
/// (`+p`, `-p`); variables print as `*`.
std::vector<std::string> term_walks(const fol::Clause &c, const fol::SymbolTable &symbols,
                                    std::size_t length, bool constants_as_functions = true);

/// Walk counts hashed into `dim` buckets (first eight MD5 bytes, mod dim).
SparseFeatureVector walk_vectorize(const fol::Clause &c, const fol::SymbolTable &symbols,
                                   std::size_t length, std::uint32_t dim,
                                   bool constants_as_functions = true);

}  // namespace proofpilot::features
