// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <limits>
#include <stdexcept>
#include <vector>

#include "proofpilot/fol/clause.hpp"

namespace proofpilot::engine {

using fol::Clause;
using fol::InferenceRecord;
using fol::Literal;

/// Raised when the conclusions of one inference step would exceed the
/// symbol budget.
class ResourceExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A conclusion before it is registered as a clause: literals are
/// instantiated and deduplicated but keep the premises' variables.
struct Conclusion {
  std::vector<Literal> literals;
  InferenceRecord record;
};

/// Binary resolvents of `given` (first premise) with `partner`. One
/// resolvent per complementary literal pair whose atoms unify. The clauses
/// must not share variables.
std::vector<Conclusion> resolve(const Clause &given, const Clause &partner);

/// Same as `resolve` with the partner's literals supplied separately, used
/// when the partner is a renamed copy. `renaming` is recorded in each
/// conclusion. Throws ResourceExhausted once the conclusions' weights plus
/// one each sum to more than `symbol_budget`.
std::vector<Conclusion> resolve(const Clause &given, const Clause &partner,
                                const std::vector<Literal> &partner_literals,
                                const fol::Substitution &renaming,
                                std::size_t symbol_budget = std::numeric_limits<std::size_t>::max());

/// Factors of `c`: one per unifiable same-polarity literal pair, with
/// variant duplicates collapsed. Same budget rule as `resolve`.
std::vector<Conclusion> factor(const Clause &c,
                               std::size_t symbol_budget = std::numeric_limits<std::size_t>::max());

}  // namespace proofpilot::engine
