// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>

#include "json.hpp"
#include "proofpilot/engine/saturation.hpp"

namespace proofpilot::engine {

/// JSON dump of the clauses needed to check the refutation ending in
/// `empty_id`: every ancestor with its inference (rule, premises, literal
/// indices, unifier, renaming of the second premise).
nlohmann::json derivation_dump(const Saturation &engine, ClauseId empty_id,
                               const std::string &problem_name);

/// Human readable listing of the same steps, one clause per line.
std::string proof_listing(const Saturation &engine, ClauseId empty_id);

struct VerifyResult {
  bool ok = false;
  std::optional<ClauseId> failed_clause;
  std::string message;
};

/// Re-checks a dump independently of the engine: premises precede their
/// conclusions, the recorded unifier unifies the selected literals, and the
/// recorded conclusion is a variant of the recomputed one. With `problem`,
/// input clauses must also be variants of the problem's inputs.
VerifyResult verify_dump(const nlohmann::json &dump, const Problem *problem = nullptr);

}  // namespace proofpilot::engine
