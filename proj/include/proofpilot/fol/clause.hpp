// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "proofpilot/fol/substitution.hpp"
#include "proofpilot/fol/term.hpp"

namespace proofpilot::fol {

using ClauseId = std::uint32_t;

/// Inference rules available to the saturation engine. The numeric value
/// is the index of the rule in the one-hot action encoding.
enum class InferenceRule : std::uint8_t { Resolution = 0, Factoring = 1 };
inline constexpr std::size_t kNumRules = 2;

const char *rule_name(InferenceRule rule);

struct Literal {
  bool positive = true;
  Term atom;  // application with a predicate head

  bool complementary_to(const Literal &other) const {
    return positive != other.positive && atom.head() == other.atom.head();
  }
  friend bool operator==(const Literal &, const Literal &) = default;
};

/// How a derived clause was obtained. Literal indices refer to the premises
/// as stored; for resolution `renaming` maps the second premise's variables
/// onto the names used in `unifier`.
struct InferenceRecord {
  InferenceRule rule;
  std::vector<ClauseId> premises;
  std::vector<std::uint32_t> literal_indices;
  Substitution unifier;
  Substitution renaming;
};

struct Clause {
  std::vector<Literal> literals;
  ClauseId id = 0;
  std::uint32_t age = 0;
  std::optional<InferenceRecord> origin;  // absent for input clauses
  bool from_negated_conjecture = false;
  bool set_of_support = false;
  std::string name;

  bool empty() const { return literals.empty(); }
  bool is_input() const { return !origin.has_value(); }
};

std::size_t clause_weight(const Clause &c);
std::size_t literal_count(const Clause &c);
std::size_t literals_weight(const std::vector<Literal> &lits);

/// Removes syntactically repeated literals, keeping the first occurrence.
std::vector<Literal> dedup_literals(std::vector<Literal> lits);

/// True if some atom occurs both positively and negatively.
bool is_tautology(const std::vector<Literal> &lits);

/// Renames variables to `next, next+1, ...` in order of first occurrence and
/// advances `next`.
std::vector<Literal> rename_fresh(const std::vector<Literal> &lits, VarId &next,
                                  Substitution *renaming = nullptr);

/// Key identifying a clause up to variable renaming (literal order kept).
std::string variant_key(const std::vector<Literal> &lits);

std::vector<VarId> clause_vars(const std::vector<Literal> &lits);

}  // namespace proofpilot::fol
