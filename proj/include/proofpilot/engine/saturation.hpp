// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <limits>
#include <unordered_set>
#include <vector>

#include "proofpilot/engine/rules.hpp"
#include "proofpilot/fol/problem.hpp"

namespace proofpilot::engine {

using fol::ClauseId;
using fol::InferenceRule;
using fol::Problem;

struct Action {
  InferenceRule rule;
  ClauseId clause;

  friend bool operator==(const Action &, const Action &) = default;
};

/// Processed clauses C_t, available actions A_t and the unprocessed set.
/// Actions stay in insertion order so a policy's output index is stable
/// within a step.
struct ProofState {
  std::vector<ClauseId> processed;
  std::vector<Action> actions;
  std::set<ClauseId> unprocessed;
  std::size_t step = 0;
};

/// Every clause created during a run plus the action executed at each step.
struct Derivation {
  std::vector<Clause> clauses;  // indexed by id
  std::vector<Action> selections;
};

struct ProofStep {
  std::size_t step;
  Action action;

  friend bool operator==(const ProofStep &, const ProofStep &) = default;
};

class EngineError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct StepResult {
  std::vector<ClauseId> derived;
  std::size_t duplicates = 0;
  std::size_t tautologies = 0;
};

/// Given-clause saturation over Resolution and Factoring, driven one action
/// at a time. Executing (rule, c) applies `rule` with c as a premise (for
/// resolution against every processed clause and c itself), moves c to the
/// processed set and adds one action per rule for every new clause.
class Saturation {
 public:
  explicit Saturation(const Problem &problem);

  const ProofState &state() const { return state_; }
  const Derivation &derivation() const { return derivation_; }
  const Clause &clause(ClauseId id) const { return derivation_.clauses.at(id); }
  const fol::SymbolTable &symbols() const { return *symbols_; }
  const std::vector<ClauseId> &conjecture_clauses() const { return conjecture_; }
  std::size_t num_inputs() const { return num_inputs_; }

  std::optional<ClauseId> empty_clause() const { return empty_clause_; }
  bool saturated() const { return state_.actions.empty(); }

  /// Total size of the clause store, counting each clause as its weight
  /// (symbol occurrences) plus one.
  std::size_t stored_symbols() const { return stored_symbols_; }
  /// Bound on stored_symbols(); execute() throws ResourceExhausted, leaving
  /// the state untouched, when a step would exceed it.
  void set_symbol_budget(std::size_t budget) { symbol_budget_ = budget; }
  /// Bound on the depth of atoms in derived clauses, enforced the same way.
  void set_depth_limit(std::size_t depth) { depth_limit_ = depth; }

  StepResult execute(const Action &action);
  StepResult execute_index(std::size_t index);

 private:
  std::optional<ClauseId> add_clause(Conclusion conclusion, std::uint32_t age, StepResult &result);

  std::shared_ptr<const fol::SymbolTable> symbols_;
  ProofState state_;
  Derivation derivation_;
  std::unordered_set<std::string> variants_;
  std::vector<ClauseId> conjecture_;
  std::size_t num_inputs_ = 0;
  fol::VarId next_var_ = 0;
  std::optional<ClauseId> empty_clause_;
  std::size_t stored_symbols_ = 0;
  std::size_t symbol_budget_ = std::numeric_limits<std::size_t>::max();
  std::size_t depth_limit_ = std::numeric_limits<std::size_t>::max();
};

/// Steps whose selected clause is an ancestor-premise of `empty_id`
/// (backward closure over parent links), in step order.
std::vector<ProofStep> extract_proof(const Derivation &d, ClauseId empty_id);

/// Ids of `empty_id` and all its ancestors, ascending.
std::vector<ClauseId> proof_clauses(const Derivation &d, ClauseId empty_id);

}  // namespace proofpilot::engine
