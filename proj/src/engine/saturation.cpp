// SPDX-License-Identifier: Apache-2.0
#include "proofpilot/engine/saturation.hpp"

#include <algorithm>

namespace proofpilot::engine {

namespace {

constexpr InferenceRule kRules[] = {InferenceRule::Resolution, InferenceRule::Factoring};

}  // namespace

Saturation::Saturation(const Problem &problem) : symbols_(problem.symbols) {
  std::vector<Clause> inputs = problem.inputs();
  if (inputs.empty()) throw EngineError("problem '" + problem.name + "' has no clauses");
  next_var_ = problem.next_var;
  num_inputs_ = inputs.size();
  for (Clause &c : inputs) {
    c.id = static_cast<ClauseId>(derivation_.clauses.size());
    c.age = 0;
    variants_.insert(fol::variant_key(c.literals));
    if (c.from_negated_conjecture) conjecture_.push_back(c.id);
    if (c.empty() && !empty_clause_) empty_clause_ = c.id;
    state_.unprocessed.insert(c.id);
    for (InferenceRule r : kRules) state_.actions.push_back(Action{r, c.id});
    stored_symbols_ += fol::literals_weight(c.literals) + 1;
    derivation_.clauses.push_back(std::move(c));
  }
}

StepResult Saturation::execute_index(std::size_t index) {
  if (index >= state_.actions.size()) {
    throw EngineError("action index " + std::to_string(index) + " out of range");
  }
  return execute(state_.actions[index]);
}

StepResult Saturation::execute(const Action &action) {
  auto it = std::find(state_.actions.begin(), state_.actions.end(), action);
  if (it == state_.actions.end()) {
    throw EngineError("action (" + std::string(fol::rule_name(action.rule)) + ", " +
                      std::to_string(action.clause) + ") is not available");
  }
  const Action chosen = action;
  // Copy: registering conclusions may reallocate the clause store.
  const Clause given = clause(chosen.clause);

  std::vector<Conclusion> conclusions;
  std::size_t pending = 0;
  auto remaining = [&] {
    const std::size_t used = stored_symbols_ + pending;
    return used >= symbol_budget_ ? 0 : symbol_budget_ - used;
  };
  auto collect = [&](std::vector<Conclusion> rs) {
    for (Conclusion &c : rs) {
      for (const Literal &l : c.literals) {
        if (l.atom.depth() > depth_limit_) throw ResourceExhausted("term depth limit exceeded");
      }
      pending += fol::literals_weight(c.literals) + 1;
      conclusions.push_back(std::move(c));
    }
  };
  fol::VarId next_var = next_var_;
  if (chosen.rule == InferenceRule::Resolution) {
    for (ClauseId pid : state_.processed) {
      const Clause &partner = clause(pid);
      collect(resolve(given, partner, partner.literals, fol::Substitution{}, remaining()));
    }
    fol::Substitution renaming;
    auto copy = fol::rename_fresh(given.literals, next_var, &renaming);
    collect(resolve(given, given, copy, renaming, remaining()));
  } else {
    collect(factor(given, remaining()));
  }
  next_var_ = next_var;

  state_.processed.push_back(chosen.clause);
  state_.unprocessed.erase(chosen.clause);
  std::erase_if(state_.actions, [&](const Action &a) { return a.clause == chosen.clause; });
  derivation_.selections.push_back(chosen);

  StepResult result;
  const auto age = static_cast<std::uint32_t>(state_.step + 1);
  for (Conclusion &c : conclusions) {
    if (auto id = add_clause(std::move(c), age, result)) result.derived.push_back(*id);
  }
  ++state_.step;
  return result;
}

std::optional<ClauseId> Saturation::add_clause(Conclusion conclusion, std::uint32_t age,
                                               StepResult &result) {
  if (fol::is_tautology(conclusion.literals)) {
    ++result.tautologies;
    return std::nullopt;
  }
  Clause c;
  c.literals = fol::rename_fresh(conclusion.literals, next_var_);
  if (!variants_.insert(fol::variant_key(c.literals)).second) {
    ++result.duplicates;
    return std::nullopt;
  }
  c.id = static_cast<ClauseId>(derivation_.clauses.size());
  c.age = age;
  c.set_of_support = std::any_of(conclusion.record.premises.begin(), conclusion.record.premises.end(),
                                 [&](ClauseId p) { return clause(p).set_of_support; });
  c.origin = std::move(conclusion.record);
  stored_symbols_ += fol::literals_weight(c.literals) + 1;
  if (c.empty() && !empty_clause_) empty_clause_ = c.id;
  state_.unprocessed.insert(c.id);
  for (InferenceRule r : kRules) state_.actions.push_back(Action{r, c.id});
  derivation_.clauses.push_back(std::move(c));
  return derivation_.clauses.back().id;
}

std::vector<ClauseId> proof_clauses(const Derivation &d, ClauseId empty_id) {
  if (empty_id >= d.clauses.size() || !d.clauses[empty_id].empty()) {
    throw EngineError("derivation has no empty clause with id " + std::to_string(empty_id));
  }
  std::vector<bool> seen(d.clauses.size(), false);
  std::vector<ClauseId> stack{empty_id};
  seen[empty_id] = true;
  while (!stack.empty()) {
    ClauseId id = stack.back();
    stack.pop_back();
    const Clause &c = d.clauses[id];
    if (!c.origin) continue;
    for (ClauseId p : c.origin->premises) {
      if (!seen[p]) {
        seen[p] = true;
        stack.push_back(p);
      }
    }
  }
  std::vector<ClauseId> out;
  for (ClauseId id = 0; id < seen.size(); ++id) {
    if (seen[id]) out.push_back(id);
  }
  return out;
}

std::vector<ProofStep> extract_proof(const Derivation &d, ClauseId empty_id) {
  std::vector<ClauseId> ancestors = proof_clauses(d, empty_id);
  std::vector<ProofStep> steps;
  for (std::size_t t = 0; t < d.selections.size(); ++t) {
    if (std::binary_search(ancestors.begin(), ancestors.end(), d.selections[t].clause)) {
      steps.push_back(ProofStep{t, d.selections[t]});
    }
  }
  return steps;
}

}  // namespace proofpilot::engine
