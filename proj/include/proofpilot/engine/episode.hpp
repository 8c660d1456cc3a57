// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "proofpilot/engine/policy.hpp"

namespace proofpilot::engine {

enum class Outcome { Refutation, Saturated, StepLimit, TimeLimit, ResourceLimit };

const char *outcome_name(Outcome o);

struct Limits {
  std::size_t max_steps = 2000;
  double max_seconds = 100.0;
  std::size_t max_symbols = 4'000'000;  // clause store budget, see Saturation::stored_symbols
  std::size_t max_term_depth = 512;     // deepest atom a derived clause may contain
};

/// Processed clauses and available actions at the moment of a decision.
struct StateSnapshot {
  std::vector<ClauseId> processed;
  std::vector<Action> actions;
};

struct StepRecord {
  std::size_t action_index;
  std::size_t num_actions;
  double probability;
  Action action;
  std::size_t num_clauses;  // clauses in the store when the action was chosen
  std::optional<StateSnapshot> snapshot;
};

/// Rebuilds the state before step `t` from the records of the steps before
/// it: processed clauses are the earlier selections, and the actions are
/// both rules of every other stored clause, in clause id order.
StateSnapshot snapshot_at(std::span<const StepRecord> steps, std::size_t t);

/// Same, from the selected clause ids and the store size at step t.
StateSnapshot snapshot_from(std::span<const ClauseId> selected, std::size_t num_clauses);

struct EpisodeOptions {
  bool record_snapshots = false;
};

struct EpisodeResult {
  std::string problem;
  Outcome outcome = Outcome::StepLimit;
  std::vector<StepRecord> steps;
  std::vector<ProofStep> proof;  // non-empty exactly for refutations found by search
  std::shared_ptr<const Saturation> engine;
  double seconds = 0.0;

  bool solved() const { return outcome == Outcome::Refutation; }
};

/// Drives `policy` until refutation, saturation or a limit. The step limit
/// is checked before each action and the time limit after each action; a
/// step that would exceed the symbol budget or the term depth limit ends the
/// episode unexecuted.
EpisodeResult run_episode(const Problem &problem, Policy &policy, const Limits &limits, Rng &rng,
                          const EpisodeOptions &options = {});

}  // namespace proofpilot::engine
