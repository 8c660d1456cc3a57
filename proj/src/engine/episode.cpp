// SPDX-License-Identifier: Apache-2.0
#include "proofpilot/engine/episode.hpp"

#include <chrono>

namespace proofpilot::engine {

const char *outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Refutation:
      return "refutation";
    case Outcome::Saturated:
      return "saturated";
    case Outcome::StepLimit:
      return "step_limit";
    case Outcome::TimeLimit:
      return "time_limit";
    case Outcome::ResourceLimit:
      return "resource_limit";
  }
  return "unknown";
}

EpisodeResult run_episode(const Problem &problem, Policy &policy, const Limits &limits, Rng &rng,
                          const EpisodeOptions &options) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(Clock::now() - start).count(); };

  auto engine = std::make_shared<Saturation>(problem);
  engine->set_symbol_budget(limits.max_symbols);
  engine->set_depth_limit(limits.max_term_depth);
  EpisodeResult result;
  result.problem = problem.name;
  policy.begin_episode(*engine);

  while (true) {
    if (engine->empty_clause()) {
      result.outcome = Outcome::Refutation;
      break;
    }
    if (engine->saturated()) {
      result.outcome = Outcome::Saturated;
      break;
    }
    if (engine->state().step >= limits.max_steps) {
      result.outcome = Outcome::StepLimit;
      break;
    }
    const Decision d = policy.select(*engine, rng);
    const auto &state = engine->state();
    if (d.index >= state.actions.size()) throw EngineError("policy chose an unavailable action");
    StepRecord record{d.index,  state.actions.size(), d.probability, state.actions[d.index],
                      engine->derivation().clauses.size(), std::nullopt};
    if (options.record_snapshots) record.snapshot = StateSnapshot{state.processed, state.actions};
    try {
      engine->execute_index(d.index);
    } catch (const ResourceExhausted &) {
      result.outcome = Outcome::ResourceLimit;
      break;
    }
    result.steps.push_back(std::move(record));
    if (!engine->empty_clause() && elapsed() > limits.max_seconds) {
      result.outcome = Outcome::TimeLimit;
      break;
    }
  }
  if (result.outcome == Outcome::Refutation) {
    result.proof = extract_proof(engine->derivation(), *engine->empty_clause());
  }
  result.seconds = elapsed();
  result.engine = std::move(engine);
  return result;
}

StateSnapshot snapshot_from(std::span<const ClauseId> selected, std::size_t num_clauses) {
  StateSnapshot s;
  s.processed.assign(selected.begin(), selected.end());
  std::vector<bool> done(num_clauses, false);
  for (ClauseId id : selected) {
    if (id >= num_clauses) throw EngineError("snapshot: selected clause beyond the store");
    done[id] = true;
  }
  s.actions.reserve(2 * num_clauses);
  for (ClauseId id = 0; id < num_clauses; ++id) {
    if (done[id]) continue;
    s.actions.push_back(Action{InferenceRule::Resolution, id});
    s.actions.push_back(Action{InferenceRule::Factoring, id});
  }
  return s;
}

StateSnapshot snapshot_at(std::span<const StepRecord> steps, std::size_t t) {
  if (t >= steps.size()) throw EngineError("snapshot: step out of range");
  std::vector<ClauseId> selected;
  selected.reserve(t);
  for (std::size_t i = 0; i < t; ++i) selected.push_back(steps[i].action.clause);
  return snapshot_from(selected, steps[t].num_clauses);
}

}  // namespace proofpilot::engine
