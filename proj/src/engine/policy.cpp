// SPDX-License-Identifier: Apache-2.0
#include "proofpilot/engine/policy.hpp"

#include <tuple>

namespace proofpilot::engine {

Decision BreadthFirstPolicy::select(const Saturation &, Rng &) { return Decision{0, 1.0}; }

Decision AgeWeightPolicy::select(const Saturation &engine, Rng &) {
  const auto &actions = engine.state().actions;
  std::size_t best = 0;
  auto key = [&](std::size_t i) {
    const Clause &c = engine.clause(actions[i].clause);
    return std::make_tuple(fol::clause_weight(c), c.age, c.id);
  };
  auto best_key = key(0);
  for (std::size_t i = 1; i < actions.size(); ++i) {
    auto k = key(i);
    if (k < best_key) {
      best = i;
      best_key = k;
    }
  }
  return Decision{best, 1.0};
}

Decision UniformRandomPolicy::select(const Saturation &engine, Rng &rng) {
  const std::size_t m = engine.state().actions.size();
  return Decision{static_cast<std::size_t>(uniform_index(rng, m)), 1.0 / static_cast<double>(m)};
}

}  // namespace proofpilot::engine
