// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <string>

#include "proofpilot/common/random.hpp"
#include "proofpilot/engine/saturation.hpp"

namespace proofpilot::engine {

struct Decision {
  std::size_t index;
  double probability;  // probability the policy assigned to the chosen action
};

/// Chooses the next action from `engine.state().actions` (non-empty).
class Policy {
 public:
  virtual ~Policy() = default;
  virtual std::string name() const = 0;
  virtual void begin_episode(const Saturation &) {}
  virtual Decision select(const Saturation &engine, Rng &rng) = 0;
};

/// Oldest available action first.
class BreadthFirstPolicy final : public Policy {
 public:
  std::string name() const override { return "bfs"; }
  Decision select(const Saturation &engine, Rng &rng) override;
};

/// Smallest clause weight, then oldest clause, then lowest action index.
class AgeWeightPolicy final : public Policy {
 public:
  std::string name() const override { return "baseline"; }
  Decision select(const Saturation &engine, Rng &rng) override;
};

class UniformRandomPolicy final : public Policy {
 public:
  std::string name() const override { return "random"; }
  Decision select(const Saturation &engine, Rng &rng) override;
};

}  // namespace proofpilot::engine
