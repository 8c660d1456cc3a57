// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "proofpilot/common/random.hpp"

namespace proofpilot::rl {

/// P^(1/tau) renormalized, computed in the log domain.
std::vector<double> tempered(std::span<const double> probs, double tau);

/// Index of the largest entry; the lowest index wins ties.
std::size_t argmax(std::span<const double> probs);

/// Samples from the tempered distribution while `step < threshold`,
/// otherwise returns the argmax.
std::size_t sample_action(std::span<const double> probs, std::uint64_t step, double tau,
                          std::uint64_t threshold, Rng &rng);

/// Temperature after `elapsed` decay applications, floored at 1.
double annealed_temperature(double tau, double decay, std::uint64_t elapsed);

}  // namespace proofpilot::rl
