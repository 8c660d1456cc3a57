// SPDX-License-Identifier: Apache-2.0
#include "proofpilot/rl/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace proofpilot::rl {

std::vector<double> tempered(std::span<const double> probs, double tau) {
  if (probs.empty()) throw std::invalid_argument("tempered: empty distribution");
  if (!(tau > 0.0)) throw std::invalid_argument("tempered: temperature must be positive");
  if (tau == 1.0) return {probs.begin(), probs.end()};
  std::vector<double> logits(probs.size());
  double top = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < probs.size(); ++i) {
    logits[i] = probs[i] > 0.0 ? std::log(probs[i]) / tau : -std::numeric_limits<double>::infinity();
    top = std::max(top, logits[i]);
  }
  if (!std::isfinite(top)) throw std::invalid_argument("tempered: distribution has no mass");
  double z = 0.0;
  for (double &l : logits) {
    l = std::exp(l - top);
    z += l;
  }
  for (double &l : logits) l /= z;
  return logits;
}

std::size_t argmax(std::span<const double> probs) {
  if (probs.empty()) throw std::invalid_argument("argmax: empty distribution");
  std::size_t best = 0;
  for (std::size_t i = 1; i < probs.size(); ++i) {
    if (probs[i] > probs[best]) best = i;
  }
  return best;
}

std::size_t sample_action(std::span<const double> probs, std::uint64_t step, double tau,
                          std::uint64_t threshold, Rng &rng) {
  if (step >= threshold) return argmax(probs);
  const std::vector<double> p = tempered(probs, tau);
  const double u = uniform01(rng);
  double acc = 0.0;
  std::size_t last = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0.0) continue;
    acc += p[i];
    last = i;
    if (u < acc) return i;
  }
  return last;  // rounding left u above the accumulated mass
}

double annealed_temperature(double tau, double decay, std::uint64_t elapsed) {
  return std::max(1.0, tau * std::pow(decay, static_cast<double>(elapsed)));
}

}  // namespace proofpilot::rl
