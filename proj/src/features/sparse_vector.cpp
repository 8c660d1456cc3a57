// SPDX-License-Identifier: Apache-2.0
#include "proofpilot/features/sparse_vector.hpp"

#include <algorithm>
#include <stdexcept>

namespace proofpilot::features {

double SparseFeatureVector::at(std::uint32_t index) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), index,
                             [](const Entry &e, std::uint32_t i) { return e.first < i; });
  return it != entries_.end() && it->first == index ? it->second : 0.0;
}

void SparseFeatureVector::add(std::uint32_t index, double value) {
  if (index >= dim_) {
    throw std::out_of_range("feature index " + std::to_string(index) + " >= dimension " + std::to_string(dim_));
  }
  if (value == 0.0) return;
  auto it = std::lower_bound(entries_.begin(), entries_.end(), index,
                             [](const Entry &e, std::uint32_t i) { return e.first < i; });
  if (it != entries_.end() && it->first == index) {
    it->second += value;
    if (it->second == 0.0) entries_.erase(it);
  } else {
    entries_.insert(it, Entry{index, value});
  }
}

void SparseFeatureVector::append(const SparseFeatureVector &other) {
  for (const auto &[i, v] : other.entries_) entries_.emplace_back(dim_ + i, v);
  dim_ += other.dim_;
}

}  // namespace proofpilot::features
