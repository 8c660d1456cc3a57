// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace proofpilot::features {

/// Fixed-dimension sparse vector; entries sorted by index, zeros omitted.
class SparseFeatureVector {
 public:
  using Entry = std::pair<std::uint32_t, double>;

  SparseFeatureVector() = default;
  explicit SparseFeatureVector(std::uint32_t dim) : dim_(dim) {}

  std::uint32_t dim() const { return dim_; }
  const std::vector<Entry> &entries() const { return entries_; }
  std::size_t nnz() const { return entries_.size(); }
  double at(std::uint32_t index) const;

  /// Adds `value` at `index` (accumulating).
  void add(std::uint32_t index, double value);

  /// Appends `other` shifted by this vector's dimension.
  void append(const SparseFeatureVector &other);

  friend bool operator==(const SparseFeatureVector &, const SparseFeatureVector &) = default;

 private:
  std::uint32_t dim_ = 0;
  std::vector<Entry> entries_;
};

}  // namespace proofpilot::features
