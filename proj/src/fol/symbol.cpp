// SPDX-License-Identifier: Apache-2.0
#include "proofpilot/fol/symbol.hpp"

#include <mutex>

namespace proofpilot::fol {

SymbolTable::SymbolTable(const SymbolTable &other) {
  std::shared_lock lock(other.mutex_);
  symbols_ = other.symbols_;
  index_ = other.index_;
}

SymbolId SymbolTable::intern(std::string_view name, SymbolKind kind, std::uint32_t arity) {
  std::unique_lock lock(mutex_);
  auto key = std::make_pair(std::string(name), kind);
  if (auto it = index_.find(key); it != index_.end()) {
    const Symbol &existing = symbols_[it->second];
    if (existing.arity != arity) {
      throw ArityConflict("symbol '" + std::string(name) + "' used with arity " +
                          std::to_string(existing.arity) + " and " + std::to_string(arity));
    }
    return it->second;
  }
  const auto id = static_cast<SymbolId>(symbols_.size());
  symbols_.push_back(Symbol{std::string(name), kind, arity});
  index_.emplace(std::move(key), id);
  return id;
}

std::optional<SymbolId> SymbolTable::find(std::string_view name, SymbolKind kind) const {
  std::shared_lock lock(mutex_);
  auto it = index_.find(std::make_pair(std::string(name), kind));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

const Symbol &SymbolTable::at(SymbolId id) const {
  std::shared_lock lock(mutex_);
  return symbols_.at(id);
}

std::size_t SymbolTable::size() const {
  std::shared_lock lock(mutex_);
  return symbols_.size();
}

}  // namespace proofpilot::fol
