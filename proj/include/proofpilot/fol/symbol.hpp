// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace proofpilot::fol {

using SymbolId = std::uint32_t;
using VarId = std::uint32_t;

enum class SymbolKind : std::uint8_t { Predicate, Function, Variable };

struct Symbol {
  std::string name;
  SymbolKind kind;
  std::uint32_t arity;

  bool operator==(const Symbol &) const = default;
};

class ArityConflict : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Interns predicate and function symbols for one problem. A (name, kind)
/// pair maps to exactly one arity; a second arity is rejected.
///
/// Interning is single-writer; lookups may run concurrently with each other.
class SymbolTable {
 public:
  SymbolTable() = default;
  SymbolTable(const SymbolTable &other);
  SymbolTable &operator=(const SymbolTable &) = delete;

  SymbolId intern(std::string_view name, SymbolKind kind, std::uint32_t arity);
  std::optional<SymbolId> find(std::string_view name, SymbolKind kind) const;

  const Symbol &at(SymbolId id) const;
  const std::string &name(SymbolId id) const { return at(id).name; }
  std::uint32_t arity(SymbolId id) const { return at(id).arity; }
  bool is_constant(SymbolId id) const {
    const Symbol &s = at(id);
    return s.kind == SymbolKind::Function && s.arity == 0;
  }
  std::size_t size() const;

 private:
  mutable std::shared_mutex mutex_;
  std::vector<Symbol> symbols_;
  std::map<std::pair<std::string, SymbolKind>, SymbolId, std::less<>> index_;
};

}  // namespace proofpilot::fol
