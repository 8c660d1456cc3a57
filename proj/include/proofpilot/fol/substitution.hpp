// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <optional>

#include "proofpilot/fol/term.hpp"

namespace proofpilot::fol {

/// Finite map from variables to terms. Substitutions produced by `mgu` are
/// idempotent: no bound variable occurs in any binding.
class Substitution {
 public:
  using Map = std::map<VarId, Term>;

  Substitution() = default;
  explicit Substitution(Map bindings) : bindings_(std::move(bindings)) {}

  bool empty() const { return bindings_.empty(); }
  std::size_t size() const { return bindings_.size(); }
  const Map &bindings() const { return bindings_; }
  const Term *lookup(VarId v) const;

  /// Adds v -> t. Caller keeps the map idempotent.
  void bind(VarId v, Term t) { bindings_.insert_or_assign(v, std::move(t)); }

  friend bool operator==(const Substitution &, const Substitution &) = default;

 private:
  Map bindings_;
};

Term apply(const Substitution &subst, const Term &t);

/// Most general unifier of two terms (Robinson, with occurs check), or
/// nullopt when they do not unify.
std::optional<Substitution> mgu(const Term &a, const Term &b);

/// Extends `subst` so that apply(subst, pattern) == target, binding only
/// variables of `pattern`. Returns false if no such extension exists.
bool match(const Term &pattern, const Term &target, Substitution &subst);

}  // namespace proofpilot::fol
