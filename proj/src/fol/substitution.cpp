// SPDX-License-Identifier: Apache-2.0
#include "proofpilot/fol/substitution.hpp"

#include <utility>
#include <vector>

namespace proofpilot::fol {

const Term *Substitution::lookup(VarId v) const {
  auto it = bindings_.find(v);
  return it == bindings_.end() ? nullptr : &it->second;
}

Term apply(const Substitution &subst, const Term &t) {
  if (subst.empty() || t.ground()) return t;
  if (t.is_variable()) {
    const Term *bound = subst.lookup(t.var());
    return bound ? *bound : t;
  }
  std::vector<Term> args;
  args.reserve(t.arity());
  bool changed = false;
  for (const Term &a : t.args()) {
    Term r = apply(subst, a);
    changed = changed || !r.same_node(a);
    args.push_back(std::move(r));
  }
  if (!changed) return t;
  return Term::application(t.head(), std::move(args));
}

std::optional<Substitution> mgu(const Term &a, const Term &b) {
  Substitution sigma;
  std::vector<std::pair<Term, Term>> work{{a, b}};
  while (!work.empty()) {
    auto [s, t] = std::move(work.back());
    work.pop_back();
    s = apply(sigma, s);
    t = apply(sigma, t);
    if (s == t) continue;
    if (!s.is_variable() && t.is_variable()) std::swap(s, t);
    if (s.is_variable()) {
      if (t.contains_var(s.var())) return std::nullopt;
      // Keep sigma idempotent: push the new binding through existing ones.
      Substitution single;
      single.bind(s.var(), t);
      Substitution::Map updated;
      for (const auto &[v, bound] : sigma.bindings()) updated.emplace(v, apply(single, bound));
      updated.emplace(s.var(), t);
      sigma = Substitution(std::move(updated));
      continue;
    }
    if (s.head() != t.head() || s.arity() != t.arity()) return std::nullopt;
    for (std::size_t i = s.arity(); i-- > 0;) work.emplace_back(s.args()[i], t.args()[i]);
  }
  return sigma;
}

bool match(const Term &pattern, const Term &target, Substitution &subst) {
  if (pattern.is_variable()) {
    if (const Term *bound = subst.lookup(pattern.var())) return *bound == target;
    subst.bind(pattern.var(), target);
    return true;
  }
  if (target.is_variable() || pattern.head() != target.head() ||
      pattern.arity() != target.arity()) {
    return false;
  }
  for (std::size_t i = 0; i < pattern.arity(); ++i) {
    if (!match(pattern.args()[i], target.args()[i], subst)) return false;
  }
  return true;
}

}  // namespace proofpilot::fol
