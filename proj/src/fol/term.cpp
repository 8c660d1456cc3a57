// SPDX-License-Identifier: Apache-2.0
#include "proofpilot/fol/term.hpp"

#include <algorithm>

namespace proofpilot::fol {

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

}  // namespace

Term Term::variable(VarId id) {
  auto node = std::make_shared<Node>();
  node->is_variable = true;
  node->ground = false;
  node->id = id;
  node->weight = 1;
  node->depth = 1;
  node->hash = mix(0x51ed27, id);
  return Term(std::move(node));
}

Term Term::application(SymbolId head, std::vector<Term> args) {
  auto node = std::make_shared<Node>();
  node->is_variable = false;
  node->id = head;
  node->weight = 1;
  node->depth = 1;
  node->ground = true;
  std::size_t h = mix(0xa5a5, head);
  for (const Term &a : args) {
    node->weight += a.weight();
    node->depth = std::max(node->depth, a.depth() + 1);
    node->ground = node->ground && a.ground();
    h = mix(h, a.hash());
  }
  node->hash = h;
  node->args = std::move(args);
  return Term(std::move(node));
}

bool Term::contains_var(VarId v) const {
  if (ground()) return false;
  if (is_variable()) return var() == v;
  return std::any_of(args().begin(), args().end(),
                     [v](const Term &a) { return a.contains_var(v); });
}

void Term::collect_vars(std::vector<VarId> &out) const {
  if (is_variable()) {
    if (std::find(out.begin(), out.end(), var()) == out.end()) out.push_back(var());
    return;
  }
  if (ground()) return;
  for (const Term &a : args()) a.collect_vars(out);
}

bool operator==(const Term &a, const Term &b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.weight() != b.weight()) return false;
  if (a.is_variable() != b.is_variable() || a.node_->id != b.node_->id) return false;
  if (a.arity() != b.arity()) return false;
  for (std::size_t i = 0; i < a.arity(); ++i) {
    if (!(a.args()[i] == b.args()[i])) return false;
  }
  return true;
}

}  // namespace proofpilot::fol
