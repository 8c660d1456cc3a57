// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "proofpilot/fol/symbol.hpp"

namespace proofpilot::fol {

/// Immutable first-order term with shared structure. A term is either a
/// variable or an application of a function (or predicate) symbol to
/// arguments; constants are applications with no arguments.
class Term {
 public:
  static Term variable(VarId id);
  static Term application(SymbolId head, std::vector<Term> args = {});

  bool is_variable() const { return node_->is_variable; }
  VarId var() const { return node_->id; }
  SymbolId head() const { return node_->id; }
  std::span<const Term> args() const { return node_->args; }
  std::size_t arity() const { return node_->args.size(); }

  /// Number of symbol occurrences (variables count one each).
  std::size_t weight() const { return node_->weight; }
  /// Nodes on the longest root-to-leaf path; 1 for variables and constants.
  std::size_t depth() const { return node_->depth; }
  std::size_t hash() const { return node_->hash; }
  bool ground() const { return node_->ground; }

  bool contains_var(VarId v) const;
  void collect_vars(std::vector<VarId> &out) const;

  bool same_node(const Term &other) const { return node_ == other.node_; }

  friend bool operator==(const Term &a, const Term &b);

 private:
  struct Node {
    bool is_variable;
    bool ground;
    std::uint32_t id;
    std::size_t weight;
    std::size_t depth;
    std::size_t hash;
    std::vector<Term> args;
  };
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

struct TermHash {
  std::size_t operator()(const Term &t) const { return t.hash(); }
};

}  // namespace proofpilot::fol
