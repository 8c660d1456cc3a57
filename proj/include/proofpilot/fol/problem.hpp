// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "proofpilot/fol/clause.hpp"

namespace proofpilot::fol {

struct Problem {
  std::string name;
  std::shared_ptr<SymbolTable> symbols = std::make_shared<SymbolTable>();
  std::vector<Clause> axioms;
  std::vector<Clause> negated_conjecture;
  VarId next_var = 0;  // first variable id not used by any input clause

  /// All input clauses ordered by id (file order).
  std::vector<Clause> inputs() const;
  std::size_t size() const { return axioms.size() + negated_conjecture.size(); }
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string &msg, std::size_t line, std::size_t column);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Parses the TPTP CNF subset: `cnf(name, role, formula).` statements with
/// roles axiom, hypothesis and negated_conjecture. `=` and `!=` are read as
/// an ordinary binary predicate named "=".
Problem parse_problem(std::string_view text, std::string name = "problem");
Problem parse_problem_file(const std::string &path);

/// Parses a bare disjunction (or `$false`). Variable names are resolved
/// through `vars`, so names stay stable across calls sharing one map.
std::vector<Literal> parse_literals(std::string_view text, SymbolTable &symbols,
                                    std::map<std::string, VarId> &vars, VarId &next_var);
Term parse_term(std::string_view text, SymbolTable &symbols, std::map<std::string, VarId> &vars,
                VarId &next_var);

std::string to_string(const SymbolTable &symbols, const Term &t);
std::string to_string(const SymbolTable &symbols, const Literal &lit);
/// Disjunction in TPTP syntax, `$false` for the empty clause. Variables are
/// printed as X<id>.
std::string to_string(const SymbolTable &symbols, const std::vector<Literal> &lits);
std::string to_tptp(const SymbolTable &symbols, const Clause &c);
std::string to_tptp(const Problem &p);

}  // namespace proofpilot::fol
