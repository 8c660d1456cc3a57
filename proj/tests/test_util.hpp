// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "proofpilot/fol/problem.hpp"

namespace proofpilot::testing {

// Clause over `symbols` parsed from "p(X) | ~q(X)" syntax. Variables are
// scoped to the call.
inline fol::Clause make_clause(std::string_view text, fol::SymbolTable &symbols, fol::VarId first_var = 0) {
  std::map<std::string, fol::VarId> vars;
  fol::VarId next = first_var;
  fol::Clause c;
  c.literals = fol::parse_literals(text, symbols, vars, next);
  return c;
}

inline fol::Term make_term(std::string_view text, fol::SymbolTable &symbols,
                           std::map<std::string, fol::VarId> &vars) {
  fol::VarId next = static_cast<fol::VarId>(vars.size());
  return fol::parse_term(text, symbols, vars, next);
}

inline fol::Problem make_problem(const std::vector<std::string> &axioms,
                                 const std::vector<std::string> &conjecture = {},
                                 std::string name = "test") {
  std::string text;
  int n = 0;
  for (const auto &a : axioms) text += "cnf(a" + std::to_string(n++) + ", axiom, " + a + ").\n";
  for (const auto &c : conjecture) text += "cnf(c" + std::to_string(n++) + ", negated_conjecture, " + c + ").\n";
  return fol::parse_problem(text, std::move(name));
}

}  // namespace proofpilot::testing
