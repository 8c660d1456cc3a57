// SPDX-License-Identifier: Apache-2.0
#include <cctype>

#include "proofpilot/fol/problem.hpp"

namespace proofpilot::fol {

namespace {

bool plain_name(const std::string &s) {
  if (s.empty()) return false;
  if (std::isdigit(static_cast<unsigned char>(s[0]))) {
    for (char c : s) {
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
  }
  if (!std::islower(static_cast<unsigned char>(s[0]))) return false;
  for (char c : s) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  }
  return true;
}

std::string quote(const std::string &s) {
  if (plain_name(s)) return s;
  std::string out = "'";
  for (char c : s) {
    if (c == '\'' || c == '\\') out += '\\';
    out += c;
  }
  return out + "'";
}

void write(const SymbolTable &symbols, const Term &t, std::string &out) {
  if (t.is_variable()) {
    out += 'X';
    out += std::to_string(t.var());
    return;
  }
  out += quote(symbols.name(t.head()));
  if (t.arity() == 0) return;
  out += '(';
  for (std::size_t i = 0; i < t.arity(); ++i) {
    if (i) out += ',';
    write(symbols, t.args()[i], out);
  }
  out += ')';
}

}  // namespace

std::string to_string(const SymbolTable &symbols, const Term &t) {
  std::string out;
  write(symbols, t, out);
  return out;
}

std::string to_string(const SymbolTable &symbols, const Literal &lit) {
  if (symbols.name(lit.atom.head()) == "=" && lit.atom.arity() == 2) {
    return to_string(symbols, lit.atom.args()[0]) + (lit.positive ? " = " : " != ") +
           to_string(symbols, lit.atom.args()[1]);
  }
  return (lit.positive ? "" : "~") + to_string(symbols, lit.atom);
}

std::string to_string(const SymbolTable &symbols, const std::vector<Literal> &lits) {
  if (lits.empty()) return "$false";
  std::string out;
  for (std::size_t i = 0; i < lits.size(); ++i) {
    if (i) out += " | ";
    out += to_string(symbols, lits[i]);
  }
  return out;
}

std::string to_tptp(const SymbolTable &symbols, const Clause &c) {
  std::string name = c.name.empty() ? "c" + std::to_string(c.id) : quote(c.name);
  const char *role = c.from_negated_conjecture ? "negated_conjecture" : "axiom";
  return "cnf(" + name + ", " + role + ", (" + to_string(symbols, c.literals) + ")).";
}

std::string to_tptp(const Problem &p) {
  std::string out;
  for (const Clause &c : p.inputs()) {
    out += to_tptp(*p.symbols, c);
    out += '\n';
  }
  return out;
}

}  // namespace proofpilot::fol
