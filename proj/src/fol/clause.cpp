// SPDX-License-Identifier: Apache-2.0
#include "proofpilot/fol/clause.hpp"

#include <algorithm>
#include <string>
#include <unordered_map>

namespace proofpilot::fol {

const char *rule_name(InferenceRule rule) {
  switch (rule) {
    case InferenceRule::Resolution:
      return "resolution";
    case InferenceRule::Factoring:
      return "factoring";
  }
  return "unknown";
}

std::size_t literals_weight(const std::vector<Literal> &lits) {
  std::size_t w = 0;
  for (const Literal &l : lits) w += l.atom.weight();
  return w;
}

std::size_t clause_weight(const Clause &c) { return literals_weight(c.literals); }

std::size_t literal_count(const Clause &c) { return c.literals.size(); }

std::vector<Literal> dedup_literals(std::vector<Literal> lits) {
  std::vector<Literal> out;
  out.reserve(lits.size());
  for (Literal &l : lits) {
    if (std::find(out.begin(), out.end(), l) == out.end()) out.push_back(std::move(l));
  }
  return out;
}

bool is_tautology(const std::vector<Literal> &lits) {
  for (std::size_t i = 0; i < lits.size(); ++i) {
    for (std::size_t j = i + 1; j < lits.size(); ++j) {
      if (lits[i].positive != lits[j].positive && lits[i].atom == lits[j].atom) return true;
    }
  }
  return false;
}

std::vector<VarId> clause_vars(const std::vector<Literal> &lits) {
  std::vector<VarId> vars;
  for (const Literal &l : lits) l.atom.collect_vars(vars);
  return vars;
}

std::vector<Literal> rename_fresh(const std::vector<Literal> &lits, VarId &next,
                                  Substitution *renaming) {
  Substitution sigma;
  for (VarId v : clause_vars(lits)) sigma.bind(v, Term::variable(next++));
  std::vector<Literal> out;
  out.reserve(lits.size());
  for (const Literal &l : lits) out.push_back(Literal{l.positive, apply(sigma, l.atom)});
  if (renaming) *renaming = std::move(sigma);
  return out;
}

namespace {

void write_key(const Term &t, std::unordered_map<VarId, std::size_t> &names, std::string &out) {
  if (t.is_variable()) {
    auto [it, inserted] = names.emplace(t.var(), names.size());
    out += 'V';
    out += std::to_string(it->second);
    return;
  }
  out += std::to_string(t.head());
  if (t.arity() == 0) return;
  out += '(';
  for (std::size_t i = 0; i < t.arity(); ++i) {
    if (i) out += ',';
    write_key(t.args()[i], names, out);
  }
  out += ')';
}

}  // namespace

std::string variant_key(const std::vector<Literal> &lits) {
  std::unordered_map<VarId, std::size_t> names;
  std::string out;
  for (const Literal &l : lits) {
    out += l.positive ? '+' : '-';
    write_key(l.atom, names, out);
    out += '|';
  }
  return out;
}

}  // namespace proofpilot::fol
