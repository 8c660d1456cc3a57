// SPDX-License-Identifier: Apache-2.0
#include "proofpilot/engine/rules.hpp"

#include <unordered_set>

namespace proofpilot::engine {

using fol::Substitution;

namespace {

void instantiate_into(const std::vector<Literal> &lits, std::size_t skip, const Substitution &sigma,
                      std::vector<Literal> &out) {
  for (std::size_t k = 0; k < lits.size(); ++k) {
    if (k == skip) continue;
    out.push_back(Literal{lits[k].positive, fol::apply(sigma, lits[k].atom)});
  }
}

}  // namespace

std::vector<Conclusion> resolve(const Clause &given, const Clause &partner,
                                const std::vector<Literal> &partner_literals,
                                const Substitution &renaming, std::size_t symbol_budget) {
  std::vector<Conclusion> out;
  std::size_t produced = 0;
  for (std::size_t i = 0; i < given.literals.size(); ++i) {
    const Literal &li = given.literals[i];
    for (std::size_t j = 0; j < partner_literals.size(); ++j) {
      const Literal &lj = partner_literals[j];
      if (!li.complementary_to(lj)) continue;
      auto sigma = fol::mgu(li.atom, lj.atom);
      if (!sigma) continue;
      Conclusion c;
      instantiate_into(given.literals, i, *sigma, c.literals);
      instantiate_into(partner_literals, j, *sigma, c.literals);
      c.literals = fol::dedup_literals(std::move(c.literals));
      produced += fol::literals_weight(c.literals) + 1;
      if (produced > symbol_budget) throw ResourceExhausted("symbol budget exhausted");
      c.record.rule = fol::InferenceRule::Resolution;
      c.record.premises = {given.id, partner.id};
      c.record.literal_indices = {static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)};
      c.record.unifier = std::move(*sigma);
      c.record.renaming = renaming;
      out.push_back(std::move(c));
    }
  }
  return out;
}

std::vector<Conclusion> resolve(const Clause &given, const Clause &partner) {
  return resolve(given, partner, partner.literals, Substitution{});
}

std::vector<Conclusion> factor(const Clause &c, std::size_t symbol_budget) {
  std::vector<Conclusion> out;
  std::size_t produced = 0;
  std::unordered_set<std::string> seen;
  const auto &lits = c.literals;
  for (std::size_t i = 0; i < lits.size(); ++i) {
    for (std::size_t j = i + 1; j < lits.size(); ++j) {
      if (lits[i].positive != lits[j].positive || lits[i].atom.head() != lits[j].atom.head()) continue;
      auto sigma = fol::mgu(lits[i].atom, lits[j].atom);
      if (!sigma) continue;
      Conclusion f;
      instantiate_into(lits, lits.size(), *sigma, f.literals);
      f.literals = fol::dedup_literals(std::move(f.literals));
      if (!seen.insert(fol::variant_key(f.literals)).second) continue;
      produced += fol::literals_weight(f.literals) + 1;
      if (produced > symbol_budget) throw ResourceExhausted("symbol budget exhausted");
      f.record.rule = fol::InferenceRule::Factoring;
      f.record.premises = {c.id};
      f.record.literal_indices = {static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)};
      f.record.unifier = std::move(*sigma);
      out.push_back(std::move(f));
    }
  }
  return out;
}

}  // namespace proofpilot::engine
