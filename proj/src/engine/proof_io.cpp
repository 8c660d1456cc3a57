// SPDX-License-Identifier: Apache-2.0
#include "proofpilot/engine/proof_io.hpp"

#include <map>
#include <set>
#include <sstream>
#include <unordered_set>

namespace proofpilot::engine {

using nlohmann::json;

namespace {

std::string var_name(fol::VarId v) { return "X" + std::to_string(v); }

json substitution_json(const fol::SymbolTable &symbols, const fol::Substitution &s) {
  json out = json::object();
  for (const auto &[v, t] : s.bindings()) out[var_name(v)] = fol::to_string(symbols, t);
  return out;
}

const char *role_of(const Clause &c) {
  if (c.origin) return "derived";
  return c.from_negated_conjecture ? "negated_conjecture" : "axiom";
}

}  // namespace

json derivation_dump(const Saturation &engine, ClauseId empty_id, const std::string &problem_name) {
  const auto &symbols = engine.symbols();
  json clauses = json::array();
  for (ClauseId id : proof_clauses(engine.derivation(), empty_id)) {
    const Clause &c = engine.clause(id);
    json entry = {{"id", c.id},
                  {"role", role_of(c)},
                  {"literals", fol::to_string(symbols, c.literals)},
                  {"age", c.age}};
    if (!c.name.empty()) entry["name"] = c.name;
    if (c.origin) {
      const auto &o = *c.origin;
      entry["inference"] = {{"rule", fol::rule_name(o.rule)},
                            {"premises", o.premises},
                            {"literal_indices", o.literal_indices},
                            {"unifier", substitution_json(symbols, o.unifier)},
                            {"renaming", substitution_json(symbols, o.renaming)}};
    } else {
      entry["inference"] = nullptr;
    }
    clauses.push_back(std::move(entry));
  }
  return json{{"format", "proofpilot-derivation"},
              {"version", 1},
              {"problem", problem_name},
              {"empty_clause", empty_id},
              {"clauses", std::move(clauses)}};
}

std::string proof_listing(const Saturation &engine, ClauseId empty_id) {
  const auto &symbols = engine.symbols();
  std::ostringstream out;
  for (ClauseId id : proof_clauses(engine.derivation(), empty_id)) {
    const Clause &c = engine.clause(id);
    out << id << ". " << fol::to_string(symbols, c.literals) << "  [";
    if (!c.origin) {
      out << "input " << role_of(c);
      if (!c.name.empty()) out << ' ' << c.name;
    } else {
      out << fol::rule_name(c.origin->rule);
      for (std::size_t i = 0; i < c.origin->premises.size(); ++i) {
        out << (i ? "," : " ") << c.origin->premises[i] << ':' << c.origin->literal_indices[i];
      }
      if (c.origin->rule == InferenceRule::Factoring) out << ':' << c.origin->literal_indices[1];
      if (!c.origin->unifier.empty()) {
        out << " {";
        bool first = true;
        for (const auto &[v, t] : c.origin->unifier.bindings()) {
          out << (first ? "" : ", ") << var_name(v) << "->" << fol::to_string(symbols, t);
          first = false;
        }
        out << '}';
      }
    }
    out << "]\n";
  }
  return out.str();
}

namespace {

struct VerifyFailure {
  std::optional<ClauseId> clause;
  std::string message;
};

class DumpChecker {
 public:
  explicit DumpChecker(const Problem *problem)
      : symbols_(problem ? std::make_shared<fol::SymbolTable>(*problem->symbols)
                         : std::make_shared<fol::SymbolTable>()) {
    if (problem) {
      for (const Clause &c : problem->inputs()) input_keys_.insert(fol::variant_key(c.literals));
      check_inputs_ = true;
    }
  }

  VerifyResult run(const json &dump) {
    if (!dump.is_object() || !dump.contains("clauses") || !dump["clauses"].is_array()) {
      return fail(std::nullopt, "malformed dump: missing clause list");
    }
    for (const json &entry : dump["clauses"]) {
      const auto id = entry.at("id").get<ClauseId>();
      if (auto msg = check_entry(id, entry)) return fail(id, *msg);
    }
    if (!dump.contains("empty_clause") || dump["empty_clause"].is_null()) {
      return fail(std::nullopt, "dump does not name an empty clause");
    }
    const auto empty_id = dump["empty_clause"].get<ClauseId>();
    auto it = checked_.find(empty_id);
    if (it == checked_.end()) return fail(empty_id, "empty clause is not part of the dump");
    if (!it->second.empty()) return fail(empty_id, "final clause is not empty");
    return VerifyResult{true, std::nullopt, "ok"};
  }

 private:
  static VerifyResult fail(std::optional<ClauseId> id, std::string msg) {
    return VerifyResult{false, id, std::move(msg)};
  }

  std::vector<Literal> literals(const std::string &text) {
    return fol::parse_literals(text, *symbols_, vars_, next_var_);
  }

  fol::Substitution substitution(const json &obj) {
    fol::Substitution s;
    for (const auto &[name, value] : obj.items()) {
      fol::Term v = fol::parse_term(name, *symbols_, vars_, next_var_);
      if (!v.is_variable()) throw std::runtime_error("substitution key '" + name + "' is not a variable");
      s.bind(v.var(), fol::parse_term(value.get<std::string>(), *symbols_, vars_, next_var_));
    }
    return s;
  }

  static std::vector<Literal> instantiate(const std::vector<Literal> &lits, const fol::Substitution &s,
                                          std::optional<std::size_t> skip = std::nullopt) {
    std::vector<Literal> out;
    for (std::size_t k = 0; k < lits.size(); ++k) {
      if (skip && *skip == k) continue;
      out.push_back(Literal{lits[k].positive, fol::apply(s, lits[k].atom)});
    }
    return out;
  }

  std::optional<std::string> check_entry(ClauseId id, const json &entry) {
    if (checked_.count(id)) return "duplicate clause id";
    std::vector<Literal> lits = literals(entry.at("literals").get<std::string>());
    const json &inf = entry.contains("inference") ? entry["inference"] : json(nullptr);
    if (inf.is_null()) {
      if (check_inputs_ && !input_keys_.count(fol::variant_key(lits))) {
        return "input clause does not occur in the problem";
      }
      checked_.emplace(id, std::move(lits));
      return std::nullopt;
    }
    const auto rule = inf.at("rule").get<std::string>();
    const auto premises = inf.at("premises").get<std::vector<ClauseId>>();
    const auto idx = inf.at("literal_indices").get<std::vector<std::size_t>>();
    const fol::Substitution sigma = substitution(inf.at("unifier"));
    for (ClauseId p : premises) {
      if (p >= id || !checked_.count(p)) return "premise " + std::to_string(p) + " does not precede the clause";
    }
    std::vector<Literal> expected;
    if (rule == "resolution") {
      if (premises.size() != 2 || idx.size() != 2) return "resolution needs two premises";
      const auto &first = checked_.at(premises[0]);
      fol::Substitution rho = inf.contains("renaming") ? substitution(inf["renaming"]) : fol::Substitution{};
      std::set<fol::VarId> targets;
      for (const auto &[v, t] : rho.bindings()) {
        if (!t.is_variable() || !targets.insert(t.var()).second) return "renaming is not a variable bijection";
      }
      const auto second = instantiate(checked_.at(premises[1]), rho);
      if (idx[0] >= first.size() || idx[1] >= second.size()) return "literal index out of range";
      const Literal &a = first[idx[0]];
      const Literal &b = second[idx[1]];
      if (a.positive == b.positive) return "resolved literals have the same polarity";
      if (!(fol::apply(sigma, a.atom) == fol::apply(sigma, b.atom))) return "unifier does not unify the resolved atoms";
      expected = instantiate(first, sigma, idx[0]);
      auto rest = instantiate(second, sigma, idx[1]);
      expected.insert(expected.end(), rest.begin(), rest.end());
    } else if (rule == "factoring") {
      if (premises.size() != 1 || idx.size() != 2) return "factoring needs one premise and two literals";
      const auto &premise = checked_.at(premises[0]);
      if (idx[0] >= premise.size() || idx[1] >= premise.size() || idx[0] == idx[1]) {
        return "literal index out of range";
      }
      const Literal &a = premise[idx[0]];
      const Literal &b = premise[idx[1]];
      if (a.positive != b.positive) return "factored literals differ in polarity";
      if (!(fol::apply(sigma, a.atom) == fol::apply(sigma, b.atom))) return "unifier does not unify the factored atoms";
      expected = instantiate(premise, sigma);
    } else {
      return "unknown rule '" + rule + "'";
    }
    expected = fol::dedup_literals(std::move(expected));
    if (fol::variant_key(expected) != fol::variant_key(lits)) {
      return "recorded conclusion '" + entry.at("literals").get<std::string>() +
             "' does not match the inference result '" + fol::to_string(*symbols_, expected) + "'";
    }
    checked_.emplace(id, std::move(lits));
    return std::nullopt;
  }

  std::shared_ptr<fol::SymbolTable> symbols_;
  std::map<std::string, fol::VarId> vars_;
  fol::VarId next_var_ = 0;
  std::map<ClauseId, std::vector<Literal>> checked_;
  std::unordered_set<std::string> input_keys_;
  bool check_inputs_ = false;
};

}  // namespace

VerifyResult verify_dump(const json &dump, const Problem *problem) {
  try {
    return DumpChecker(problem).run(dump);
  } catch (const std::exception &e) {
    return VerifyResult{false, std::nullopt, std::string("malformed dump: ") + e.what()};
  }
}

}  // namespace proofpilot::engine
