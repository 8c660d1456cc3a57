// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <set>

#include "proofpilot/common/random.hpp"
#include "proofpilot/fol/problem.hpp"
#include "test_util.hpp"

using namespace proofpilot;
using namespace proofpilot::fol;
using proofpilot::testing::make_clause;
using proofpilot::testing::make_problem;
using proofpilot::testing::make_term;

TEST_SUITE("fol") {

TEST_CASE("parse a two-literal axiom") {
  Problem p = parse_problem("cnf(a, axiom, p(X) | ~q(X)).");
  REQUIRE(p.axioms.size() == 1);
  const Clause &c = p.axioms[0];
  CHECK(c.literals.size() == 2);
  CHECK(c.literals[0].positive);
  CHECK_FALSE(c.literals[1].positive);
  CHECK(clause_vars(c.literals).size() == 1);
  CHECK_FALSE(c.from_negated_conjecture);
  CHECK(c.name == "a");
}

TEST_CASE("negated conjecture role sets the flag") {
  Problem p = parse_problem("cnf(g, negated_conjecture, ~p(c)).");
  REQUIRE(p.negated_conjecture.size() == 1);
  CHECK(p.negated_conjecture[0].from_negated_conjecture);
  CHECK(p.negated_conjecture[0].set_of_support);
  CHECK(p.inputs().size() == 1);
}

TEST_CASE("arity conflict is rejected with a position") {
  try {
    parse_problem("cnf(a, axiom, p(a)).\ncnf(b, axiom, p(a, b)).");
    FAIL("expected a parse error");
  } catch (const ParseError &e) {
    CHECK(e.line() == 2);
    CHECK(std::string(e.what()).find("arity") != std::string::npos);
  }
}

TEST_CASE("malformed input reports line and column") {
  CHECK_THROWS_AS(parse_problem("cnf(a, axiom, p(X) | ).\n"), ParseError);
  CHECK_THROWS_AS(parse_problem("cnf(a, axiom, p(X)"), ParseError);
  CHECK_THROWS_AS(parse_problem("cnf(a, lemma_role_x, p)."), ParseError);
  CHECK_THROWS_AS(parse_problem("cnf(a, axiom, X)."), ParseError);
}

TEST_CASE("comments, $false and variable scoping") {
  Problem p = parse_problem(
      "% comment line\n"
      "cnf(a, axiom, p(X)).\n"
      "cnf(b, axiom, q(X, Y)).  % trailing\n"
      "cnf(e, axiom, $false).\n");
  REQUIRE(p.axioms.size() == 3);
  // Variables are local to each clause.
  auto va = clause_vars(p.axioms[0].literals);
  auto vb = clause_vars(p.axioms[1].literals);
  for (VarId v : va) CHECK(std::find(vb.begin(), vb.end(), v) == vb.end());
  CHECK(p.axioms[2].empty());
  CHECK(p.next_var == 3);
}

TEST_CASE("printer round trip") {
  const char *text =
      "cnf(a, axiom, p(X) | ~q(f(X, Y), a)).\n"
      "cnf(b, axiom, ~r | s(g(g(b)))).\n"
      "cnf(c, negated_conjecture, ~p(c)).\n";
  Problem p = parse_problem(text);
  std::string once = to_tptp(p);
  Problem q = parse_problem(once);
  CHECK(to_tptp(q) == once);
  REQUIRE(q.size() == p.size());
  for (std::size_t i = 0; i < p.axioms.size(); ++i) {
    CHECK(variant_key(p.axioms[i].literals) == variant_key(q.axioms[i].literals));
  }
}

TEST_CASE("substitution application") {
  SymbolTable st;
  std::map<std::string, VarId> vars;
  Term fxy = make_term("f(X, Y)", st, vars);
  Term x = make_term("X", st, vars);
  Term a = make_term("a", st, vars);
  Term gy = make_term("g(Y)", st, vars);

  Substitution s;
  s.bind(x.var(), a);
  CHECK(apply(s, fxy) == make_term("f(a, Y)", st, vars));
  CHECK(apply(Substitution{}, fxy) == fxy);
  Substitution s2;
  s2.bind(x.var(), gy);
  CHECK(apply(s2, x) == gy);
}

TEST_CASE("mgu examples") {
  SymbolTable st;
  std::map<std::string, VarId> vars;
  Term px = make_term("p(X)", st, vars);
  Term pa = make_term("p(a)", st, vars);
  Term qx = make_term("q(X)", st, vars);
  Term pfx = make_term("p(f(X))", st, vars);

  auto s = mgu(px, pa);
  REQUIRE(s);
  CHECK(s->size() == 1);
  CHECK(*s->lookup(vars.at("X")) == make_term("a", st, vars));
  CHECK_FALSE(mgu(px, qx));
  CHECK_FALSE(mgu(px, pfx));
}

TEST_CASE("weight and literal count") {
  SymbolTable st;
  CHECK(clause_weight(make_clause("p(a)", st)) == 2);
  CHECK(literal_count(make_clause("p(a)", st)) == 1);
  Clause c = make_clause("p(f(X)) | ~q(X)", st);
  CHECK(clause_weight(c) == 5);
  CHECK(literal_count(c) == 2);
  Clause e = make_clause("$false", st);
  CHECK(clause_weight(e) == 0);
  CHECK(literal_count(e) == 0);
}

TEST_CASE("tautology, dedup and variant keys") {
  SymbolTable st;
  CHECK(is_tautology(make_clause("p(X) | ~p(X)", st).literals));
  CHECK_FALSE(is_tautology(make_clause("p(X) | ~p(Y)", st).literals));
  CHECK(dedup_literals(make_clause("p(X) | q | p(X)", st).literals).size() == 2);
  CHECK(variant_key(make_clause("r(X, Y) | s(Y)", st).literals) ==
        variant_key(make_clause("r(U, V) | s(V)", st, 7).literals));
  CHECK(variant_key(make_clause("r(X, Y)", st).literals) != variant_key(make_clause("r(X, X)", st).literals));
}

}  // TEST_SUITE

namespace {

// Small signature for random unification problems.
struct Signature {
  SymbolTable st;
  SymbolId f, g, h, a, b;
  Signature() {
    f = st.intern("f", SymbolKind::Function, 2);
    g = st.intern("g", SymbolKind::Function, 1);
    h = st.intern("h", SymbolKind::Function, 3);
    a = st.intern("a", SymbolKind::Function, 0);
    b = st.intern("b", SymbolKind::Function, 0);
  }

  Term random_term(Rng &rng, int depth, VarId nvars) {
    const auto pick = uniform_index(rng, depth > 0 ? 7 : 3);
    switch (pick) {
      case 0:
      case 1:
        return Term::variable(static_cast<VarId>(uniform_index(rng, nvars)));
      case 2:
        return Term::application(uniform_index(rng, 2) ? a : b);
      case 3:
      case 4:
        return Term::application(f, {random_term(rng, depth - 1, nvars), random_term(rng, depth - 1, nvars)});
      case 5:
        return Term::application(g, {random_term(rng, depth - 1, nvars)});
      default:
        return Term::application(
            h, {random_term(rng, depth - 1, nvars), random_term(rng, depth - 1, nvars),
                random_term(rng, depth - 1, nvars)});
    }
  }

  // Replaces random subterms of `t` with variables or fresh structure.
  Term mutate(const Term &t, Rng &rng, VarId nvars) {
    if (uniform_index(rng, 5) == 0) return Term::variable(static_cast<VarId>(uniform_index(rng, nvars)));
    if (t.is_variable()) return uniform_index(rng, 3) == 0 ? random_term(rng, 1, nvars) : t;
    std::vector<Term> args;
    for (const Term &x : t.args()) args.push_back(mutate(x, rng, nvars));
    return Term::application(t.head(), std::move(args));
  }
};

void collect(const Term &t, std::set<VarId> &out) {
  std::vector<VarId> vs;
  t.collect_vars(vs);
  out.insert(vs.begin(), vs.end());
}

}  // namespace

TEST_CASE("unification soundness and most generality on random pairs") {
  Signature sig;
  Rng rng(derive_seed(2024, {1}));
  constexpr VarId kVars = 3;
  const std::vector<Term> ground = {
      Term::application(sig.a), Term::application(sig.b),
      Term::application(sig.g, {Term::application(sig.a)}),
      Term::application(sig.f, {Term::application(sig.a), Term::application(sig.b)}),
      Term::application(sig.g, {Term::application(sig.g, {Term::application(sig.b)})})};

  std::size_t unified = 0, witnessed = 0;
  for (int trial = 0; trial < 1500; ++trial) {
    Term s = sig.random_term(rng, 3, kVars);
    Term t = trial % 2 ? sig.random_term(rng, 3, kVars) : sig.mutate(s, rng, kVars);
    auto sigma = mgu(s, t);

    if (sigma) {
      ++unified;
      // Soundness: sigma unifies.
      REQUIRE(apply(*sigma, s) == apply(*sigma, t));
      // Idempotence: no bound variable occurs in the range.
      std::set<VarId> range;
      for (const auto &[v, term] : sigma->bindings()) collect(term, range);
      for (const auto &[v, term] : sigma->bindings()) {
        CHECK(range.count(v) == 0);
        CHECK(apply(*sigma, term) == term);
      }
    }

    // Brute-force ground unifiers over a finite domain: each one must exist
    // only if the mgu exists, and must be an instance of it.
    const std::size_t n = ground.size();
    for (std::size_t code = 0; code < n * n * n; ++code) {
      Substitution theta;
      std::size_t k = code;
      for (VarId v = 0; v < kVars; ++v, k /= n) theta.bind(v, ground[k % n]);
      if (!(apply(theta, s) == apply(theta, t))) continue;
      ++witnessed;
      REQUIRE(sigma);
      // theta = delta o sigma for some delta: match sigma(x_i) onto theta(x_i)
      // jointly through a tuple.
      std::vector<Term> lhs, rhs;
      for (VarId v = 0; v < kVars; ++v) {
        lhs.push_back(apply(*sigma, Term::variable(v)));
        rhs.push_back(theta.lookup(v) ? *theta.lookup(v) : Term::variable(v));
      }
      Substitution delta;
      CHECK(match(Term::application(sig.h, lhs), Term::application(sig.h, rhs), delta));
      break;
    }
  }
  CHECK(unified > 200);
  CHECK(witnessed > 100);
}

TEST_CASE("mgu of a term with itself is empty") {
  Signature sig;
  Rng rng(7);
  for (int i = 0; i < 200; ++i) {
    Term s = sig.random_term(rng, 3, 4);
    auto sigma = mgu(s, s);
    REQUIRE(sigma);
    CHECK(sigma->empty());
  }
}
