// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <algorithm>
#include <filesystem>

#include "proofpilot/engine/episode.hpp"
#include "proofpilot/engine/proof_io.hpp"
#include "proofpilot/engine/rules.hpp"
#include "test_util.hpp"

using namespace proofpilot;
using namespace proofpilot::engine;
using proofpilot::testing::make_clause;
using proofpilot::testing::make_problem;

namespace {

std::string text_of(const Saturation &e, ClauseId id) { return fol::to_string(e.symbols(), e.clause(id).literals); }

std::vector<std::string> rendered(const fol::SymbolTable &st, const std::vector<Conclusion> &cs) {
  std::vector<std::string> out;
  for (const auto &c : cs) out.push_back(fol::to_string(st, c.literals));
  return out;
}

fol::Problem corpus_problem(const std::string &name) {
  return fol::parse_problem_file(std::string(PROOFPILOT_CORPUS_DIR) + "/unsat/" + name + ".p");
}

}  // namespace

TEST_SUITE("engine") {

TEST_CASE("initial actions pair every input with every rule") {
  Saturation e(make_problem({"p(a)", "q(X) | ~p(X)", "r"}));
  CHECK(e.state().actions.size() == 6);
  CHECK(e.state().actions[0] == Action{InferenceRule::Resolution, 0});
  CHECK(e.state().actions[1] == Action{InferenceRule::Factoring, 0});
  CHECK(e.state().processed.empty());
  CHECK(e.state().unprocessed.size() == 3);
}

TEST_CASE("input empty clause is an immediate refutation") {
  fol::Problem p = make_problem({"p(a)", "$false"});
  BreadthFirstPolicy bfs;
  Rng rng(1);
  EpisodeResult r = run_episode(p, bfs, Limits{}, rng);
  CHECK(r.outcome == Outcome::Refutation);
  CHECK(r.steps.empty());
}

TEST_CASE("a problem without clauses is rejected") {
  fol::Problem p = fol::parse_problem("% nothing here\n");
  CHECK_THROWS_AS(Saturation{p}, EngineError);
}

TEST_CASE("resolution against a processed unit derives the empty clause") {
  Saturation e(make_problem({"p(X)", "~p(a)"}));
  e.execute(Action{InferenceRule::Resolution, 0});
  StepResult r = e.execute(Action{InferenceRule::Resolution, 1});
  REQUIRE(r.derived.size() == 1);
  CHECK(e.clause(r.derived[0]).empty());
  CHECK(e.empty_clause() == r.derived[0]);
}

TEST_CASE("factoring step derives the merged clause") {
  Saturation e(make_problem({"p(X) | p(a)"}));
  StepResult r = e.execute(Action{InferenceRule::Factoring, 0});
  REQUIRE(r.derived.size() == 1);
  CHECK(text_of(e, r.derived[0]) == "p(a)");
  CHECK(e.clause(r.derived[0]).age == 1);
}

TEST_CASE("a step without partners still processes the clause") {
  Saturation e(make_problem({"p(a)", "q(b)"}));
  e.execute(Action{InferenceRule::Resolution, 0});
  StepResult r = e.execute(Action{InferenceRule::Resolution, 1});
  CHECK(r.derived.empty());
  CHECK(e.state().processed == std::vector<ClauseId>{0, 1});
  CHECK(e.saturated());
}

TEST_CASE("processing a clause removes both of its actions") {
  Saturation e(make_problem({"p(a)", "q(b)"}));
  e.execute(Action{InferenceRule::Factoring, 0});
  for (const Action &a : e.state().actions) CHECK(a.clause != 0);
  CHECK_THROWS_AS(e.execute(Action{InferenceRule::Resolution, 0}), EngineError);
  CHECK_THROWS_AS(e.execute_index(7), EngineError);
}

TEST_CASE("resolve examples") {
  fol::SymbolTable st;
  Clause a = make_clause("p(X) | q(X)", st);
  Clause b = make_clause("~p(a)", st, 10);
  CHECK(rendered(st, resolve(a, b)) == std::vector<std::string>{"q(a)"});

  Clause c = make_clause("p(X)", st);
  Clause d = make_clause("~p(Y)", st, 10);
  auto r = resolve(c, d);
  REQUIRE(r.size() == 1);
  CHECK(r[0].literals.empty());

  CHECK(resolve(make_clause("p(a)", st), make_clause("p(b)", st)).empty());
}

TEST_CASE("factor examples") {
  fol::SymbolTable st;
  CHECK(rendered(st, factor(make_clause("p(X) | p(a)", st))) == std::vector<std::string>{"p(a)"});
  CHECK(factor(make_clause("p(a) | q(b)", st)).empty());
  CHECK(factor(make_clause("p(X) | p(f(X))", st)).empty());
}

TEST_CASE("symbol budget stops an inference") {
  fol::SymbolTable st;
  Clause a = make_clause("p(X) | q(X, X, X)", st);
  Clause b = make_clause("~p(a)", st, 10);
  CHECK_THROWS_AS(resolve(a, b, b.literals, fol::Substitution{}, 3), ResourceExhausted);
  CHECK(resolve(a, b, b.literals, fol::Substitution{}, 6).size() == 1);
}

TEST_CASE("resource limit leaves the engine state untouched") {
  fol::Problem p = make_problem({"p(X) | q(X, X, X, X)", "~p(a)"});
  Saturation e(p);
  e.set_symbol_budget(e.stored_symbols() + 2);
  e.execute(Action{InferenceRule::Resolution, 0});
  const auto before = e.state().actions;
  CHECK_THROWS_AS(e.execute(Action{InferenceRule::Resolution, 1}), ResourceExhausted);
  CHECK(e.state().actions == before);
  CHECK(e.state().processed.size() == 1);

  BreadthFirstPolicy bfs;
  Rng rng(0);
  Limits limits;
  limits.max_symbols = 12;
  EpisodeResult r = run_episode(p, bfs, limits, rng);
  CHECK(r.outcome == Outcome::ResourceLimit);
  CHECK(r.steps.size() == 1);
}

TEST_CASE("term depth limit stops an inference") {
  // Self-resolution of p(X) | ~p(f(X)) yields p(Y) | ~p(f(f(Y))), one level deeper.
  fol::Problem p = make_problem({"p(X) | ~p(f(X))", "p(a)"}, {"~p(b)"});
  Saturation e(p);
  CHECK(e.clause(0).literals[1].atom.depth() == 3);
  e.set_depth_limit(3);
  CHECK_THROWS_AS(e.execute(Action{InferenceRule::Resolution, 0}), ResourceExhausted);
  CHECK(e.state().processed.empty());
  CHECK(e.derivation().clauses.size() == 3);
  e.set_depth_limit(4);
  CHECK_NOTHROW(e.execute(Action{InferenceRule::Resolution, 0}));

  BreadthFirstPolicy bfs;
  Rng rng(0);
  Limits limits;
  limits.max_term_depth = 8;
  EpisodeResult r = run_episode(p, bfs, limits, rng);
  CHECK(r.outcome == Outcome::ResourceLimit);
  for (const auto &c : r.engine->derivation().clauses) {
    for (const auto &l : c.literals) CHECK(l.atom.depth() <= 8);
  }
}

TEST_CASE("linear refutation keeps every step") {
  fol::Problem p = make_problem({"p", "~p | q"}, {"~q"});
  Saturation e(p);
  e.execute(Action{InferenceRule::Resolution, 2});  // ~q
  e.execute(Action{InferenceRule::Resolution, 1});  // ~p | q, derives ~p
  e.execute(Action{InferenceRule::Resolution, 3});  // ~p
  e.execute(Action{InferenceRule::Resolution, 0});  // p, derives the empty clause
  REQUIRE(e.empty_clause());
  auto proof = extract_proof(e.derivation(), *e.empty_clause());
  CHECK(proof.size() == 4);
}

TEST_CASE("irrelevant steps are excluded from the proof") {
  fol::Problem p = make_problem({"r(b)", "~r(X) | s(X)", "p"}, {"~p"});
  Saturation e(p);
  e.execute(Action{InferenceRule::Resolution, 0});
  e.execute(Action{InferenceRule::Resolution, 1});  // derives s(b)
  e.execute(Action{InferenceRule::Resolution, 2});
  e.execute(Action{InferenceRule::Resolution, 3});  // derives the empty clause
  REQUIRE(e.empty_clause());
  auto proof = extract_proof(e.derivation(), *e.empty_clause());
  REQUIRE(proof.size() == 2);
  CHECK(proof[0].step == 2);
  CHECK(proof[1].step == 3);
}

TEST_CASE("trivial problem under the deterministic policies") {
  fol::Problem p = make_problem({"p(a)"}, {"~p(a)"});
  BreadthFirstPolicy bfs;
  AgeWeightPolicy baseline;
  for (Policy *policy : std::initializer_list<Policy *>{&bfs, &baseline}) {
    Rng rng(3);
    EpisodeResult r = run_episode(p, *policy, Limits{}, rng);
    CHECK(r.outcome == Outcome::Refutation);
    CHECK(r.steps.size() <= 2);
    CHECK(r.proof.size() <= 2);
  }
}

TEST_CASE("trivial problem under the random policy ends within two steps") {
  // Factoring both units processes them without resolving, so saturation is
  // a legitimate outcome for a random policy.
  fol::Problem p = make_problem({"p(a)"}, {"~p(a)"});
  UniformRandomPolicy random;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed);
    EpisodeResult r = run_episode(p, random, Limits{}, rng);
    CHECK(r.steps.size() <= 2);
    CHECK((r.outcome == Outcome::Refutation || r.outcome == Outcome::Saturated));
  }
}

TEST_CASE("satisfiable unit saturates") {
  BreadthFirstPolicy bfs;
  Rng rng(0);
  EpisodeResult r = run_episode(make_problem({"p(a)"}), bfs, Limits{}, rng);
  CHECK(r.outcome == Outcome::Saturated);
  CHECK(r.proof.empty());
}

TEST_CASE("step limit") {
  fol::Problem p = corpus_problem("chain08");
  BreadthFirstPolicy bfs;
  Rng rng(0);
  Limits limits;
  limits.max_steps = 1;
  EpisodeResult r = run_episode(p, bfs, limits, rng);
  CHECK(r.outcome == Outcome::StepLimit);
  CHECK(r.steps.size() == 1);
}

TEST_CASE("recorded snapshots match the compact reconstruction") {
  UniformRandomPolicy random;
  AgeWeightPolicy baseline;
  for (const char *name : {"chain04_noise", "plus_2_2", "family3", "append2"}) {
    fol::Problem p = corpus_problem(name);
    for (Policy *policy : std::initializer_list<Policy *>{&random, &baseline}) {
      Rng rng(derive_seed(11, {std::hash<std::string>{}(name)}));
      Limits limits;
      limits.max_steps = 60;
      EpisodeResult r = run_episode(p, *policy, limits, rng, EpisodeOptions{true});
      for (std::size_t t = 0; t < r.steps.size(); ++t) {
        StateSnapshot s = snapshot_at(r.steps, t);
        REQUIRE(r.steps[t].snapshot);
        CHECK(s.processed == r.steps[t].snapshot->processed);
        CHECK(s.actions == r.steps[t].snapshot->actions);
        CHECK(s.actions.size() == r.steps[t].num_actions);
        CHECK(s.actions[r.steps[t].action_index] == r.steps[t].action);
      }
    }
  }
}

TEST_CASE("episodes are deterministic for a fixed seed") {
  fol::Problem p = corpus_problem("chain06_noise");
  UniformRandomPolicy random;
  Limits limits;
  limits.max_steps = 80;
  Rng r1(99), r2(99);
  EpisodeResult a = run_episode(p, random, limits, r1);
  EpisodeResult b = run_episode(p, random, limits, r2);
  REQUIRE(a.steps.size() == b.steps.size());
  for (std::size_t t = 0; t < a.steps.size(); ++t) CHECK(a.steps[t].action == b.steps[t].action);
  CHECK(a.outcome == b.outcome);
}

TEST_CASE("proof steps are a subset of episode steps and derivations verify") {
  UniformRandomPolicy random;
  AgeWeightPolicy baseline;
  for (const auto &entry : std::filesystem::directory_iterator(std::string(PROOFPILOT_CORPUS_DIR) + "/unsat")) {
    fol::Problem p = fol::parse_problem_file(entry.path().string());
    for (Policy *policy : std::initializer_list<Policy *>{&random, &baseline}) {
      Rng rng(5);
      Limits limits;
      limits.max_steps = 150;
      EpisodeResult r = run_episode(p, *policy, limits, rng);
      if (!r.solved()) continue;
      CHECK(r.proof.size() <= r.steps.size());
      for (const ProofStep &s : r.proof) {
        REQUIRE(s.step < r.steps.size());
        CHECK(r.steps[s.step].action == s.action);
      }
      auto dump = derivation_dump(*r.engine, *r.engine->empty_clause(), p.name);
      VerifyResult v = verify_dump(dump, &p);
      CHECK_MESSAGE(v.ok, p.name << ": " << v.message);
    }
  }
}

TEST_CASE("verifier rejects tampered and empty dumps") {
  fol::Problem p = make_problem({"p(X) | q(X)", "~q(a)"}, {"~p(a)"});
  AgeWeightPolicy baseline;
  Rng rng(0);
  EpisodeResult r = run_episode(p, baseline, Limits{}, rng);
  REQUIRE(r.solved());
  auto dump = derivation_dump(*r.engine, *r.engine->empty_clause(), p.name);
  CHECK(verify_dump(dump, &p).ok);

  // Drop one literal from a two-literal resolvent.
  bool tampered = false;
  for (auto &c : dump["clauses"]) {
    const std::string lits = c["literals"];
    auto bar = lits.find(" | ");
    if (!c["inference"].is_null() && bar != std::string::npos) {
      c["literals"] = lits.substr(0, bar);
      VerifyResult v = verify_dump(dump, &p);
      CHECK_FALSE(v.ok);
      CHECK(v.failed_clause == c["id"].get<ClauseId>());
      tampered = true;
      break;
    }
  }
  if (!tampered) {
    // Alter the first derived clause instead.
    for (auto &c : dump["clauses"]) {
      if (c["inference"].is_null() || c["literals"] == "$false") continue;
      c["literals"] = "r(b)";
      VerifyResult v = verify_dump(dump, &p);
      CHECK_FALSE(v.ok);
      CHECK(v.failed_clause == c["id"].get<ClauseId>());
      tampered = true;
      break;
    }
  }
  CHECK(tampered);

  nlohmann::json empty = {{"format", "proofpilot-derivation"}, {"clauses", nlohmann::json::array()}};
  CHECK_FALSE(verify_dump(empty).ok);
  CHECK_FALSE(verify_dump(nlohmann::json::object()).ok);
}

TEST_CASE("verifier rejects inputs foreign to the problem") {
  fol::Problem p = make_problem({"p(a)"}, {"~p(a)"});
  fol::Problem other = make_problem({"p(b)"}, {"~p(a)"});
  BreadthFirstPolicy bfs;
  Rng rng(0);
  EpisodeResult r = run_episode(p, bfs, Limits{}, rng);
  REQUIRE(r.solved());
  auto dump = derivation_dump(*r.engine, *r.engine->empty_clause(), p.name);
  CHECK(verify_dump(dump, &p).ok);
  CHECK(verify_dump(dump).ok);
  CHECK_FALSE(verify_dump(dump, &other).ok);
}

}  // TEST_SUITE
