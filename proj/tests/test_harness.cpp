// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "proofpilot/harness/harness.hpp"

using namespace proofpilot;
using namespace proofpilot::harness;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string &name) : path(fs::temp_directory_path() / ("proofpilot_" + name)) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  fs::path write(const std::string &file, const std::string &text) const {
    fs::path p = path / file;
    fs::create_directories(p.parent_path());
    std::ofstream(p) << text;
    return p;
  }
};

std::string slurp(const fs::path &p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_cli(const std::string &args) {
  const std::string cmd = std::string(PROOFPILOT_CLI) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string corpus(const std::string &rel) { return std::string(PROOFPILOT_CORPUS_DIR) + "/" + rel; }

}  // namespace

TEST_SUITE("harness") {

TEST_CASE("problem collection from directories and lists") {
  TempDir dir("collect");
  dir.write("b/two.p", "cnf(a, axiom, p).\n");
  dir.write("a/one.p", "cnf(a, axiom, q).\n");
  dir.write("a/notes.md", "ignored");
  dir.write("list.txt", "# comment\n\na/one.p\n  b/two.p  \n");
  auto from_dir = collect_problem_files({dir.path.string()});
  REQUIRE(from_dir.size() == 2);
  CHECK(from_dir[0].filename() == "one.p");
  auto from_list = collect_problem_files({(dir.path / "list.txt").string()});
  CHECK(from_list.size() == 2);
  CHECK(load_problems(from_list)[1].name == "two");
  CHECK_THROWS_AS(collect_problem_files({(dir.path / "missing.p").string()}), UsageError);
}

TEST_CASE("parse errors name the file and position") {
  TempDir dir("parse");
  auto bad = dir.write("bad.p", "cnf(a, axiom, p(X)).\ncnf(b, axiom, p(X) | ).\n");
  try {
    load_problems({bad});
    FAIL("expected a parse error");
  } catch (const ProblemParseError &e) {
    CHECK(std::string(e.what()).find("bad.p:2:") != std::string::npos);
  }
}

TEST_CASE("solve the trivial problem with the baseline") {
  TempDir dir("solve");
  RunConfig cfg;
  cfg.inputs = {corpus("unsat/trivial.p")};
  cfg.out = dir.path;
  std::ostringstream log;
  RunReport r = cmd_solve(cfg, log);
  REQUIRE(r.rows.size() == 1);
  CHECK(r.rows[0].outcome == engine::Outcome::Refutation);
  CHECK(r.rows[0].proof_length <= 2);
  CHECK(r.rows[0].verified == true);
  CHECK(log.str().find("verified=yes") != std::string::npos);
  CHECK(fs::exists(dir.path / "trivial.proof.json"));
  auto report = nlohmann::json::parse(slurp(dir.path / "report.json"));
  CHECK(report["totals"]["solved"] == 1);
  CHECK(cmd_verify(dir.path / "trivial.proof.json", fs::path(corpus("unsat/trivial.p"))).ok);
}

TEST_CASE("a satisfiable problem saturates") {
  RunConfig cfg;
  cfg.inputs = {corpus("sat/sat_ground.p")};
  std::ostringstream log;
  RunReport r = cmd_solve(cfg, log);
  CHECK(r.rows[0].outcome == engine::Outcome::Saturated);
  CHECK(r.saturated() == 1);
}

TEST_CASE("training with zero iterations writes an empty report") {
  TempDir dir("train0");
  RunConfig cfg;
  cfg.command = Command::Train;
  cfg.inputs = {corpus("unsat/trivial.p")};
  cfg.iterations = 0;
  cfg.out = dir.path;
  std::ostringstream log;
  RunReport r = cmd_train(cfg, log);
  CHECK(r.iterations.empty());
  auto report = nlohmann::json::parse(slurp(dir.path / "report.json"));
  CHECK(report["iterations"].empty());
  CHECK(report["best_iteration"].is_null());
  for (const auto &entry : fs::directory_iterator(dir.path)) {
    CHECK(entry.path().filename().string().rfind("checkpoint", 0) != 0);
  }
}

TEST_CASE("training reruns are byte-identical and checkpoints evaluate") {
  TempDir a("train_a"), b("train_b");
  RunConfig cfg;
  cfg.command = Command::Train;
  cfg.inputs = {corpus("unsat/trivial.p"), corpus("unsat/nested1.p"), corpus("unsat/syllogism.p")};
  cfg.iterations = 2;
  cfg.seed = 4;
  cfg.trainer.network.units = 12;
  cfg.trainer.epochs = 2;
  cfg.trainer.limits.max_steps = 30;
  std::ostringstream log;
  cfg.out = a.path;
  cmd_train(cfg, log);
  cfg.out = b.path;
  cfg.trainer.jobs = 2;
  cmd_train(cfg, log);
  for (const char *f : {"stats.jsonl", "report.json", "checkpoint-001.json", "checkpoint-002.json"}) {
    CHECK_MESSAGE(slurp(a.path / f) == slurp(b.path / f), f);
  }

  RunConfig eval;
  eval.command = Command::Eval;
  eval.inputs = {corpus("unsat/trivial.p")};
  eval.policy = (a.path / "checkpoint-002.json").string();
  RunReport r = cmd_eval(eval, log);
  REQUIRE(r.rows.size() == 1);
  if (r.rows[0].verified) CHECK(*r.rows[0].verified);

  eval.policy = "baseline";
  CHECK_THROWS_AS(cmd_eval(eval, log), UsageError);
}

TEST_CASE("config overrides") {
  RunConfig cfg;
  apply_overrides(cfg, nlohmann::json{{"seed", 9}, {"lambda", 0.01}, {"max_steps", 77}, {"jobs", 2}});
  CHECK(cfg.seed == 9);
  CHECK(cfg.trainer.lambda == 0.01);
  CHECK(cfg.trainer.limits.max_steps == 77);
  CHECK(cfg.trainer.jobs == 2);
  CHECK_THROWS_AS(apply_overrides(cfg, nlohmann::json{{"batch_size", 0}}), UsageError);
  CHECK_THROWS_AS(apply_overrides(cfg, nlohmann::json::array()), UsageError);
  CHECK_THROWS_AS(make_policy("no_such_policy", {}), UsageError);
}

TEST_CASE("command line exit codes") {
  TempDir dir("cli");
  CHECK(run_cli("solve " + corpus("unsat/trivial.p")) == 0);
  CHECK(run_cli("solve " + corpus("sat/sat_ground.p")) == 0);
  CHECK(run_cli("solve " + (dir.path / "missing.p").string()) == 1);
  CHECK(run_cli("solve --max-steps 1 " + corpus("unsat/chain08.p")) == 3);
  CHECK(run_cli("bogus-command") == 1);
  auto bad = dir.write("bad.p", "cnf(a, axiom, p(X) | ).\n");
  CHECK(run_cli("solve " + bad.string()) == 2);

  CHECK(run_cli("solve --out " + dir.path.string() + " " + corpus("unsat/syllogism.p")) == 0);
  const fs::path dump = dir.path / "syllogism.proof.json";
  REQUIRE(fs::exists(dump));
  CHECK(run_cli("verify " + dump.string()) == 0);
  CHECK(run_cli("verify " + dump.string() + " --problem " + corpus("unsat/syllogism.p")) == 0);
  CHECK(run_cli("verify " + dump.string() + " --problem " + corpus("unsat/trivial.p")) == 4);

  auto j = nlohmann::json::parse(slurp(dump));
  for (auto &c : j["clauses"]) {
    if (!c["inference"].is_null() && c["literals"] != "$false") {
      c["literals"] = "zz";
      break;
    }
  }
  std::ofstream(dir.path / "tampered.json") << j.dump();
  CHECK(run_cli("verify " + (dir.path / "tampered.json").string()) == 4);
  std::ofstream(dir.path / "empty.json") << "{}";
  CHECK(run_cli("verify " + (dir.path / "empty.json").string()) == 4);
}

}  // TEST_SUITE
