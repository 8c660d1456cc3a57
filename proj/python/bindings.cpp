// SPDX-License-Identifier: Apache-2.0
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "proofpilot/engine/proof_io.hpp"
#include "proofpilot/features/chains.hpp"
#include "proofpilot/features/vectorizer.hpp"
#include "proofpilot/features/walks.hpp"
#include "proofpilot/fol/problem.hpp"
#include "proofpilot/harness/harness.hpp"

namespace py = pybind11;
using namespace proofpilot;

namespace {

fol::Clause clause_from_text(const std::string &text, fol::SymbolTable &symbols) {
  std::map<std::string, fol::VarId> vars;
  fol::VarId next = 0;
  fol::Clause c;
  c.literals = fol::parse_literals(text, symbols, vars, next);
  return c;
}

std::string report_json(const harness::RunReport &r) { return harness::report_to_json(r).dump(); }

harness::RunConfig run_config(std::vector<std::string> inputs, const std::string &policy, std::uint64_t seed,
                              std::size_t max_steps, double max_seconds, std::optional<std::string> out) {
  harness::RunConfig cfg;
  cfg.inputs = std::move(inputs);
  cfg.policy = policy;
  cfg.seed = seed;
  cfg.trainer.limits.max_steps = max_steps;
  cfg.trainer.limits.max_seconds = max_seconds;
  if (out) cfg.out = *out;
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Native core of proofpilot";

  py::register_exception<harness::UsageError>(m, "UsageError", PyExc_ValueError);
  py::register_exception<harness::ProblemParseError>(m, "ProblemParseError", PyExc_ValueError);
  py::register_exception<fol::ParseError>(m, "ParseError", PyExc_ValueError);

  py::class_<features::VectorizerConfig>(m, "VectorizerConfig")
      .def(py::init<>())
      .def_readwrite("d", &features::VectorizerConfig::d)
      .def_readwrite("walk_dim", &features::VectorizerConfig::walk_dim)
      .def_readwrite("treat_constants_as_functions", &features::VectorizerConfig::treat_constants_as_functions)
      .def_readwrite("use_chains", &features::VectorizerConfig::use_chains)
      .def_readwrite("use_walks", &features::VectorizerConfig::use_walks)
      .def_readwrite("use_base", &features::VectorizerConfig::use_base)
      .def_property_readonly("dimension", &features::VectorizerConfig::dimension);

  m.def("hash_pattern", [](const std::string &pattern, bool positive, std::uint32_t d) {
    return features::hash_pattern(features::ChainPattern{pattern, positive}, d);
  }, py::arg("pattern"), py::arg("positive") = true, py::arg("d") = 645);

  m.def("chain_patterns", [](const std::string &clause) {
    fol::SymbolTable st;
    std::vector<std::pair<std::string, bool>> out;
    for (const auto &p : features::chain_patterns(clause_from_text(clause, st), st)) {
      out.emplace_back(p.linearization, p.positive);
    }
    return out;
  }, py::arg("clause"));

  m.def("term_walks", [](const std::string &clause, std::size_t length) {
    fol::SymbolTable st;
    return features::term_walks(clause_from_text(clause, st), st, length);
  }, py::arg("clause"), py::arg("length"));

  m.def("vectorize_clause", [](const std::string &clause, const features::VectorizerConfig &cfg) {
    fol::SymbolTable st;
    const auto v = features::vectorize_clause(clause_from_text(clause, st), st, cfg);
    return v.entries();
  }, py::arg("clause"), py::arg("config") = features::VectorizerConfig{},
     "Sparse feature vector as (index, value) pairs.");

  m.def("problem_to_tptp", [](const std::string &path) { return fol::to_tptp(fol::parse_problem_file(path)); },
        py::arg("path"));

  m.def("solve", [](std::vector<std::string> inputs, const std::string &policy, std::uint64_t seed,
                    std::size_t max_steps, double max_seconds, std::optional<std::string> out) {
    const auto cfg = run_config(std::move(inputs), policy, seed, max_steps, max_seconds, std::move(out));
    std::ostringstream log;
    py::gil_scoped_release release;
    const bool builtin = policy == "baseline" || policy == "bfs" || policy == "random";
    return report_json(builtin ? harness::cmd_solve(cfg, log) : harness::cmd_eval(cfg, log));
  }, py::arg("inputs"), py::arg("policy") = "baseline", py::arg("seed") = 0, py::arg("max_steps") = 2000,
     py::arg("max_seconds") = 100.0, py::arg("out") = py::none(), "Runs a policy and returns the JSON report.");

  m.def("train", [](std::vector<std::string> inputs, std::size_t iterations, std::uint64_t seed, std::size_t max_steps,
                    std::optional<std::string> out, const std::string &overrides) {
    auto cfg = run_config(std::move(inputs), "baseline", seed, max_steps, 100.0, std::move(out));
    cfg.command = harness::Command::Train;
    cfg.iterations = iterations;
    if (!overrides.empty()) harness::apply_overrides(cfg, nlohmann::json::parse(overrides));
    std::ostringstream log;
    py::gil_scoped_release release;
    return report_json(harness::cmd_train(cfg, log));
  }, py::arg("inputs"), py::arg("iterations") = 10, py::arg("seed") = 0, py::arg("max_steps") = 2000,
     py::arg("out") = py::none(), py::arg("overrides") = "", "Trains a policy and returns the JSON report.");

  m.def("verify", [](const std::string &dump, std::optional<std::string> problem) {
    const auto r = harness::cmd_verify(dump, problem ? std::optional<std::filesystem::path>(*problem) : std::nullopt);
    return py::make_tuple(r.ok, r.message);
  }, py::arg("dump"), py::arg("problem") = py::none(), "Checks a derivation dump; returns (ok, message).");
}
