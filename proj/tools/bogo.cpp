#include <iostream>

#include <CLI11.hpp>

#include "bogo/cli/workflows.hpp"

int main(int argc, char** argv) {
  using namespace bogo::cli;
  CLI::App app{"Bogoliubov binding energy on the torus: closed forms, exact diagonalization, N-sweeps"};
  app.require_subcommand(1);

  Invocation inv;
  std::string out, cache;
  const std::pair<Workflow, const char*> verbs[] = {
      {Workflow::eval, "per-mode Bogoliubov quantities, e_B, D and energy predictions"},
      {Workflow::ed, "exact diagonalization of the truncated Hamiltonian"},
      {Workflow::study, "binding-energy sweep over N with lambda = c/N"},
      {Workflow::selfcheck, "invariant suite; exit 4 on any violation"},
  };
  for (const auto& [verb, help] : verbs) {
    auto* sub = app.add_subcommand(to_string(verb), help);
    sub->add_option("--config", inv.config, "run configuration (JSON)")->required();
    sub->add_option("--out", out, "output directory");
    sub->add_option("--cache", cache, "cache directory");
    sub->add_option("--threads", inv.threads, "worker threads")->check(CLI::PositiveNumber);
    sub->callback([&inv, verb] { inv.verb = verb; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : exit_code::invalid_config;
  }
  if (!out.empty()) inv.out = out;
  if (!cache.empty()) inv.cache = cache;
  return run(inv, std::cout, std::cerr);
}
