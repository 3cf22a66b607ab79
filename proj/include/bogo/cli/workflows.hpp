#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "bogo/cli/cache.hpp"
#include "bogo/cli/config.hpp"
#include "bogo/cli/serialize.hpp"

namespace bogo::cli {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int failure = 1;
inline constexpr int invalid_config = 2;
inline constexpr int not_converged = 3;
inline constexpr int selfcheck_failed = 4;
}  // namespace exit_code

struct Invocation {
  Workflow verb = Workflow::eval;
  std::filesystem::path config;
  std::optional<std::string> out;
  std::optional<std::string> cache;
  int threads = 1;
};

/// Loads the config, runs the verb, writes artifacts under the output
/// directory and returns the process exit status. Progress and cache
/// hit/miss lines go to `log`, errors to `err`.
int run(const Invocation& inv, std::ostream& log, std::ostream& err);

EvalReport evaluate(const TorusModel& model);
EdReport exact_diagonalization(const TorusModel& model, const EdSettings& ed, int threads = 1);
SelfcheckReport selfcheck(const RunConfig& config, int threads = 1);

/// Cache inputs: canonical model JSON plus every setting that can change the result.
nlohmann::json ed_cache_inputs(const TorusModel& model, const EdSettings& ed);
nlohmann::json study_point_cache_inputs(const TorusModel& model, const SweepConfig& sweep);

}  // namespace bogo::cli
