#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "bogo/asymptotics.hpp"
#include "bogo/fock/basis.hpp"
#include "bogo/fock/binding.hpp"
#include "bogo/model.hpp"

namespace bogo::cli {

enum class Workflow { eval, ed, study, selfcheck };

std::string to_string(Workflow w);
Workflow workflow_from_string(const std::string& s);

/// Schema or semantic error in a run configuration (exit status 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EdSettings {
  double tol = 1e-9;
  int max_iter = 5000;
  std::uint64_t seed = 12345;
  std::size_t dense_threshold = 2000;
  int krylov_dim = 0;
  int k = 2;
  int excitation_cutoff = 400;  // largest H_B excitation cutoff tried
  std::size_t budget = fock::default_basis_budget;
  bool check_k0_global = true;

  bool operator==(const EdSettings&) const = default;
};

struct SweepSettings {
  std::vector<int> N_values;
  double coupling = 1.0;
  FitModel fit = FitModel::inverse_n;
  bool overlaps = true;

  bool operator==(const SweepSettings&) const = default;
};

struct RunConfig {
  std::optional<Workflow> workflow;
  TorusModel model;
  EdSettings ed;
  std::optional<SweepSettings> sweep;
  bool mean_field = false;
  std::optional<std::string> out_dir;
  std::optional<std::string> cache_dir;

  bool operator==(const RunConfig&) const = default;
};

/// Strict parse: unknown keys and missing required keys throw ConfigError.
RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::filesystem::path& path);
nlohmann::json to_json(const RunConfig& config);
nlohmann::json to_json(const EdSettings& ed);

fock::EigenOptions eigen_options(const EdSettings& ed, int threads = 1);
fock::BindingOptions binding_options(const EdSettings& ed, int threads = 1);
SweepConfig sweep_config(const RunConfig& config, int threads = 1);

}  // namespace bogo::cli
