#include "bogo/cli/config.hpp"

#include <algorithm>
#include <fstream>

namespace bogo::cli {

using nlohmann::json;

std::string to_string(Workflow w) {
  switch (w) {
    case Workflow::eval: return "eval";
    case Workflow::ed: return "ed";
    case Workflow::study: return "study";
    case Workflow::selfcheck: return "selfcheck";
  }
  return "?";
}

Workflow workflow_from_string(const std::string& s) {
  if (s == "eval") return Workflow::eval;
  if (s == "ed") return Workflow::ed;
  if (s == "study") return Workflow::study;
  if (s == "selfcheck") return Workflow::selfcheck;
  throw ConfigError("unknown workflow '" + s + "'");
}

namespace {

void reject_unknown(const json& j, std::initializer_list<const char*> known, const std::string& context) {
  if (!j.is_object()) throw ConfigError((context.empty() ? "config" : context) + " must be an object");
  for (const auto& [key, value] : j.items())
    if (std::none_of(known.begin(), known.end(), [&](const char* k) { return key == k; }))
      throw ConfigError("unknown key '" + context + (context.empty() ? "" : ".") + key + "'");
}

template <class T>
void read_optional(const json& j, const char* key, T& out) {
  if (const auto it = j.find(key); it != j.end()) out = it->get<T>();
}

EdSettings parse_ed(const json& j) {
  reject_unknown(j, {"tol", "max_iter", "seed", "dense_threshold", "krylov_dim", "k", "excitation_cutoff", "budget",
                     "check_k0_global"},
                 "ed");
  EdSettings ed;
  read_optional(j, "tol", ed.tol);
  read_optional(j, "max_iter", ed.max_iter);
  read_optional(j, "seed", ed.seed);
  read_optional(j, "dense_threshold", ed.dense_threshold);
  read_optional(j, "krylov_dim", ed.krylov_dim);
  read_optional(j, "k", ed.k);
  read_optional(j, "excitation_cutoff", ed.excitation_cutoff);
  read_optional(j, "budget", ed.budget);
  read_optional(j, "check_k0_global", ed.check_k0_global);
  if (!(ed.tol > 0.0)) throw ConfigError("ed.tol must be positive");
  if (ed.max_iter <= 0) throw ConfigError("ed.max_iter must be positive");
  if (ed.k < 1) throw ConfigError("ed.k must be at least 1");
  if (ed.excitation_cutoff < 6) throw ConfigError("ed.excitation_cutoff must be at least 6");
  return ed;
}

SweepSettings parse_sweep(const json& j) {
  reject_unknown(j, {"N_values", "coupling", "fit", "overlaps"}, "sweep");
  SweepSettings s;
  if (!j.contains("N_values")) throw ConfigError("missing key 'sweep.N_values'");
  s.N_values = j.at("N_values").get<std::vector<int>>();
  read_optional(j, "coupling", s.coupling);
  if (const auto it = j.find("fit"); it != j.end()) {
    try {
      s.fit = fit_model_from_string(it->get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  read_optional(j, "overlaps", s.overlaps);
  if (s.N_values.empty()) throw ConfigError("sweep.N_values is empty");
  for (std::size_t i = 0; i < s.N_values.size(); ++i) {
    if (s.N_values[i] < 2) throw ConfigError("sweep.N_values entries must be >= 2");
    if (i > 0 && s.N_values[i] <= s.N_values[i - 1]) throw ConfigError("sweep.N_values must be strictly increasing");
  }
  if (!(s.coupling > 0.0)) throw ConfigError("sweep.coupling must be positive");
  return s;
}

}  // namespace

RunConfig parse_config(const json& j) {
  try {
    reject_unknown(j, {"workflow", "model", "ed", "sweep", "mean_field", "out_dir", "cache_dir"}, "");
    RunConfig c;
    if (const auto it = j.find("workflow"); it != j.end()) c.workflow = workflow_from_string(it->get<std::string>());
    if (!j.contains("model")) throw ConfigError("missing key 'model'");
    c.model = model_from_json(j.at("model"));
    if (const auto it = j.find("ed"); it != j.end()) c.ed = parse_ed(*it);
    if (const auto it = j.find("sweep"); it != j.end()) c.sweep = parse_sweep(*it);
    read_optional(j, "mean_field", c.mean_field);
    if (const auto it = j.find("out_dir"); it != j.end()) c.out_dir = it->get<std::string>();
    if (const auto it = j.find("cache_dir"); it != j.end()) c.cache_dir = it->get<std::string>();

    const auto problems = validate_model(c.model, c.mean_field);
    if (!problems.empty()) {
      std::string msg = "invalid model:";
      for (const auto& p : problems) msg += "\n  " + p;
      throw ConfigError(msg);
    }
    if (c.workflow == Workflow::study && !c.sweep) throw ConfigError("missing key 'sweep'");
    return c;
  } catch (const ConfigError&) {
    throw;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("config is not valid JSON: " + std::string(e.what()));
  }
  return parse_config(j);
}

json to_json(const EdSettings& ed) {
  return json{{"tol", ed.tol},
              {"max_iter", ed.max_iter},
              {"seed", ed.seed},
              {"dense_threshold", ed.dense_threshold},
              {"krylov_dim", ed.krylov_dim},
              {"k", ed.k},
              {"excitation_cutoff", ed.excitation_cutoff},
              {"budget", ed.budget},
              {"check_k0_global", ed.check_k0_global}};
}

json to_json(const RunConfig& c) {
  json j{{"model", to_json(c.model)}, {"ed", to_json(c.ed)}, {"mean_field", c.mean_field}};
  if (c.workflow) j["workflow"] = to_string(*c.workflow);
  if (c.sweep)
    j["sweep"] = json{{"N_values", c.sweep->N_values},
                      {"coupling", c.sweep->coupling},
                      {"fit", to_string(c.sweep->fit)},
                      {"overlaps", c.sweep->overlaps}};
  if (c.out_dir) j["out_dir"] = *c.out_dir;
  if (c.cache_dir) j["cache_dir"] = *c.cache_dir;
  return j;
}

fock::EigenOptions eigen_options(const EdSettings& ed, int threads) {
  fock::EigenOptions o;
  o.k = ed.k;
  o.tol = ed.tol;
  o.max_iter = ed.max_iter;
  o.seed = ed.seed;
  o.dense_threshold = ed.dense_threshold;
  o.krylov_dim = ed.krylov_dim;
  o.threads = std::max(1, threads);
  return o;
}

fock::BindingOptions binding_options(const EdSettings& ed, int threads) {
  fock::BindingOptions o;
  o.eigen = eigen_options(ed, threads);
  o.budget = ed.budget;
  o.check_k0_global = ed.check_k0_global;
  return o;
}

SweepConfig sweep_config(const RunConfig& config, int threads) {
  if (!config.sweep) throw ConfigError("missing key 'sweep'");
  SweepConfig s;
  s.base = config.model;
  s.N_values = config.sweep->N_values;
  s.coupling = config.sweep->coupling;
  s.fit = config.sweep->fit;
  s.ed = binding_options(config.ed, threads);
  s.compute_overlaps = config.sweep->overlaps;
  s.hb_max_cutoff = config.ed.excitation_cutoff;
  return s;
}

}  // namespace bogo::cli
