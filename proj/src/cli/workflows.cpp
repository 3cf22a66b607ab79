#include "bogo/cli/workflows.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>

#include "bogo/bogoliubov.hpp"
#include "bogo/fock/binding.hpp"
#include "bogo/fock/identities.hpp"
#include "bogo/fock/observables.hpp"
#include "bogo/json_io.hpp"

namespace bogo::cli {

namespace fs = std::filesystem;
using nlohmann::json;

// ------------------------------------------------------------------ eval

EvalReport evaluate(const TorusModel& model) {
  const auto sol = solve_bogoliubov(model);
  const auto pred = predict_energies(model);
  EvalReport r;
  r.model = model;
  r.modes = sol.modes;
  r.e_B = sol.e_B;
  r.e_B_tail_bound = sol.e_B_tail_bound;
  r.D = sol.D;
  r.D_tail_bound = sol.D_tail_bound;
  r.ground_state_prediction = pred.ground_state.value;
  r.binding_prediction = pred.binding.value;
  r.consistent_prediction = consistent_truncation_prediction(model);
  r.hb_lower_bound_constant = hb_lower_bound_constant(model);
  const double full = std::max(model.mode_cutoff, model.potential.support_radius());
  r.e_B_full = sum_eB(model, full).value;
  r.D_full = sum_D(model, full).value;
  return r;
}

// -------------------------------------------------------------------- ed

EdReport exact_diagonalization(const TorusModel& model, const EdSettings& ed, int threads) {
  const auto eig = eigen_options(ed, threads);
  const auto sector = fock::solve_sector(model, model.N, eig, Momentum{}, ed.budget);
  EdReport r;
  r.model = model;
  r.ground.N = model.N;
  r.ground.dimension = sector.basis.size();
  r.ground.eigenvalues = sector.result.eigenvalues;
  r.ground.residual_norm = sector.result.residual_norm;
  r.ground.iterations = sector.result.iterations;
  r.ground.converged = sector.result.converged;
  r.ground.method = sector.result.method;
  r.ground.gap = sector.result.gap;
  const auto& v = sector.result.ground_vector;
  r.ground.excited = fock::observable_expectation(sector.basis, v, fock::observable::ExcitedNumber{});
  r.ground.excited_sq = fock::observable_expectation(sector.basis, v, fock::observable::ExcitedNumberSquared{});

  if (model.N >= 2 && model.include_zero_mode) {
    const auto b = fock::binding_from_ed(model, binding_options(ed, threads));
    BindingSummary s;
    s.E_N = b.E_N;
    s.E_Nm1 = b.E_Nm1;
    s.delta_E = b.delta_E;
    s.lower_bound = b.lower_bound;
    s.upper_bound = b.upper_bound;
    s.leading_term = model.lambda * (model.N - 1) * model.potential.zero_mode();
    s.prediction = predict_energies(model).binding.value;
    s.residual_N = b.residual_N;
    s.residual_Nm1 = b.residual_Nm1;
    s.dim_N = b.dim_N;
    s.dim_Nm1 = b.dim_Nm1;
    s.converged = b.converged && b.k0_is_global;
    s.k0_checked = b.k0_checked;
    s.k0_is_global = b.k0_is_global;
    r.binding = s;
  }
  return r;
}

json ed_cache_inputs(const TorusModel& model, const EdSettings& ed) {
  return json{{"model", to_json(model)}, {"ed", to_json(ed)}};
}

json study_point_cache_inputs(const TorusModel& model, const SweepConfig& sweep) {
  EdSettings ed;
  ed.tol = sweep.ed.eigen.tol;
  ed.max_iter = sweep.ed.eigen.max_iter;
  ed.seed = sweep.ed.eigen.seed;
  ed.dense_threshold = sweep.ed.eigen.dense_threshold;
  ed.krylov_dim = sweep.ed.eigen.krylov_dim;
  ed.k = sweep.ed.eigen.k;
  ed.excitation_cutoff = sweep.hb_max_cutoff;
  ed.budget = sweep.ed.budget;
  ed.check_k0_global = sweep.ed.check_k0_global;
  return json{{"model", to_json(model)}, {"ed", to_json(ed)}, {"overlaps", sweep.compute_overlaps}};
}

// ------------------------------------------------------------- selfcheck

namespace {

void add_check(SelfcheckReport& r, std::string name, double value, double tol) {
  r.checks.push_back(Check{std::move(name), value, tol, std::isfinite(value) && value <= tol});
}

}  // namespace

SelfcheckReport selfcheck(const RunConfig& config, int threads) {
  const TorusModel& model = config.model;
  SelfcheckReport r;
  r.model = model;

  add_check(r, "potential_assumptions", static_cast<double>(validate_model(model, config.mean_field).size()), 0.0);

  double quad = 0.0, alpha_range = 0.0, alpha_bound = 0.0, summand_range = 0.0;
  for (const auto& q : solve_bogoliubov(model).modes) {
    const double lhs = q.w_hat * (1.0 + q.alpha_p * q.alpha_p);
    const double rhs = 2.0 * (q.p2 + q.w_hat) * q.alpha_p;
    quad = std::max(quad, std::abs(lhs - rhs) / std::max(std::abs(lhs), 1e-300));
    if (!(q.alpha_p >= 0.0 && q.alpha_p < 1.0)) alpha_range += 1.0;
    alpha_bound = std::max(alpha_bound, q.p2 * q.alpha_p * q.alpha_p - q.w_hat * q.w_hat);
    const double hi = q.w_hat * q.w_hat / (2.0 * q.p2);
    summand_range = std::max({summand_range, -q.eB_summand, q.eB_summand - hi});
  }
  add_check(r, "quadratic_relation_rel", quad, 1e-12);
  add_check(r, "alpha_in_unit_interval", alpha_range, 0.0);
  add_check(r, "p2_alpha2_below_w2", alpha_bound, 0.0);
  add_check(r, "eB_summand_bounds", summand_range, 0.0);

  const auto eig = eigen_options(config.ed, threads);
  const auto sector = fock::solve_sector(model, model.N, eig, Momentum{}, config.ed.budget);
  add_check(r, "hamiltonian_symmetry", sector.hamiltonian.max_asymmetry(), 1e-12);
  add_check(r, "ground_residual", sector.result.residual_norm, config.ed.tol);

  if (sector.basis.size() >= 2 && sector.basis.size() <= config.ed.dense_threshold) {
    auto iter = eig;
    iter.k = 1;
    iter.force_iterative = true;
    const double lanczos = fock::lowest_eigenpairs(sector.hamiltonian, iter).ground_energy();
    const double dense = fock::dense_eigenpairs(sector.hamiltonian, 1).ground_energy();
    add_check(r, "lanczos_vs_dense", std::abs(lanczos - dense), 1e-9);
  }

  // The constant (condensate) trial state has energy lambda w_hat(0) N(N-1)/2.
  const double trial = 0.5 * model.lambda * model.potential.zero_mode() * model.N * (model.N - 1.0);
  if (model.include_zero_mode)
    add_check(r, "condensate_upper_bound", sector.result.ground_energy() - trial, 1e-9 * std::max(1.0, std::abs(trial)));

  if (model.N >= 2 && model.include_zero_mode) {
    const auto opts = binding_options(config.ed, threads);
    const auto b = fock::binding_from_ed(model, opts);
    add_check(r, "sandwich_lower", b.lower_bound - b.delta_E, 1e-9);
    add_check(r, "sandwich_upper", b.delta_E - b.upper_bound, 1e-9);
    add_check(r, "k0_is_global", b.k0_is_global ? 0.0 : 1.0, 0.0);

    TorusModel shifted = model;
    shifted.potential = normalize_zero_mode(model.potential).spec;
    const auto bs = fock::binding_from_ed(shifted, opts);
    const double lead = model.lambda * (model.N - 1) * model.potential.zero_mode();
    add_check(r, "zero_mode_shift_invariance", std::abs(model.N * (b.delta_E - lead) - model.N * bs.delta_E), 1e-9);

    try {
      const auto id = fock::operator_identity_residuals(model, eig);
      add_check(r, "double_commutator", id.double_commutator / std::max(1.0, id.double_commutator_scale), 1e-12);
      add_check(r, "excitation_number_identity", id.excitation_identity, 1e-10);
    } catch (const ResourceLimit&) {
      // identities need dense matrices; skipped for large models
    }
  }

  r.passed = std::all_of(r.checks.begin(), r.checks.end(), [](const Check& c) { return c.passed; });
  return r;
}

// ------------------------------------------------------------------- run

namespace {

void write_file(const fs::path& path, const std::string& text) {
  const auto tmp = fs::path(path.string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary);
    out << text;
    if (!out) throw std::runtime_error("cannot write " + path.string());
  }
  fs::rename(tmp, path);
}

const char* status_word(CacheStatus s) {
  switch (s) {
    case CacheStatus::hit: return "hit";
    case CacheStatus::miss: return "miss";
    case CacheStatus::discarded: return "discarded";
  }
  return "?";
}

}  // namespace

int run(const Invocation& inv, std::ostream& log, std::ostream& err) {
  RunConfig config;
  fs::path out_dir;
  try {
    config = load_config(inv.config);
    if (config.workflow && *config.workflow != inv.verb)
      throw ConfigError("config workflow '" + to_string(*config.workflow) + "' does not match verb '" +
                        to_string(inv.verb) + "'");
    if (inv.verb == Workflow::study && !config.sweep) throw ConfigError("missing key 'sweep'");
    if (inv.out) out_dir = *inv.out;
    else if (config.out_dir) out_dir = *config.out_dir;
    else throw ConfigError("no output directory (use --out or out_dir)");
  } catch (const ConfigError& e) {
    err << "invalid config: " << e.what() << "\n";
    return exit_code::invalid_config;
  }

  try {
    fs::create_directories(out_dir);
    const int threads = std::max(1, inv.threads);
    switch (inv.verb) {
      case Workflow::eval: {
        const auto report = evaluate(config.model);
        write_file(out_dir / "report.json", dump_pretty(to_json(report)));
        write_file(out_dir / "modes.csv", modes_csv(report.modes));
        log << "e_B = " << format_double(report.e_B) << "  D = " << format_double(report.D) << "\n";
        return exit_code::ok;
      }
      case Workflow::ed: {
        ResultCache cache(resolve_cache_dir(inv.cache, config.cache_dir, out_dir));
        const auto key = make_cache_key("ed", ed_cache_inputs(config.model, config.ed));
        CacheStatus status{};
        auto payload = cache.load(key, &status);
        log << "cache " << status_word(status) << " " << key.digest << "\n";
        if (!payload) {
          const auto report = exact_diagonalization(config.model, config.ed, threads);
          payload = to_json(report);
          if (report.converged()) cache.store(key, *payload, report.max_residual(), config.ed.tol);
        }
        const auto report = ed_report_from_json(*payload);
        write_file(out_dir / "report.json", dump_pretty(*payload));
        log << "E0 = " << format_double(report.ground.eigenvalues.front()) << "\n";
        if (!report.converged()) {
          err << "solver did not converge (residual " << format_double(report.max_residual()) << ")\n";
          return exit_code::not_converged;
        }
        return exit_code::ok;
      }
      case Workflow::study: {
        ResultCache cache(resolve_cache_dir(inv.cache, config.cache_dir, out_dir));
        const auto sweep = sweep_config(config, threads);
        RecordCache hook;
        hook.lookup = [&](const TorusModel& m) -> std::optional<StudyRecord> {
          const auto key = make_cache_key("study_point", study_point_cache_inputs(m, sweep));
          CacheStatus status{};
          auto payload = cache.load(key, &status);
          log << "cache " << status_word(status) << " " << key.digest << " N=" << m.N << "\n";
          if (!payload) return std::nullopt;
          return study_record_from_json(*payload);
        };
        hook.store = [&](const TorusModel& m, const StudyRecord& rec) {
          if (!rec.converged) return;
          const auto key = make_cache_key("study_point", study_point_cache_inputs(m, sweep));
          cache.store(key, to_json(rec), rec.residual_norm, sweep.ed.eigen.tol);
        };
        const auto report = run_binding_study(sweep, &hook);
        write_file(out_dir / "report.json", dump_pretty(to_json(report)));
        write_file(out_dir / "study.csv", study_csv(report));
        log << "prediction = " << format_double(report.prediction);
        if (report.fit.ok) log << "  r_inf = " << format_double(report.fit.r_inf);
        else log << "  fit: " << report.fit.message;
        log << "\n";
        const bool all = std::all_of(report.records.begin(), report.records.end(),
                                     [](const StudyRecord& r) { return r.converged; });
        if (!all) {
          err << "some sweep points did not converge\n";
          return exit_code::not_converged;
        }
        return exit_code::ok;
      }
      case Workflow::selfcheck: {
        const auto report = selfcheck(config, threads);
        write_file(out_dir / "report.json", dump_pretty(to_json(report)));
        for (const auto& c : report.checks)
          log << (c.passed ? "ok   " : "FAIL ") << c.name << " " << format_double(c.value) << " (tol "
              << format_double(c.tolerance) << ")\n";
        return report.passed ? exit_code::ok : exit_code::selfcheck_failed;
      }
    }
  } catch (const ConfigError& e) {
    err << "invalid config: " << e.what() << "\n";
    return exit_code::invalid_config;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::failure;
  }
  return exit_code::failure;
}

}  // namespace bogo::cli
