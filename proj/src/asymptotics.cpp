#include "bogo/asymptotics.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "bogo/bogoliubov.hpp"
#include "bogo/fock/observables.hpp"

namespace bogo {

std::string to_string(FitModel f) { return f == FitModel::inverse_n ? "1/N" : "1/N+1/N^2"; }

FitModel fit_model_from_string(const std::string& s) {
  if (s == "1/N") return FitModel::inverse_n;
  if (s == "1/N+1/N^2") return FitModel::inverse_n_quadratic;
  throw std::invalid_argument("unknown fit model '" + s + "' (expected \"1/N\" or \"1/N+1/N^2\")");
}

double consistent_truncation_prediction(const TorusModel& model) {
  return sum_eB(model).value - sum_D(model).value;
}

FitResult extrapolate_residual(std::span<const int> N, std::span<const double> r, FitModel model) {
  FitResult fit;
  fit.model = model;
  const int params = model == FitModel::inverse_n ? 2 : 3;
  fit.points = static_cast<int>(N.size());
  if (N.size() != r.size()) throw std::invalid_argument("fit input size mismatch");
  if (fit.points < 3 || fit.points < params) {
    fit.message = "need at least 3 points (and one per parameter)";
    return fit;
  }
  Eigen::MatrixXd A(fit.points, params);
  Eigen::VectorXd y(fit.points);
  for (int i = 0; i < fit.points; ++i) {
    const double inv = 1.0 / N[static_cast<std::size_t>(i)];
    A(i, 0) = 1.0;
    A(i, 1) = inv;
    if (params == 3) A(i, 2) = inv * inv;
    y(i) = r[static_cast<std::size_t>(i)];
  }
  const auto qr = A.colPivHouseholderQr();
  if (qr.rank() < params) {
    fit.message = "rank-deficient fit (repeated N values?)";
    return fit;
  }
  const Eigen::VectorXd c = qr.solve(y);
  fit.r_inf = c(0);
  fit.a = c(1);
  fit.b = params == 3 ? c(2) : 0.0;
  fit.max_deviation = (A * c - y).cwiseAbs().maxCoeff();
  fit.ok = true;
  return fit;
}

FitResult extrapolate_residual(const std::vector<StudyRecord>& records, FitModel model) {
  std::vector<int> N;
  std::vector<double> r;
  for (const auto& rec : records) {
    if (!rec.converged) continue;
    N.push_back(rec.N);
    r.push_back(rec.residual_r);
  }
  return extrapolate_residual(N, r, model);
}

double quasifree_overlap(const fock::FockBasis& particle_basis, std::span<const double> ground,
                         const fock::FockBasis& hb_basis, std::span<const double> hb_ground) {
  std::vector<Momentum> excited;
  for (const auto& p : particle_basis.modes())
    if (!p.is_zero()) excited.push_back(p);
  const auto target = fock::FockBasis::excitations(std::move(excited), particle_basis.particle_bound(),
                                                   particle_basis.momentum_sector());
  const auto image = fock::excitation_map(particle_basis, ground, target);
  const auto phi = fock::restrict_excitations(hb_basis, hb_ground, target, true);
  return std::min(1.0, std::abs(fock::dot(image, phi)));
}

StudyRecord study_point(const SweepConfig& config, int N, const fock::BogoliubovGround* hb) {
  TorusModel model = config.base;
  model.N = N;
  model.lambda = config.coupling / N;

  const auto ed = fock::binding_from_ed(model, config.ed);
  StudyRecord rec;
  rec.N = N;
  rec.lambda = model.lambda;
  rec.E_N = ed.E_N;
  rec.E_Nm1 = ed.E_Nm1;
  rec.delta_E = ed.delta_E;
  rec.leading_term = model.lambda * (N - 1) * model.potential.zero_mode();
  rec.residual_r = N * (ed.delta_E - rec.leading_term);
  rec.prediction = consistent_truncation_prediction(model);
  rec.abs_err = std::abs(rec.residual_r - rec.prediction);
  rec.lower_bound = ed.lower_bound;
  rec.upper_bound = ed.upper_bound;
  rec.excited = ed.excited_N;
  rec.excited_sq = ed.excited_sq_N;
  rec.residual_norm = std::max(ed.residual_N, ed.residual_Nm1);
  rec.converged = ed.converged && ed.k0_is_global;

  if (hb && ed.ground_vector_reliable && hb->result.ground_vector_reliable()) {
    const auto basis = fock::FockBasis::particles(model.modes(), N, Momentum::zero(model.d), config.ed.budget);
    rec.overlap = quasifree_overlap(basis, ed.ground_N, hb->basis, hb->result.ground_vector);
  }
  return rec;
}

StudyReport run_binding_study(const SweepConfig& config, const RecordCache* cache) {
  if (config.N_values.empty()) throw std::invalid_argument("N_values is empty");
  for (std::size_t i = 0; i < config.N_values.size(); ++i) {
    if (config.N_values[i] < 2) throw std::invalid_argument("every N must be >= 2");
    if (i > 0 && config.N_values[i] <= config.N_values[i - 1])
      throw std::invalid_argument("N_values must be strictly increasing");
  }

  StudyReport report;
  const TorusModel& base = config.base;
  report.e_B = sum_eB(base).value;
  report.D = sum_D(base).value;
  report.prediction = report.e_B - report.D;
  const double full_cut = std::max(base.mode_cutoff, base.potential.support_radius());
  report.e_B_full = sum_eB(base, full_cut).value;
  report.D_full = sum_D(base, full_cut).value;

  std::optional<fock::BogoliubovGround> hb;
  if (config.compute_overlaps) {
    fock::EigenOptions opts = config.ed.eigen;
    opts.k = 2;
    hb = fock::bogoliubov_ground(base.excitation_modes(), base.potential, opts, Momentum::zero(base.d), 4,
                                 config.hb_max_cutoff, 1e-10, config.ed.budget);
    report.hb_ground_energy = hb->result.ground_energy();
    report.hb_cutoff = hb->cutoff;
  }

  for (int N : config.N_values) {
    TorusModel point = base;
    point.N = N;
    point.lambda = config.coupling / N;
    std::optional<StudyRecord> rec;
    if (cache && cache->lookup) rec = cache->lookup(point);
    if (!rec) {
      rec = study_point(config, N, hb ? &*hb : nullptr);
      if (cache && cache->store) cache->store(point, *rec);
    }
    report.records.push_back(*rec);
  }
  report.fit = extrapolate_residual(report.records, config.fit);
  return report;
}

}  // namespace bogo
