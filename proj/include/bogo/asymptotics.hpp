#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bogo/fock/basis.hpp"
#include "bogo/fock/binding.hpp"
#include "bogo/model.hpp"

namespace bogo {

enum class FitModel {
  inverse_n,            // r(N) = r_inf + a/N
  inverse_n_quadratic,  // r(N) = r_inf + a/N + b/N^2
};

std::string to_string(FitModel f);
FitModel fit_model_from_string(const std::string& s);

struct SweepConfig {
  TorusModel base;                // N and lambda are overwritten per sweep point
  std::vector<int> N_values;      // strictly increasing, each >= 2
  double coupling = 1.0;          // lambda = coupling / N
  FitModel fit = FitModel::inverse_n;
  fock::BindingOptions ed;
  bool compute_overlaps = true;
  int hb_max_cutoff = 400;
};

struct StudyRecord {
  int N = 0;
  double lambda = 0.0;
  double E_N = 0.0;
  double E_Nm1 = 0.0;
  double delta_E = 0.0;
  double leading_term = 0.0;  // lambda (N-1) w_hat(0)
  double residual_r = 0.0;    // N (delta_E - leading_term)
  double prediction = 0.0;    // e_B - D over the ED mode set
  double abs_err = 0.0;       // |residual_r - prediction|
  double lower_bound = 0.0;   // Rayleigh-quotient bracket of delta_E
  double upper_bound = 0.0;
  double excited = 0.0;       // <N_+>
  double excited_sq = 0.0;    // <N_+^2>
  std::optional<double> overlap;  // |<U_N Psi_N, Phi_B>|
  double residual_norm = 0.0;     // max ED residual of the two solves
  bool converged = false;

  bool operator==(const StudyRecord&) const = default;
};

struct FitResult {
  FitModel model = FitModel::inverse_n;
  double r_inf = 0.0;
  double a = 0.0;
  double b = 0.0;
  double max_deviation = 0.0;
  int points = 0;
  bool ok = false;
  std::string message;

  bool operator==(const FitResult&) const = default;
};

struct StudyReport {
  std::vector<StudyRecord> records;
  double prediction = 0.0;     // e_B^Lambda - D^Lambda
  double e_B = 0.0;            // over the ED mode set
  double D = 0.0;
  double e_B_full = 0.0;       // full-lattice constants (finite support)
  double D_full = 0.0;
  double hb_ground_energy = 0.0;
  int hb_cutoff = 0;
  FitResult fit;

  bool operator==(const StudyReport&) const = default;
};

/// e_B - D with both sums over exactly the nonzero modes of the model's mode set.
double consistent_truncation_prediction(const TorusModel& model);

/// Least-squares fit of r(N); needs at least as many points as parameters + 1.
FitResult extrapolate_residual(std::span<const int> N, std::span<const double> r, FitModel model = FitModel::inverse_n);
/// Fit over converged records only.
FitResult extrapolate_residual(const std::vector<StudyRecord>& records, FitModel model = FitModel::inverse_n);

/// |<U_N Psi_N, Phi>| with Phi restricted to <= N excitations and renormalized.
double quasifree_overlap(const fock::FockBasis& particle_basis, std::span<const double> ground,
                         const fock::FockBasis& hb_basis, std::span<const double> hb_ground);

/// Optional memo of per-N records (the CLI backs it with its result cache).
struct RecordCache {
  std::function<std::optional<StudyRecord>(const TorusModel&)> lookup;
  std::function<void(const TorusModel&, const StudyRecord&)> store;
};

StudyReport run_binding_study(const SweepConfig& config, const RecordCache* cache = nullptr);

/// One sweep point (exposed for the CLI cache and for tests).
StudyRecord study_point(const SweepConfig& config, int N, const fock::BogoliubovGround* hb);

}  // namespace bogo
