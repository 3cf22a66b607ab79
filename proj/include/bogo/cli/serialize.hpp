#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "bogo/asymptotics.hpp"
#include "bogo/bogoliubov.hpp"
#include "bogo/fock/binding.hpp"
#include "bogo/fock/eigensolver.hpp"
#include "bogo/model.hpp"

namespace bogo::cli {

inline constexpr const char* study_csv_header =
    "N,lambda,E_N,E_Nm1,deltaE,leading_term,residual_r,prediction,abs_err,converged";
inline constexpr const char* modes_csv_header = "p_coords,w_hat,e_p,alpha_p,n_p,eB_summand";

struct EvalReport {
  TorusModel model;
  std::vector<ModeQuantities> modes;
  double e_B = 0.0;
  double e_B_tail_bound = 0.0;
  double D = 0.0;
  double D_tail_bound = 0.0;
  double ground_state_prediction = 0.0;
  double binding_prediction = 0.0;
  double consistent_prediction = 0.0;  // e_B - D over the mode set
  double hb_lower_bound_constant = 0.0;
  double e_B_full = 0.0;               // over the full support of w_hat
  double D_full = 0.0;

  bool operator==(const EvalReport&) const = default;
};

struct SectorSummary {
  int N = 0;
  std::size_t dimension = 0;
  std::vector<double> eigenvalues;
  double residual_norm = 0.0;
  int iterations = 0;
  bool converged = false;
  std::string method;
  double gap = 0.0;  // +inf when unknown
  double excited = 0.0;
  double excited_sq = 0.0;

  bool operator==(const SectorSummary&) const = default;
};

struct BindingSummary {
  double E_N = 0.0;
  double E_Nm1 = 0.0;
  double delta_E = 0.0;
  double lower_bound = 0.0;
  double upper_bound = 0.0;
  double leading_term = 0.0;
  double prediction = 0.0;  // leading term + (e_B - D)/N over the mode set
  double residual_N = 0.0;
  double residual_Nm1 = 0.0;
  std::size_t dim_N = 0;
  std::size_t dim_Nm1 = 0;
  bool converged = false;
  bool k0_checked = false;
  bool k0_is_global = true;

  bool operator==(const BindingSummary&) const = default;
};

struct EdReport {
  TorusModel model;
  SectorSummary ground;
  std::optional<BindingSummary> binding;

  bool operator==(const EdReport&) const = default;
  double max_residual() const;
  bool converged() const;
};

struct Check {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool passed = false;

  bool operator==(const Check&) const = default;
};

struct SelfcheckReport {
  TorusModel model;
  std::vector<Check> checks;
  bool passed = false;

  bool operator==(const SelfcheckReport&) const = default;
};

nlohmann::json to_json(const ModeQuantities& q);
ModeQuantities mode_quantities_from_json(const nlohmann::json& j);
nlohmann::json to_json(const EvalReport& r);
EvalReport eval_report_from_json(const nlohmann::json& j);
nlohmann::json to_json(const SectorSummary& s);
SectorSummary sector_summary_from_json(const nlohmann::json& j);
nlohmann::json to_json(const BindingSummary& b);
BindingSummary binding_summary_from_json(const nlohmann::json& j);
nlohmann::json to_json(const EdReport& r);
EdReport ed_report_from_json(const nlohmann::json& j);
nlohmann::json to_json(const StudyRecord& r);
StudyRecord study_record_from_json(const nlohmann::json& j);
nlohmann::json to_json(const FitResult& f);
FitResult fit_result_from_json(const nlohmann::json& j);
nlohmann::json to_json(const StudyReport& r);
StudyReport study_report_from_json(const nlohmann::json& j);
nlohmann::json to_json(const SelfcheckReport& r);
SelfcheckReport selfcheck_report_from_json(const nlohmann::json& j);

std::string study_csv(const StudyReport& report);
std::string modes_csv(const std::vector<ModeQuantities>& modes);

}  // namespace bogo::cli
