#include "bogo/cli/serialize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bogo/json_io.hpp"

namespace bogo::cli {

using nlohmann::json;

namespace {

// Non-finite values are written as null; read them back as +inf (only gaps can be infinite).
double number(const json& j, const char* key) {
  const auto& v = j.at(key);
  return v.is_null() ? std::numeric_limits<double>::infinity() : v.get<double>();
}

std::vector<int> coords(const json& j) { return j.get<std::vector<int>>(); }

}  // namespace

double EdReport::max_residual() const {
  double r = ground.residual_norm;
  if (binding) r = std::max({r, binding->residual_N, binding->residual_Nm1});
  return r;
}

bool EdReport::converged() const { return ground.converged && (!binding || binding->converged); }

json to_json(const ModeQuantities& q) {
  return json{{"p", q.p.n},        {"w_hat", q.w_hat}, {"p2", q.p2},   {"e_p", q.e_p},
              {"alpha_p", q.alpha_p}, {"n_p", q.n_p}, {"m_p", q.m_p}, {"eB_summand", q.eB_summand}};
}

ModeQuantities mode_quantities_from_json(const json& j) {
  ModeQuantities q;
  q.p = Momentum(coords(j.at("p")));
  q.w_hat = number(j, "w_hat");
  q.p2 = number(j, "p2");
  q.e_p = number(j, "e_p");
  q.alpha_p = number(j, "alpha_p");
  q.n_p = number(j, "n_p");
  q.m_p = number(j, "m_p");
  q.eB_summand = number(j, "eB_summand");
  return q;
}

json to_json(const EvalReport& r) {
  json modes = json::array();
  for (const auto& q : r.modes) modes.push_back(to_json(q));
  return json{{"workflow", "eval"},
              {"model", to_json(r.model)},
              {"modes", std::move(modes)},
              {"e_B", r.e_B},
              {"e_B_tail_bound", r.e_B_tail_bound},
              {"D", r.D},
              {"D_tail_bound", r.D_tail_bound},
              {"ground_state_prediction", r.ground_state_prediction},
              {"binding_prediction", r.binding_prediction},
              {"consistent_prediction", r.consistent_prediction},
              {"hb_lower_bound_constant", r.hb_lower_bound_constant},
              {"e_B_full", r.e_B_full},
              {"D_full", r.D_full}};
}

EvalReport eval_report_from_json(const json& j) {
  EvalReport r;
  r.model = model_from_json(j.at("model"));
  for (const auto& q : j.at("modes")) r.modes.push_back(mode_quantities_from_json(q));
  r.e_B = number(j, "e_B");
  r.e_B_tail_bound = number(j, "e_B_tail_bound");
  r.D = number(j, "D");
  r.D_tail_bound = number(j, "D_tail_bound");
  r.ground_state_prediction = number(j, "ground_state_prediction");
  r.binding_prediction = number(j, "binding_prediction");
  r.consistent_prediction = number(j, "consistent_prediction");
  r.hb_lower_bound_constant = number(j, "hb_lower_bound_constant");
  r.e_B_full = number(j, "e_B_full");
  r.D_full = number(j, "D_full");
  return r;
}

json to_json(const SectorSummary& s) {
  return json{{"N", s.N},
              {"dimension", s.dimension},
              {"eigenvalues", s.eigenvalues},
              {"residual_norm", s.residual_norm},
              {"iterations", s.iterations},
              {"converged", s.converged},
              {"method", s.method},
              {"gap", s.gap},
              {"excited", s.excited},
              {"excited_sq", s.excited_sq}};
}

SectorSummary sector_summary_from_json(const json& j) {
  SectorSummary s;
  s.N = j.at("N").get<int>();
  s.dimension = j.at("dimension").get<std::size_t>();
  s.eigenvalues = j.at("eigenvalues").get<std::vector<double>>();
  s.residual_norm = number(j, "residual_norm");
  s.iterations = j.at("iterations").get<int>();
  s.converged = j.at("converged").get<bool>();
  s.method = j.at("method").get<std::string>();
  s.gap = number(j, "gap");
  s.excited = number(j, "excited");
  s.excited_sq = number(j, "excited_sq");
  return s;
}

json to_json(const BindingSummary& b) {
  return json{{"E_N", b.E_N},
              {"E_Nm1", b.E_Nm1},
              {"deltaE", b.delta_E},
              {"lower_bound", b.lower_bound},
              {"upper_bound", b.upper_bound},
              {"leading_term", b.leading_term},
              {"prediction", b.prediction},
              {"residual_N", b.residual_N},
              {"residual_Nm1", b.residual_Nm1},
              {"dim_N", b.dim_N},
              {"dim_Nm1", b.dim_Nm1},
              {"converged", b.converged},
              {"k0_checked", b.k0_checked},
              {"k0_is_global", b.k0_is_global}};
}

BindingSummary binding_summary_from_json(const json& j) {
  BindingSummary b;
  b.E_N = number(j, "E_N");
  b.E_Nm1 = number(j, "E_Nm1");
  b.delta_E = number(j, "deltaE");
  b.lower_bound = number(j, "lower_bound");
  b.upper_bound = number(j, "upper_bound");
  b.leading_term = number(j, "leading_term");
  b.prediction = number(j, "prediction");
  b.residual_N = number(j, "residual_N");
  b.residual_Nm1 = number(j, "residual_Nm1");
  b.dim_N = j.at("dim_N").get<std::size_t>();
  b.dim_Nm1 = j.at("dim_Nm1").get<std::size_t>();
  b.converged = j.at("converged").get<bool>();
  b.k0_checked = j.at("k0_checked").get<bool>();
  b.k0_is_global = j.at("k0_is_global").get<bool>();
  return b;
}

json to_json(const EdReport& r) {
  json j{{"workflow", "ed"}, {"model", to_json(r.model)}, {"ground", to_json(r.ground)}};
  j["binding"] = r.binding ? to_json(*r.binding) : json(nullptr);
  return j;
}

EdReport ed_report_from_json(const json& j) {
  EdReport r;
  r.model = model_from_json(j.at("model"));
  r.ground = sector_summary_from_json(j.at("ground"));
  if (!j.at("binding").is_null()) r.binding = binding_summary_from_json(j.at("binding"));
  return r;
}

json to_json(const StudyRecord& r) {
  return json{{"N", r.N},
              {"lambda", r.lambda},
              {"E_N", r.E_N},
              {"E_Nm1", r.E_Nm1},
              {"deltaE", r.delta_E},
              {"leading_term", r.leading_term},
              {"residual_r", r.residual_r},
              {"prediction", r.prediction},
              {"abs_err", r.abs_err},
              {"lower_bound", r.lower_bound},
              {"upper_bound", r.upper_bound},
              {"excited", r.excited},
              {"excited_sq", r.excited_sq},
              {"overlap", r.overlap ? json(*r.overlap) : json(nullptr)},
              {"residual_norm", r.residual_norm},
              {"converged", r.converged}};
}

StudyRecord study_record_from_json(const json& j) {
  StudyRecord r;
  r.N = j.at("N").get<int>();
  r.lambda = number(j, "lambda");
  r.E_N = number(j, "E_N");
  r.E_Nm1 = number(j, "E_Nm1");
  r.delta_E = number(j, "deltaE");
  r.leading_term = number(j, "leading_term");
  r.residual_r = number(j, "residual_r");
  r.prediction = number(j, "prediction");
  r.abs_err = number(j, "abs_err");
  r.lower_bound = number(j, "lower_bound");
  r.upper_bound = number(j, "upper_bound");
  r.excited = number(j, "excited");
  r.excited_sq = number(j, "excited_sq");
  if (!j.at("overlap").is_null()) r.overlap = j.at("overlap").get<double>();
  r.residual_norm = number(j, "residual_norm");
  r.converged = j.at("converged").get<bool>();
  return r;
}

json to_json(const FitResult& f) {
  return json{{"model", to_string(f.model)}, {"r_inf", f.r_inf}, {"a", f.a},
              {"b", f.b}, {"max_deviation", f.max_deviation}, {"points", f.points},
              {"ok", f.ok}, {"message", f.message}};
}

FitResult fit_result_from_json(const json& j) {
  FitResult f;
  f.model = fit_model_from_string(j.at("model").get<std::string>());
  f.r_inf = number(j, "r_inf");
  f.a = number(j, "a");
  f.b = number(j, "b");
  f.max_deviation = number(j, "max_deviation");
  f.points = j.at("points").get<int>();
  f.ok = j.at("ok").get<bool>();
  f.message = j.at("message").get<std::string>();
  return f;
}

json to_json(const StudyReport& r) {
  json records = json::array();
  for (const auto& rec : r.records) records.push_back(to_json(rec));
  return json{{"workflow", "study"},
              {"records", std::move(records)},
              {"prediction", r.prediction},
              {"e_B", r.e_B},
              {"D", r.D},
              {"e_B_full", r.e_B_full},
              {"D_full", r.D_full},
              {"hb_ground_energy", r.hb_ground_energy},
              {"hb_cutoff", r.hb_cutoff},
              {"fit", to_json(r.fit)}};
}

StudyReport study_report_from_json(const json& j) {
  StudyReport r;
  for (const auto& rec : j.at("records")) r.records.push_back(study_record_from_json(rec));
  r.prediction = number(j, "prediction");
  r.e_B = number(j, "e_B");
  r.D = number(j, "D");
  r.e_B_full = number(j, "e_B_full");
  r.D_full = number(j, "D_full");
  r.hb_ground_energy = number(j, "hb_ground_energy");
  r.hb_cutoff = j.at("hb_cutoff").get<int>();
  r.fit = fit_result_from_json(j.at("fit"));
  return r;
}

json to_json(const SelfcheckReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks)
    checks.push_back(json{{"name", c.name}, {"value", c.value}, {"tolerance", c.tolerance}, {"passed", c.passed}});
  return json{{"workflow", "selfcheck"}, {"model", to_json(r.model)}, {"checks", std::move(checks)}, {"passed", r.passed}};
}

SelfcheckReport selfcheck_report_from_json(const json& j) {
  SelfcheckReport r;
  r.model = model_from_json(j.at("model"));
  for (const auto& c : j.at("checks"))
    r.checks.push_back(Check{c.at("name").get<std::string>(), number(c, "value"), number(c, "tolerance"),
                             c.at("passed").get<bool>()});
  r.passed = j.at("passed").get<bool>();
  return r;
}

std::string study_csv(const StudyReport& report) {
  std::string out = std::string(study_csv_header) + "\n";
  for (const auto& r : report.records) {
    out += std::to_string(r.N);
    for (double x : {r.lambda, r.E_N, r.E_Nm1, r.delta_E, r.leading_term, r.residual_r, r.prediction, r.abs_err})
      out += "," + format_double(x);
    out += r.converged ? ",true\n" : ",false\n";
  }
  return out;
}

std::string modes_csv(const std::vector<ModeQuantities>& modes) {
  std::string out = std::string(modes_csv_header) + "\n";
  for (const auto& q : modes) {
    std::string p;
    for (std::size_t i = 0; i < q.p.n.size(); ++i) p += (i ? ";" : "") + std::to_string(q.p.n[i]);
    out += p;
    for (double x : {q.w_hat, q.e_p, q.alpha_p, q.n_p, q.eB_summand}) out += "," + format_double(x);
    out += "\n";
  }
  return out;
}

}  // namespace bogo::cli
