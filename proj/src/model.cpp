#include "bogo/model.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

#include "bogo/json_io.hpp"

namespace bogo {

using nlohmann::json;

// ---------------------------------------------------------------- Momentum

bool Momentum::is_zero() const {
  return std::all_of(n.begin(), n.end(), [](int c) { return c == 0; });
}

long Momentum::lattice_norm2() const {
  long s = 0;
  for (int c : n) s += static_cast<long>(c) * c;
  return s;
}

double Momentum::norm() const { return std::sqrt(norm2()); }

Momentum Momentum::operator-() const {
  Momentum r(*this);
  for (int& c : r.n) c = -c;
  return r;
}

Momentum& Momentum::operator+=(const Momentum& o) {
  if (o.n.size() != n.size()) throw std::invalid_argument("momentum dimension mismatch");
  for (std::size_t i = 0; i < n.size(); ++i) n[i] += o.n[i];
  return *this;
}

Momentum Momentum::operator+(const Momentum& o) const {
  Momentum r(*this);
  r += o;
  return r;
}

Momentum Momentum::operator-(const Momentum& o) const { return *this + (-o); }

std::string Momentum::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < n.size(); ++i) os << (i ? "," : "") << n[i];
  os << ')';
  return os.str();
}

std::size_t MomentumHash::operator()(const Momentum& p) const noexcept {
  std::size_t h = 0x9e3779b97f4a7c15ULL;
  for (int c : p.n) h ^= std::hash<int>{}(c) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

// ----------------------------------------------------------- PotentialSpec

PotentialSpec::PotentialSpec(int dim, std::map<Momentum, double> coefficients, double offset_log)
    : dim_(dim), coefficients_(std::move(coefficients)), offset_log_(offset_log) {
  if (dim <= 0) throw std::invalid_argument("potential dimension must be positive");
  for (const auto& [p, w] : coefficients_) {
    if (p.dim() != dim)
      throw std::invalid_argument("potential entry " + p.to_string() + " has wrong dimension");
    if (w != 0.0) support_radius_ = std::max(support_radius_, p.norm());
  }
}

PotentialSpec PotentialSpec::band(int dim, double radius, double value, double zero_value) {
  std::map<Momentum, double> table;
  for (auto& p : build_mode_set(dim, radius, false)) table.emplace(std::move(p), value);
  if (zero_value != 0.0) table.emplace(Momentum::zero(dim), zero_value);
  return PotentialSpec(dim, std::move(table));
}

PotentialSpec PotentialSpec::pair(const Momentum& p, double value) {
  std::map<Momentum, double> table;
  table[p] = value;
  table[-p] = value;
  return PotentialSpec(p.dim(), std::move(table));
}

double PotentialSpec::operator()(const Momentum& p) const {
  const auto it = coefficients_.find(p);
  return it == coefficients_.end() ? 0.0 : it->second;
}

double PotentialSpec::zero_mode() const { return (*this)(Momentum::zero(dim_)); }

double PotentialSpec::value_at_origin() const {
  double s = 0.0;
  for (const auto& [p, w] : coefficients_) s += w;
  return s;
}

std::vector<std::string> validate_potential(const PotentialSpec& spec) {
  std::vector<std::string> report;
  for (const auto& [p, w] : spec.coefficients()) {
    const std::string where = "p=2pi*" + p.to_string();
    if (!std::isfinite(w)) {
      report.push_back("finiteness at " + where);
      continue;
    }
    if (w < 0.0) report.push_back("nonnegativity at " + where);
    const double partner = spec(-p);
    // Report each asymmetric pair once, at its lexicographically larger member.
    if (partner != w && (-p < p || !spec.coefficients().contains(-p))) {
      std::ostringstream os;
      os << "evenness at " << where << ": w_hat(p)=" << w << " but w_hat(-p)=" << partner;
      report.push_back(os.str());
    }
    if (w != 0.0 && p.norm() > spec.support_radius())
      report.push_back("support at " + where);
  }
  return report;
}

double real_space_eval(const PotentialSpec& spec, std::span<const double> x) {
  if (static_cast<int>(x.size()) != spec.dim())
    throw std::invalid_argument("evaluation point has wrong dimension");
  std::complex<double> sum = 0.0;
  double magnitude = 0.0;
  for (const auto& [p, w] : spec.coefficients()) {
    double phase = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) phase += two_pi * p.n[i] * x[i];
    sum += w * std::polar(1.0, phase);
    magnitude += std::abs(w);
  }
  if (std::abs(sum.imag()) > 1e-12 * std::max(std::abs(sum), magnitude))
    throw std::domain_error("potential table is not even: imaginary residue " +
                            std::to_string(sum.imag()));
  return sum.real();
}

double ZeroModeShift::energy_offset(double lambda, int N) const {
  return lambda * w0 * static_cast<double>(N) * static_cast<double>(N - 1) / 2.0;
}

ZeroModeShift normalize_zero_mode(const PotentialSpec& spec) {
  const double w0 = spec.zero_mode();
  if (w0 == 0.0) return {spec, 0.0};
  auto table = spec.coefficients();
  table.erase(Momentum::zero(spec.dim()));
  return {PotentialSpec(spec.dim(), std::move(table), spec.offset_log() + w0), w0};
}

// ------------------------------------------------------------- Mode sets

std::vector<Momentum> build_mode_set(int d, double cutoff, bool include_zero, std::size_t max_modes) {
  if (d <= 0) throw std::invalid_argument("dimension must be positive");
  if (!(cutoff >= 0.0)) throw std::invalid_argument("mode cutoff must be nonnegative");
  const double reach = cutoff / two_pi;
  if (reach > 1e6) throw ResourceLimit("mode cutoff too large");
  const int k = static_cast<int>(std::floor(reach * (1.0 + 1e-12)));
  const double limit = cutoff * cutoff * (1.0 + 1e-12);

  auto accept = [&](const std::vector<int>& n) {
    long s = 0;
    for (int c : n) s += static_cast<long>(c) * c;
    if (s == 0) return include_zero;
    return two_pi * two_pi * static_cast<double>(s) <= limit;
  };

  std::vector<Momentum> modes;
  std::vector<int> n(static_cast<std::size_t>(d), -k);
  while (true) {
    if (accept(n)) {
      if (modes.size() >= max_modes)
        throw ResourceLimit("mode set exceeds " + std::to_string(max_modes) + " modes");
      modes.emplace_back(n);
    }
    // Odometer, last coordinate fastest: yields lexicographic order.
    int i = d - 1;
    while (i >= 0 && n[static_cast<std::size_t>(i)] == k) n[static_cast<std::size_t>(i--)] = -k;
    if (i < 0) break;
    ++n[static_cast<std::size_t>(i)];
  }
  return modes;
}

// ------------------------------------------------------------- TorusModel

TorusModel TorusModel::with_particles(int n) const {
  TorusModel m(*this);
  m.N = n;
  return m;
}

std::vector<std::string> validate_model(const TorusModel& model, bool mean_field) {
  std::vector<std::string> report = validate_potential(model.potential);
  if (model.d <= 0) report.push_back("dimension d must be positive");
  if (model.N <= 0) report.push_back("particle number N must be positive");
  if (!(model.lambda >= 0.0) || !std::isfinite(model.lambda))
    report.push_back("coupling lambda must be finite and nonnegative");
  if (!(model.mode_cutoff >= 0.0)) report.push_back("mode_cutoff must be nonnegative");
  if (model.potential.dim() != model.d) report.push_back("potential dimension differs from d");
  if (mean_field) {
    const double ln = model.lambda * model.N;
    if (ln < 0.5 || ln > 2.0) report.push_back("lambda*N outside [0.5, 2] in mean-field mode");
  }
  return report;
}

// ---------------------------------------------------------- Serialization

json to_json(const PotentialSpec& spec) {
  json entries = json::array();
  for (const auto& [p, w] : spec.coefficients()) {
    json row = json::array();
    for (int c : p.n) row.push_back(c);
    row.push_back(w);
    entries.push_back(std::move(row));
  }
  return json{{"entries", std::move(entries)}, {"offset_log", spec.offset_log()}};
}

json to_json(const TorusModel& model) {
  return json{{"d", model.d},
              {"N", model.N},
              {"lambda", model.lambda},
              {"mode_cutoff", model.mode_cutoff},
              {"include_zero_mode", model.include_zero_mode},
              {"potential", to_json(model.potential)}};
}

namespace {

const json& require(const json& j, const char* key, const std::string& context) {
  if (!j.is_object()) throw std::invalid_argument(context + " must be an object");
  const auto it = j.find(key);
  if (it == j.end()) throw std::invalid_argument("missing key '" + context + key + "'");
  return *it;
}

void reject_unknown(const json& j, std::initializer_list<const char*> known, const std::string& context) {
  for (const auto& [key, value] : j.items()) {
    if (std::none_of(known.begin(), known.end(), [&](const char* k) { return key == k; }))
      throw std::invalid_argument("unknown key '" + context + key + "'");
  }
}

}  // namespace

PotentialSpec potential_from_json(const json& j, int dim) {
  reject_unknown(j, {"entries", "offset_log"}, "potential.");
  std::map<Momentum, double> table;
  for (const auto& row : require(j, "entries", "potential.")) {
    if (!row.is_array() || static_cast<int>(row.size()) != dim + 1)
      throw std::invalid_argument("potential.entries rows must hold d integer coordinates and a value");
    std::vector<int> n;
    for (int i = 0; i < dim; ++i) {
      if (!row[static_cast<std::size_t>(i)].is_number_integer())
        throw std::invalid_argument("potential.entries coordinates must be integers");
      n.push_back(row[static_cast<std::size_t>(i)].get<int>());
    }
    if (!row.back().is_number()) throw std::invalid_argument("potential.entries value must be a number");
    if (!table.emplace(Momentum(std::move(n)), row.back().get<double>()).second)
      throw std::invalid_argument("duplicate potential entry");
  }
  const double offset = j.contains("offset_log") ? j.at("offset_log").get<double>() : 0.0;
  return PotentialSpec(dim, std::move(table), offset);
}

TorusModel model_from_json(const json& j) {
  reject_unknown(j, {"d", "N", "lambda", "mode_cutoff", "include_zero_mode", "potential"}, "");
  TorusModel m;
  m.d = require(j, "d", "").get<int>();
  m.N = require(j, "N", "").get<int>();
  m.lambda = require(j, "lambda", "").get<double>();
  m.mode_cutoff = require(j, "mode_cutoff", "").get<double>();
  m.include_zero_mode = j.contains("include_zero_mode") ? j.at("include_zero_mode").get<bool>() : true;
  m.potential = potential_from_json(require(j, "potential", ""), m.d);
  return m;
}

std::string canonical_serialization(const TorusModel& model) { return dump_canonical(to_json(model)); }

}  // namespace bogo
