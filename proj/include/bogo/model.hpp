#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace bogo {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

/// Resource budget exceeded (mode set, basis, dense product sizes).
class ResourceLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Lattice momentum p = 2*pi*n on the unit torus, stored as the integer vector n.
struct Momentum {
  std::vector<int> n;

  Momentum() = default;
  explicit Momentum(std::vector<int> coords) : n(std::move(coords)) {}
  Momentum(std::initializer_list<int> coords) : n(coords) {}

  static Momentum zero(int d) { return Momentum(std::vector<int>(static_cast<std::size_t>(d), 0)); }

  int dim() const { return static_cast<int>(n.size()); }
  bool is_zero() const;
  /// Integer squared length sum(n_i^2).
  long lattice_norm2() const;
  /// Physical |p|^2 = (2 pi)^2 sum(n_i^2).
  double norm2() const { return two_pi * two_pi * static_cast<double>(lattice_norm2()); }
  double norm() const;

  Momentum operator-() const;
  Momentum operator+(const Momentum& o) const;
  Momentum operator-(const Momentum& o) const;
  Momentum& operator+=(const Momentum& o);

  auto operator<=>(const Momentum&) const = default;
  bool operator==(const Momentum&) const = default;

  std::string to_string() const;
};

struct MomentumHash {
  std::size_t operator()(const Momentum& p) const noexcept;
};

/// Fourier table of an even interaction w on the torus; coefficients absent
/// from the table are zero.
class PotentialSpec {
 public:
  PotentialSpec() = default;
  PotentialSpec(int dim, std::map<Momentum, double> coefficients, double offset_log = 0.0);

  static PotentialSpec zero(int dim) { return PotentialSpec(dim, {}); }
  /// w_hat(p) = value for 0 < |p| <= radius, plus w_hat(0) = zero_value.
  static PotentialSpec band(int dim, double radius, double value, double zero_value = 0.0);
  /// w_hat(+-p) = value for one lattice vector p.
  static PotentialSpec pair(const Momentum& p, double value);

  int dim() const { return dim_; }
  double operator()(const Momentum& p) const;
  double zero_mode() const;
  const std::map<Momentum, double>& coefficients() const { return coefficients_; }
  /// Largest |p| carrying a nonzero coefficient.
  double support_radius() const { return support_radius_; }
  double offset_log() const { return offset_log_; }
  /// w(0) = sum_p w_hat(p).
  double value_at_origin() const;

  bool operator==(const PotentialSpec&) const = default;

 private:
  int dim_ = 1;
  std::map<Momentum, double> coefficients_;
  double support_radius_ = 0.0;
  double offset_log_ = 0.0;
};

/// Every violated standing assumption, one human-readable line each.
std::vector<std::string> validate_potential(const PotentialSpec& spec);

/// sum_p w_hat(p) exp(i p.x) for x in [0,1)^d. Throws std::domain_error when
/// the imaginary residue is not negligible (the table is not even).
double real_space_eval(const PotentialSpec& spec, std::span<const double> x);

struct ZeroModeShift {
  PotentialSpec spec;  // w_hat(0) removed
  double w0 = 0.0;     // removed coefficient

  /// Interaction-energy shift lambda * w0 * N(N-1)/2 of the N-particle sector.
  double energy_offset(double lambda, int N) const;
};

ZeroModeShift normalize_zero_mode(const PotentialSpec& spec);

/// All p in (2 pi Z)^d with |p| <= cutoff, lexicographic in the integer
/// coordinates. Throws ResourceLimit when more than max_modes would result.
std::vector<Momentum> build_mode_set(int d, double cutoff, bool include_zero,
                                     std::size_t max_modes = 100000);

/// Problem instance: N bosons on the unit torus with coupling lambda.
struct TorusModel {
  int d = 1;
  int N = 2;
  double lambda = 0.5;
  PotentialSpec potential;
  double mode_cutoff = 0.0;
  bool include_zero_mode = true;

  std::vector<Momentum> modes() const { return build_mode_set(d, mode_cutoff, include_zero_mode); }
  /// Nonzero modes |p| <= mode_cutoff.
  std::vector<Momentum> excitation_modes() const { return build_mode_set(d, mode_cutoff, false); }
  TorusModel with_particles(int n) const;

  bool operator==(const TorusModel&) const = default;
};

/// Potential violations plus structural checks; with mean_field set, also
/// requires lambda*N in [0.5, 2].
std::vector<std::string> validate_model(const TorusModel& model, bool mean_field = false);

nlohmann::json to_json(const TorusModel& model);
nlohmann::json to_json(const PotentialSpec& spec);
PotentialSpec potential_from_json(const nlohmann::json& j, int dim);
TorusModel model_from_json(const nlohmann::json& j);

/// Sorted keys, 17 significant digits; the input to cache digests.
std::string canonical_serialization(const TorusModel& model);

}  // namespace bogo
