#pragma once

#include <optional>
#include <vector>

#include "bogo/model.hpp"

namespace bogo {

/// Closed-form Bogoliubov data of one nonzero mode.
struct ModeQuantities {
  Momentum p;
  double w_hat = 0.0;
  double p2 = 0.0;          // |p|^2
  double e_p = 0.0;         // sqrt(|p|^4 + 2|p|^2 w_hat)
  double alpha_p = 0.0;     // w_hat / (|p|^2 + w_hat + e_p)
  double n_p = 0.0;         // alpha^2 / (1 - alpha^2)
  double m_p = 0.0;         // -alpha / (1 - alpha^2)
  double eB_summand = 0.0;  // (|p|^2 + w_hat - e_p) / 2, evaluated as alpha * w_hat / 2

  bool operator==(const ModeQuantities&) const = default;
};

/// Throws std::invalid_argument for p = 0 or a negative coefficient.
ModeQuantities mode_quantities(const Momentum& p, double w_hat);

/// A truncated lattice sum and a certified bound on what the truncation left out.
struct BoundedSum {
  double value = 0.0;
  double tail_bound = 0.0;
};

/// Neumaier-compensated accumulator.
class CompensatedSum {
 public:
  void add(double x);
  double value() const { return sum_ + correction_; }

 private:
  double sum_ = 0.0;
  double correction_ = 0.0;
};

/// e_B over nonzero |p| <= cutoff (default: the model's mode cutoff). The tail
/// bound sums w_hat^2 / (2|p|^2) over support momenta beyond the cutoff.
BoundedSum sum_eB(const TorusModel& model, std::optional<double> cutoff = std::nullopt);

/// D = sum |p|^2 alpha_p^2 / (1 - alpha_p^2) over nonzero |p| <= cutoff. The
/// tail bound uses alpha <= w/(2|p|^2) and 1 - alpha^2 >= |p|^2/(|p|^2 + w).
BoundedSum sum_D(const TorusModel& model, std::optional<double> cutoff = std::nullopt);

struct EnergyPredictions {
  BoundedSum ground_state;  // (lambda/2) N(N-1) w_hat(0) + e_B
  BoundedSum binding;       // lambda (N-1) w_hat(0) + (e_B - D) / N
};

EnergyPredictions predict_energies(const TorusModel& model);

/// C with  H_B >= (1/2) sum |p|^2 a_p^* a_p - C, i.e. the e_B-type constant
/// for the doubled potential and halved kinetic energy.
double hb_lower_bound_constant(const TorusModel& model);

struct BogoliubovSolution {
  std::vector<ModeQuantities> modes;  // nonzero modes of the model, canonical order
  double e_B = 0.0;
  double e_B_tail_bound = 0.0;
  double D = 0.0;
  double D_tail_bound = 0.0;
};

BogoliubovSolution solve_bogoliubov(const TorusModel& model);

}  // namespace bogo
