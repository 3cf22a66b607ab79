#include "bogo/bogoliubov.hpp"

#include <algorithm>
#include <cmath>

namespace bogo {

ModeQuantities mode_quantities(const Momentum& p, double w_hat) {
  if (p.is_zero()) throw std::invalid_argument("zero mode has no Bogoliubov pair");
  if (!(w_hat >= 0.0)) throw std::invalid_argument("negative Fourier coefficient at " + p.to_string());

  ModeQuantities q;
  q.p = p;
  q.w_hat = w_hat;
  q.p2 = p.norm2();
  if (w_hat == 0.0) {
    q.e_p = q.p2;
    return q;
  }
  q.e_p = q.p2 * std::sqrt(1.0 + 2.0 * w_hat / q.p2);
  q.alpha_p = w_hat / (q.p2 + w_hat + q.e_p);
  const double one_minus = 1.0 - q.alpha_p * q.alpha_p;
  q.n_p = q.alpha_p * q.alpha_p / one_minus;
  q.m_p = -q.alpha_p / one_minus;
  // (A - e)/2 = w^2 / (2 (A + e)) = alpha w / 2 with A = |p|^2 + w.
  q.eB_summand = 0.5 * q.alpha_p * w_hat;
  return q;
}

void CompensatedSum::add(double x) {
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x))
    correction_ += (sum_ - t) + x;
  else
    correction_ += (x - t) + sum_;
  sum_ = t;
}

namespace {

// Nonzero modes with |p| <= cutoff, descending |p|, ties by coordinates.
std::vector<Momentum> summation_order(const TorusModel& model, double cutoff) {
  auto modes = build_mode_set(model.d, cutoff, false);
  std::stable_sort(modes.begin(), modes.end(), [](const Momentum& a, const Momentum& b) {
    return a.lattice_norm2() > b.lattice_norm2();
  });
  return modes;
}

template <typename Term, typename Tail>
BoundedSum bounded_sum(const TorusModel& model, std::optional<double> cutoff, Term term, Tail tail) {
  const double lambda_cut = cutoff.value_or(model.mode_cutoff);
  CompensatedSum sum;
  for (const auto& p : summation_order(model, lambda_cut)) sum.add(term(mode_quantities(p, model.potential(p))));

  const double limit = lambda_cut * lambda_cut * (1.0 + 1e-12);
  CompensatedSum rest;
  for (const auto& [p, w] : model.potential.coefficients()) {
    if (p.is_zero() || w == 0.0) continue;
    if (p.norm2() > limit) rest.add(tail(p.norm2(), w));
  }
  return {sum.value(), rest.value()};
}

}  // namespace

BoundedSum sum_eB(const TorusModel& model, std::optional<double> cutoff) {
  auto r = bounded_sum(
      model, cutoff, [](const ModeQuantities& q) { return q.eB_summand; },
      [](double p2, double w) { return w * w / (2.0 * p2); });
  r.value = -r.value;
  return r;
}

BoundedSum sum_D(const TorusModel& model, std::optional<double> cutoff) {
  return bounded_sum(
      model, cutoff, [](const ModeQuantities& q) { return q.p2 * q.n_p; },
      [](double p2, double w) { return w * w * (p2 + w) / (4.0 * p2 * p2); });
}

EnergyPredictions predict_energies(const TorusModel& model) {
  const auto eB = sum_eB(model);
  const auto D = sum_D(model);
  const double N = model.N;
  const double w0 = model.potential.zero_mode();
  EnergyPredictions out;
  out.ground_state = {0.5 * model.lambda * N * (N - 1.0) * w0 + eB.value, eB.tail_bound};
  out.binding = {model.lambda * (N - 1.0) * w0 + (eB.value - D.value) / N,
                 (eB.tail_bound + D.tail_bound) / N};
  return out;
}

double hb_lower_bound_constant(const TorusModel& model) {
  CompensatedSum sum;
  for (const auto& p : summation_order(model, model.mode_cutoff)) {
    const double w = model.potential(p);
    if (w == 0.0) continue;
    const double p2 = p.norm2();
    // |p|^2 + 2w - sqrt(|p|^4 + 4|p|^2 w) = 4 w^2 / (|p|^2 + 2w + sqrt(...))
    const double root = p2 * std::sqrt(1.0 + 4.0 * w / p2);
    sum.add(w * w / (p2 + 2.0 * w + root));
  }
  return sum.value();
}

BogoliubovSolution solve_bogoliubov(const TorusModel& model) {
  BogoliubovSolution sol;
  for (const auto& p : model.excitation_modes()) sol.modes.push_back(mode_quantities(p, model.potential(p)));
  const auto eB = sum_eB(model);
  const auto D = sum_D(model);
  sol.e_B = eB.value;
  sol.e_B_tail_bound = eB.tail_bound;
  sol.D = D.value;
  sol.D_tail_bound = D.tail_bound;
  return sol;
}

}  // namespace bogo
