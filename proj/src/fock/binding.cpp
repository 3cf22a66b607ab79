#include "bogo/fock/binding.hpp"

#include <cmath>

#include "bogo/fock/hamiltonian.hpp"
#include "bogo/fock/observables.hpp"

namespace bogo::fock {

namespace {

// An empty momentum stands for K = 0 in the model's dimension.
std::optional<Momentum> resolve(std::optional<Momentum> K, int dim) {
  if (K && K->n.empty()) return Momentum::zero(dim);
  return K;
}

}  // namespace

SectorSolve solve_sector(const TorusModel& model, int N, const EigenOptions& options, std::optional<Momentum> K,
                         std::size_t budget) {
  auto basis = FockBasis::particles(model.modes(), N, resolve(std::move(K), model.d), budget);
  if (basis.size() == 0) throw std::invalid_argument("empty momentum sector");
  auto H = build_hamiltonian(model, basis, options.threads);
  EigenOptions opts = options;
  opts.k = std::min<int>(options.k, static_cast<int>(basis.size()));
  auto result = lowest_eigenpairs(H, opts);
  return {std::move(basis), std::move(H), std::move(result)};
}

double sector_energy_floor(const TorusModel& model, int N, double min_kinetic) {
  double transfer = 0.0;
  for (const auto& [l, w] : model.potential.coefficients())
    if (!l.is_zero()) transfer += w;
  const double n = N;
  return min_kinetic - 0.5 * model.lambda * n * transfer + 0.5 * model.lambda * model.potential.zero_mode() * n * (n - 1.0);
}

BindingResult binding_from_ed(const TorusModel& model, const BindingOptions& options) {
  if (model.N < 1) throw std::invalid_argument("binding energy needs N >= 1");
  if (!model.include_zero_mode) throw std::invalid_argument("binding energy needs the zero mode");
  const auto modes = model.modes();
  const auto zero = Momentum::zero(model.d);

  const auto upper = solve_sector(model, model.N, options.eigen, zero, options.budget);
  const auto lower = solve_sector(model, model.N - 1, options.eigen, zero, options.budget);
  const std::size_t z = *upper.basis.zero_mode_index();

  BindingResult r;
  r.N = model.N;
  r.E_N = upper.result.ground_energy();
  r.E_Nm1 = lower.result.ground_energy();
  r.delta_E = r.E_N - r.E_Nm1;
  r.residual_N = upper.result.residual_norm;
  r.residual_Nm1 = lower.result.residual_norm;
  r.iterations = upper.result.iterations + lower.result.iterations;
  r.dim_N = upper.basis.size();
  r.dim_Nm1 = lower.basis.size();
  r.converged = upper.result.converged && lower.result.converged;
  r.ground_vector_reliable = upper.result.ground_vector_reliable() && lower.result.ground_vector_reliable();
  r.ground_N = upper.result.ground_vector;

  const auto& psi_N = upper.result.ground_vector;
  const auto& psi_Nm1 = lower.result.ground_vector;
  const int threads = options.eigen.threads;

  // Lower bracket: (<H Psi_N, a0^* a0 Psi_N> - <a0 Psi_N, H a0 Psi_N>) / |a0 Psi_N|^2
  {
    const auto a0_psi = apply_ladder(upper.basis, psi_N, z, false, lower.basis);
    const auto back = apply_ladder(lower.basis, a0_psi, z, true, upper.basis);
    const auto H_psi = upper.hamiltonian.apply(psi_N, threads);
    const auto H_a0_psi = lower.hamiltonian.apply(a0_psi, threads);
    r.a0_norm_sq = dot(a0_psi, a0_psi);
    r.lower_bound = (dot(H_psi, back) - dot(a0_psi, H_a0_psi)) / r.a0_norm_sq;
  }
  // Upper bracket: (<a0^* Psi, H a0^* Psi> - <a0 a0^* Psi, H Psi>) / |a0^* Psi|^2, Psi = Psi_{N-1}
  {
    const auto a0dag_psi = apply_ladder(lower.basis, psi_Nm1, z, true, upper.basis);
    const auto back = apply_ladder(upper.basis, a0dag_psi, z, false, lower.basis);
    const auto H_psi = lower.hamiltonian.apply(psi_Nm1, threads);
    const auto H_a0dag_psi = upper.hamiltonian.apply(a0dag_psi, threads);
    r.a0dag_norm_sq = dot(a0dag_psi, a0dag_psi);
    r.upper_bound = (dot(a0dag_psi, H_a0dag_psi) - dot(back, H_psi)) / r.a0dag_norm_sq;
  }

  r.excited_N = observable_expectation(upper.basis, psi_N, observable::ExcitedNumber{});
  r.excited_sq_N = observable_expectation(upper.basis, psi_N, observable::ExcitedNumberSquared{});
  r.excited_Nm1 = observable_expectation(lower.basis, psi_Nm1, observable::ExcitedNumber{});

  if (options.check_k0_global) {
    r.k0_checked = true;
    for (const auto& [n, E0] : {std::pair{model.N, r.E_N}, std::pair{model.N - 1, r.E_Nm1}}) {
      if (n == 0) continue;
      for (const auto& [K, info] : sector_census(modes, n)) {
        if (K.is_zero() || sector_energy_floor(model, n, info.min_kinetic) > E0) continue;
        if (info.count > options.budget) {
          r.k0_checked = false;
          continue;
        }
        EigenOptions single = options.eigen;
        single.k = 1;
        const auto other = solve_sector(model, n, single, K, options.budget);
        if (other.result.ground_energy() < E0 - 1e-10 * std::max(1.0, std::abs(E0))) r.k0_is_global = false;
      }
    }
  }
  return r;
}

BogoliubovGround bogoliubov_ground(const std::vector<Momentum>& excitation_modes, const PotentialSpec& potential,
                                   const EigenOptions& options, std::optional<Momentum> K, int start_cutoff,
                                   int max_cutoff, double tol, std::size_t budget) {
  const int dim = excitation_modes.empty() ? potential.dim() : excitation_modes.front().dim();
  K = resolve(std::move(K), dim);
  auto solve = [&](int M) {
    auto basis = FockBasis::excitations(excitation_modes, M, K, budget);
    const auto H = build_bogoliubov_hamiltonian(basis, potential);
    EigenOptions opts = options;
    opts.k = std::min<int>(options.k, static_cast<int>(basis.size()));
    auto result = lowest_eigenpairs(H, opts);
    return std::pair{std::move(basis), std::move(result)};
  };

  int M = std::max(0, start_cutoff);
  auto previous = solve(M);
  while (true) {
    auto next = solve(M + 2);
    const double change = std::abs(next.second.ground_energy() - previous.second.ground_energy());
    const bool done = change < tol;
    if (done || M + 2 >= max_cutoff) {
      BogoliubovGround g{std::move(next.first), std::move(next.second), M + 2, change, done};
      g.converged = done && g.result.converged;
      return g;
    }
    previous = std::move(next);
    M += 2;
  }
}

}  // namespace bogo::fock
