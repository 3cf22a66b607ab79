#pragma once

#include <optional>
#include <vector>

#include "bogo/fock/basis.hpp"
#include "bogo/fock/eigensolver.hpp"
#include "bogo/fock/sparse_operator.hpp"
#include "bogo/model.hpp"

namespace bogo::fock {

/// Ground state of one particle-number sector.
struct SectorSolve {
  FockBasis basis;
  SparseOperator hamiltonian;
  EDResult result;
};

/// Lowest eigenpairs of the model's Hamiltonian with N particles in the total
/// momentum sector K (default K = 0; std::nullopt means unrestricted).
SectorSolve solve_sector(const TorusModel& model, int N, const EigenOptions& options,
                         std::optional<Momentum> K = Momentum{}, std::size_t budget = default_basis_budget);

struct BindingOptions {
  EigenOptions eigen;
  std::size_t budget = default_basis_budget;
  bool check_k0_global = true;
};

struct BindingResult {
  int N = 0;
  double E_N = 0.0;
  double E_Nm1 = 0.0;
  double delta_E = 0.0;
  // Rayleigh-quotient bracket lower <= delta_E <= upper:
  //   lower = <Psi_N, [H, a0^*] a0 Psi_N> / |a0 Psi_N|^2
  //   upper = <Psi_{N-1}, a0 [H, a0^*] Psi_{N-1}> / |a0^* Psi_{N-1}|^2
  double lower_bound = 0.0;
  double upper_bound = 0.0;
  double a0_norm_sq = 0.0;       // |a0 Psi_N|^2
  double a0dag_norm_sq = 0.0;    // |a0^* Psi_{N-1}|^2
  double excited_N = 0.0;        // <N_+> in Psi_N
  double excited_sq_N = 0.0;     // <N_+^2> in Psi_N
  double excited_Nm1 = 0.0;
  double residual_N = 0.0;
  double residual_Nm1 = 0.0;
  int iterations = 0;
  std::size_t dim_N = 0;
  std::size_t dim_Nm1 = 0;
  bool converged = false;
  bool ground_vector_reliable = false;
  bool k0_checked = false;       // every K != 0 sector either excluded by the kinetic bound or solved
  bool k0_is_global = true;
  std::vector<double> ground_N;  // coefficients over the K = 0 basis of N particles
};

/// E(lambda, N) - E(lambda, N-1) from ground states in the K = 0 sectors.
BindingResult binding_from_ed(const TorusModel& model, const BindingOptions& options = {});

/// Certified lower bound on H in sector K: min kinetic energy minus
/// (lambda/2) N sum_{l != 0} w_hat(l), plus the zero-mode constant.
double sector_energy_floor(const TorusModel& model, int N, double min_kinetic);

/// Ground state of H_B on the nonzero modes, raising the excitation cutoff in
/// steps of 2 until successive ground energies differ by less than `tol`.
struct BogoliubovGround {
  FockBasis basis;
  EDResult result;
  int cutoff = 0;
  double last_change = 0.0;
  bool converged = false;
};

BogoliubovGround bogoliubov_ground(const std::vector<Momentum>& excitation_modes, const PotentialSpec& potential,
                                   const EigenOptions& options, std::optional<Momentum> K = Momentum{},
                                   int start_cutoff = 4, int max_cutoff = 400, double tol = 1e-10,
                                   std::size_t budget = default_basis_budget);

}  // namespace bogo::fock
