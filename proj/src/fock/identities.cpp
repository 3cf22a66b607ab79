#include "bogo/fock/identities.hpp"

#include <cmath>

#include "bogo/fock/binding.hpp"
#include "bogo/fock/hamiltonian.hpp"
#include "bogo/fock/observables.hpp"

namespace bogo::fock {

IdentityResiduals operator_identity_residuals(const TorusModel& model, const EigenOptions& options,
                                              std::size_t max_dense) {
  if (model.N < 2) throw std::invalid_argument("operator identities need N >= 2");
  const auto modes = model.modes();
  const auto b2 = FockBasis::particles(modes, model.N - 2, std::nullopt, max_dense);
  const auto b1 = FockBasis::particles(modes, model.N - 1, std::nullopt, max_dense);
  const auto b0 = FockBasis::particles(modes, model.N, std::nullopt, max_dense);
  const auto zero = b0.zero_mode_index();
  if (!zero) throw std::invalid_argument("operator identities need the zero mode");
  const std::size_t z = *zero;

  const Eigen::MatrixXd H0 = build_hamiltonian(model, b0).to_dense();
  const Eigen::MatrixXd H1 = build_hamiltonian(model, b1).to_dense();
  const Eigen::MatrixXd H2 = build_hamiltonian(model, b2).to_dense();
  const Eigen::MatrixXd create_10 = ladder_matrix(b1, b0, z, true);   // (N-1) -> N
  const Eigen::MatrixXd destroy_01 = ladder_matrix(b0, b1, z, false); // N -> (N-1)
  const Eigen::MatrixXd create_21 = ladder_matrix(b2, b1, z, true);   // (N-2) -> (N-1)
  const Eigen::MatrixXd destroy_12 = ladder_matrix(b1, b2, z, false); // (N-1) -> (N-2)

  const Eigen::MatrixXd comm_upper = H0 * create_10 - create_10 * H1;  // [H, a0^*] : N-1 -> N
  const Eigen::MatrixXd comm_lower = H1 * create_21 - create_21 * H2;  // [H, a0^*] : N-2 -> N-1
  const Eigen::MatrixXd a0_comm = destroy_01 * comm_upper;
  const Eigen::MatrixXd lhs = a0_comm - comm_lower * destroy_12;

  const auto n1 = static_cast<Eigen::Index>(b1.size());
  Eigen::VectorXd rhs_diag = Eigen::VectorXd::Zero(n1);
  Eigen::VectorXd pair_diag = Eigen::VectorXd::Zero(n1);
  const double w0 = model.potential.zero_mode();
  for (std::size_t i = 0; i < b1.size(); ++i) {
    const auto occ = b1.state(i);
    double s = w0 * b1.particle_count(i);
    double pair = 0.0;
    for (std::size_t k = 0; k < modes.size(); ++k) {
      const double w = model.potential(modes[k]);
      s += w * occ[k];
      if (k != z) pair += w * occ[k];
    }
    rhs_diag(static_cast<Eigen::Index>(i)) = model.lambda * s;
    pair_diag(static_cast<Eigen::Index>(i)) = 0.5 * model.lambda * pair;
  }

  IdentityResiduals out;
  out.double_commutator = (lhs - Eigen::MatrixXd(rhs_diag.asDiagonal())).norm();
  out.double_commutator_pair_form = (lhs - Eigen::MatrixXd(pair_diag.asDiagonal())).norm();
  out.double_commutator_scale = a0_comm.norm();

  // Excitation-number identity on the interacting ground state.
  const auto ground = solve_sector(model, model.N, options);
  const auto& basis = ground.basis;
  const auto& psi = ground.result.ground_vector;
  const double E = ground.result.ground_energy();
  std::vector<double> n_psi(psi.size()), nn_psi(psi.size());
  for (std::size_t i = 0; i < psi.size(); ++i) {
    const double n = basis.excited_count(i);
    n_psi[i] = n * psi[i];
    nn_psi[i] = n * n * psi[i];
  }
  const auto H_n_psi = ground.hamiltonian.apply(n_psi);
  const auto H_psi = ground.hamiltonian.apply(psi);
  const double n_H_n = dot(n_psi, H_n_psi);
  const double lhs_value = n_H_n - E * dot(n_psi, n_psi);
  const double commutator_value = n_H_n - dot(nn_psi, H_psi);  // <N_+ H N_+> - <N_+ N_+ H>
  out.excitation_identity_lhs = lhs_value;
  out.excitation_identity_scale = n_H_n;
  out.excitation_identity = std::abs(lhs_value - commutator_value) / std::max(std::abs(n_H_n), 1e-300);
  return out;
}

}  // namespace bogo::fock
