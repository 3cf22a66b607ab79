#pragma once

#include "bogo/fock/eigensolver.hpp"
#include "bogo/model.hpp"

namespace bogo::fock {

struct IdentityResiduals {
  // Frobenius norm, on the (N-1)-particle sector, of
  //   a0 [H, a0^*] - [H, a0^*] a0 - lambda (sum_p w_hat(p) a_p^* a_p + w_hat(0) N_total)
  // with every operator built as an explicit matrix over the truncated mode set.
  double double_commutator = 0.0;
  // Same left side against (lambda/2) sum_{p != 0} w_hat(p) a_p^* a_p, the only
  // number-conserving part of the pair form; nonzero whenever w_hat != 0.
  double double_commutator_pair_form = 0.0;
  double double_commutator_scale = 0.0;  // |a0 [H, a0^*]|_F

  // |<N_+ (H - E) N_+> - <N_+ [H, N_+]>| / |<N_+ H N_+>| in the ground state
  // of the N-particle K = 0 sector; both sides evaluated by direct operator
  // application, without using H Psi = E Psi.
  double excitation_identity = 0.0;
  double excitation_identity_lhs = 0.0;   // <N_+ (H - E) N_+>
  double excitation_identity_scale = 0.0; // <N_+ H N_+>
};

/// Throws ResourceLimit when a sector exceeds max_dense states.
IdentityResiduals operator_identity_residuals(const TorusModel& model, const EigenOptions& options = {},
                                              std::size_t max_dense = 3000);

}  // namespace bogo::fock
