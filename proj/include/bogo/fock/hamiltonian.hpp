#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "bogo/fock/basis.hpp"
#include "bogo/fock/sparse_operator.hpp"
#include "bogo/model.hpp"

namespace bogo::fock {

/// Truncated second-quantized Hamiltonian on a particle-sector basis:
///   sum_p |p|^2 a_p^* a_p + (lambda/2) sum_{l != 0} sum_{p,q} w_hat(l) a^*_{p-l} a^*_{q+l} a_p a_q
///   + lambda w_hat(0) N(N-1)/2,
/// with p, q, p-l, q+l all in the basis mode set.
SparseOperator build_hamiltonian(const TorusModel& model, const FockBasis& basis, int threads = 1);

/// sum_p diagonal[p] a_p^* a_p + (1/2) sum_p pairing[p] (a_p^* a_{-p}^* + a_p a_{-p})
/// on an excitation basis. Pair creations leaving the basis are dropped.
SparseOperator build_quadratic_hamiltonian(const FockBasis& basis, std::span<const double> diagonal,
                                           std::span<const double> pairing);

/// H_B = sum_{p != 0} [(|p|^2 + w_hat(p)) a_p^* a_p + (1/2) w_hat(p) (a_p^* a_{-p}^* + a_p a_{-p})]
SparseOperator build_bogoliubov_hamiltonian(const FockBasis& basis, const PotentialSpec& potential);

/// a_mode v (or a_mode^* v) expressed in `to`; images outside `to` are an error.
std::vector<double> apply_ladder(const FockBasis& from, std::span<const double> v, std::size_t mode, bool create,
                                 const FockBasis& to);

/// Dense matrix of a_mode (or a_mode^*) from `from` into `to`; images outside `to` are dropped.
Eigen::MatrixXd ladder_matrix(const FockBasis& from, const FockBasis& to, std::size_t mode, bool create);

}  // namespace bogo::fock
