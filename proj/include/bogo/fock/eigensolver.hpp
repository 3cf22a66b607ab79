#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bogo/fock/sparse_operator.hpp"

namespace bogo::fock {

struct EigenOptions {
  int k = 1;                            // number of lowest eigenvalues
  double tol = 1e-9;                    // residual norm target |Hv - theta v|
  int max_iter = 5000;                  // operator applications
  std::uint64_t seed = 12345;
  std::size_t dense_threshold = 2000;   // dimension at or below which a dense solve is used
  int krylov_dim = 0;                   // 0: max(2k + 20, 40)
  int threads = 1;
  bool force_iterative = false;         // skip the dense fallback (used to cross-check)
};

struct EDResult {
  std::vector<double> eigenvalues;   // ascending, k lowest
  std::vector<double> ground_vector; // unit norm, largest-magnitude entry positive
  double residual_norm = 0.0;        // |H v - E v| of the ground pair, always recomputed
  int iterations = 0;
  bool converged = false;
  std::string method;                // "dense" or "lanczos"
  double gap = 0.0;                  // eigenvalues[1] - eigenvalues[0] when k > 1, else +inf

  double ground_energy() const { return eigenvalues.front(); }
  /// Vector observables need a nondegenerate ground state (gap > 1e-8 when known).
  bool ground_vector_reliable() const { return converged && gap > 1e-8; }
};

/// k lowest eigenpairs of a symmetric operator. Iterative path: thick-restart
/// Lanczos with full reorthogonalization from a start vector that depends only
/// on (seed, dimension).
EDResult lowest_eigenpairs(const SparseOperator& op, const EigenOptions& options = {});

/// Dense Eigen self-adjoint solve; the oracle for the iterative path.
EDResult dense_eigenpairs(const SparseOperator& op, int k);

/// Flips the sign so the largest-magnitude coefficient is positive.
void fix_phase(std::vector<double>& v);

}  // namespace bogo::fock
