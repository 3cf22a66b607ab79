#include "bogo/fock/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>
#include <lapacke.h>

namespace bogo::fock {

namespace {

std::vector<double> start_vector(std::uint64_t seed, std::size_t n, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(n >> 32),
                    static_cast<std::uint32_t>(stream)};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> v(n);
  for (auto& x : v) x = dist(rng);
  return v;
}

double true_residual(const SparseOperator& op, const std::vector<double>& v, double theta, int threads) {
  const auto Av = op.apply(v, threads);
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) s += (Av[i] - theta * v[i]) * (Av[i] - theta * v[i]);
  return std::sqrt(s);
}

void finish(EDResult& r, std::size_t requested) {
  r.gap = r.eigenvalues.size() > 1 ? r.eigenvalues[1] - r.eigenvalues[0] : std::numeric_limits<double>::infinity();
  if (r.eigenvalues.size() > requested) r.eigenvalues.resize(requested);
  fix_phase(r.ground_vector);
}

// Orthogonalizes w against the first `cols` columns of V (classical Gram-Schmidt, twice).
Eigen::VectorXd orthogonalize(const Eigen::MatrixXd& V, Eigen::Index cols, Eigen::Map<Eigen::VectorXd>& w) {
  const auto basis = V.leftCols(cols);
  Eigen::VectorXd h = basis.transpose() * w;
  w.noalias() -= basis * h;
  const Eigen::VectorXd h2 = basis.transpose() * w;
  w.noalias() -= basis * h2;
  return h + h2;
}

}  // namespace

void fix_phase(std::vector<double>& v) {
  if (v.empty()) return;
  std::size_t best = 0;
  for (std::size_t i = 1; i < v.size(); ++i)
    if (std::abs(v[i]) > std::abs(v[best])) best = i;
  if (v[best] < 0.0)
    for (auto& x : v) x = -x;
}

EDResult dense_eigenpairs(const SparseOperator& op, int k) {
  const std::size_t n = op.dimension();
  if (n == 0) throw std::invalid_argument("empty operator");
  const auto kk = static_cast<lapack_int>(std::min<std::size_t>(n, static_cast<std::size_t>(std::max(k, 2))));
  const auto ln = static_cast<lapack_int>(n);
  Eigen::MatrixXd a = op.to_dense();
  std::vector<double> w(n), z(n * static_cast<std::size_t>(kk));
  std::vector<lapack_int> support(2 * n);
  lapack_int found = 0;
  // Index range [1, kk] of the spectrum only (MRRR).
  const lapack_int info = LAPACKE_dsyevr(LAPACK_COL_MAJOR, 'V', 'I', 'L', ln, a.data(), ln, 0.0, 0.0, 1, kk, LAPACKE_dlamch('S'),
                                         &found, w.data(), z.data(), ln, support.data());
  if (info != 0 || found != kk) throw std::runtime_error("dense eigensolver failed (info " + std::to_string(info) + ")");
  EDResult r;
  r.method = "dense";
  r.eigenvalues.assign(w.begin(), w.begin() + kk);
  r.ground_vector.assign(z.begin(), z.begin() + static_cast<std::ptrdiff_t>(n));
  r.residual_norm = true_residual(op, r.ground_vector, r.eigenvalues[0], 1);
  r.converged = true;
  r.iterations = 0;
  finish(r, static_cast<std::size_t>(k));
  return r;
}

EDResult lowest_eigenpairs(const SparseOperator& op, const EigenOptions& options) {
  const std::size_t n = op.dimension();
  if (n == 0) throw std::invalid_argument("empty operator");
  if (options.k < 1) throw std::invalid_argument("k must be positive");
  if (static_cast<std::size_t>(options.k) > n) throw std::invalid_argument("k exceeds the dimension");
  if (!op.symmetric()) throw std::invalid_argument("eigensolver needs a symmetric operator");
  if (!options.force_iterative && n <= options.dense_threshold) return dense_eigenpairs(op, options.k);

  const auto kk = static_cast<Eigen::Index>(std::min<std::size_t>(n, static_cast<std::size_t>(std::max(options.k, 2))));
  const int requested_dim = options.krylov_dim > 0 ? options.krylov_dim : std::max(2 * options.k + 20, 40);
  const auto mmax = static_cast<Eigen::Index>(std::min<std::size_t>(n, static_cast<std::size_t>(std::max<Eigen::Index>(requested_dim, kk + 2))));
  const auto dim = static_cast<Eigen::Index>(n);

  Eigen::MatrixXd V(dim, mmax);
  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(mmax, mmax);
  Eigen::VectorXd residual(dim);
  std::uint64_t stream = 0;

  auto fresh_direction = [&](Eigen::Index cols) {
    // Random vector orthogonal to the current basis (start, or after a breakdown).
    for (int attempt = 0; attempt < 8; ++attempt) {
      auto v = start_vector(options.seed, n, stream++);
      Eigen::Map<Eigen::VectorXd> w(v.data(), dim);
      if (cols > 0) orthogonalize(V, cols, w);
      const double nw = w.norm();
      if (nw > 1e-8) {
        V.col(cols) = w / nw;
        return;
      }
    }
    throw std::runtime_error("could not extend the Krylov basis");
  };

  fresh_direction(0);
  Eigen::Index start = 0;
  int applications = 0;
  EDResult best;
  best.method = "lanczos";
  std::vector<double> w_buffer(n);

  while (true) {
    double beta = 0.0;
    for (Eigen::Index j = start; j < mmax; ++j) {
      op.apply(std::span<const double>(V.col(j).data(), n), w_buffer, options.threads);
      ++applications;
      Eigen::Map<Eigen::VectorXd> w(w_buffer.data(), dim);
      const Eigen::VectorXd h = orthogonalize(V, j + 1, w);
      for (Eigen::Index i = 0; i <= j; ++i) T(i, j) = T(j, i) = h(i);
      beta = w.norm();
      if (j + 1 < mmax) {
        if (beta <= 1e-12 * std::max(1.0, h.cwiseAbs().maxCoeff())) {
          // Invariant subspace found: decouple and continue with a fresh direction.
          beta = 0.0;
          fresh_direction(j + 1);
        } else {
          V.col(j + 1) = w / beta;
        }
      } else {
        residual = w;
      }
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ritz(T);
    const Eigen::VectorXd& theta = ritz.eigenvalues();
    const Eigen::MatrixXd& Y = ritz.eigenvectors();

    bool estimates_ok = true;
    for (Eigen::Index i = 0; i < kk; ++i)
      if (beta * std::abs(Y(mmax - 1, i)) > options.tol) estimates_ok = false;

    const Eigen::VectorXd ground = V * Y.col(0);
    best.eigenvalues.assign(theta.data(), theta.data() + kk);
    best.ground_vector.assign(ground.data(), ground.data() + ground.size());
    best.iterations = applications;
    best.residual_norm = true_residual(op, best.ground_vector, theta(0), options.threads);
    best.converged = estimates_ok && best.residual_norm <= options.tol;

    if (best.converged || applications >= options.max_iter || mmax == dim) {
      if (mmax == dim) best.converged = best.residual_norm <= options.tol;
      break;
    }

    // Thick restart: keep the lowest Ritz vectors, continue from the residual.
    const Eigen::Index keep = std::min<Eigen::Index>(mmax - 1, std::max<Eigen::Index>(kk + 1, (mmax + kk) / 2));
    const Eigen::MatrixXd kept = V * Y.leftCols(keep);
    V.leftCols(keep) = kept;
    T.setZero();
    for (Eigen::Index i = 0; i < keep; ++i) T(i, i) = theta(i);
    if (beta > 1e-14) {
      Eigen::VectorXd next = residual / beta;
      next -= V.leftCols(keep) * (V.leftCols(keep).transpose() * next);
      V.col(keep) = next.normalized();
    } else {
      fresh_direction(keep);
    }
    start = keep;
  }

  finish(best, static_cast<std::size_t>(options.k));
  return best;
}

}  // namespace bogo::fock
