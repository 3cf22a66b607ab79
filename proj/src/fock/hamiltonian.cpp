#include "bogo/fock/hamiltonian.hpp"

#include <cmath>
#include <limits>

namespace bogo::fock {

namespace {

constexpr std::ptrdiff_t absent = -1;

void check_indexable(const FockBasis& basis) {
  if (basis.size() > std::numeric_limits<std::uint32_t>::max())
    throw ResourceLimit("basis too large for 32-bit column indices");
}

}  // namespace

SparseOperator build_hamiltonian(const TorusModel& model, const FockBasis& basis, int threads) {
  if (basis.kind() != SectorKind::particles) throw std::invalid_argument("Hamiltonian needs a particle-sector basis");
  check_indexable(basis);
  const auto& modes = basis.modes();
  const std::size_t m = modes.size();

  struct Transfer {
    double w;
    std::vector<std::ptrdiff_t> minus;  // index of modes[i] - l
    std::vector<std::ptrdiff_t> plus;   // index of modes[i] + l
  };
  std::vector<Transfer> transfers;
  for (const auto& [l, w] : model.potential.coefficients()) {
    if (l.is_zero() || w == 0.0) continue;
    Transfer t{w, std::vector<std::ptrdiff_t>(m, absent), std::vector<std::ptrdiff_t>(m, absent)};
    bool any = false;
    for (std::size_t i = 0; i < m; ++i) {
      if (auto k = basis.mode_index(modes[i] - l)) t.minus[i] = static_cast<std::ptrdiff_t>(*k), any = true;
      if (auto k = basis.mode_index(modes[i] + l)) t.plus[i] = static_cast<std::ptrdiff_t>(*k);
    }
    if (any) transfers.push_back(std::move(t));
  }

  const double N = basis.particle_bound();
  const double constant = model.lambda * model.potential.zero_mode() * N * (N - 1.0) / 2.0;
  const double half_lambda = 0.5 * model.lambda;

  std::vector<SparseOperator::Row> rows(basis.size());
  parallel_blocks(basis.size(), threads, [&](std::size_t begin, std::size_t end) {
    std::vector<Occupation> work(m);
    std::vector<std::size_t> occupied;
    for (std::size_t j = begin; j < end; ++j) {
      auto& row = rows[j];
      const auto ket = basis.state(j);
      row.emplace_back(static_cast<std::uint32_t>(j), basis.kinetic_energy(j) + constant);

      occupied.clear();
      for (std::size_t i = 0; i < m; ++i)
        if (ket[i] != 0) occupied.push_back(i);

      for (std::size_t q : occupied) {
        for (std::size_t p : occupied) {
          if (p == q && ket[p] < 2) continue;
          for (const auto& t : transfers) {
            const auto out_p = t.minus[p];
            const auto out_q = t.plus[q];
            if (out_p == absent || out_q == absent) continue;
            std::copy(ket.begin(), ket.end(), work.begin());
            double amp = std::sqrt(static_cast<double>(work[q]--));
            amp *= std::sqrt(static_cast<double>(work[p]--));
            amp *= std::sqrt(static_cast<double>(++work[static_cast<std::size_t>(out_q)]));
            amp *= std::sqrt(static_cast<double>(++work[static_cast<std::size_t>(out_p)]));
            const auto i = basis.find(work);
            if (!i) continue;  // left the momentum sector; cannot happen for K-restricted bases
            row.emplace_back(static_cast<std::uint32_t>(*i), half_lambda * t.w * amp);
          }
        }
      }
    }
  });
  return SparseOperator::from_rows(std::move(rows), true);
}

SparseOperator build_quadratic_hamiltonian(const FockBasis& basis, std::span<const double> diagonal,
                                           std::span<const double> pairing) {
  if (basis.kind() != SectorKind::excitations)
    throw std::invalid_argument("quadratic Hamiltonian needs an excitation basis");
  check_indexable(basis);
  const auto& modes = basis.modes();
  const std::size_t m = modes.size();
  if (diagonal.size() != m || pairing.size() != m) throw std::invalid_argument("coefficient/mode count mismatch");

  std::vector<std::size_t> partner(m);
  for (std::size_t i = 0; i < m; ++i) {
    const auto k = basis.mode_index(-modes[i]);
    if (!k) throw std::invalid_argument("mode set not closed under negation at " + modes[i].to_string());
    partner[i] = *k;
  }

  const int cutoff = basis.particle_bound();
  std::vector<SparseOperator::Row> rows(basis.size());
  std::vector<Occupation> work(m);
  for (std::size_t j = 0; j < basis.size(); ++j) {
    auto& row = rows[j];
    const auto ket = basis.state(j);
    double diag = 0.0;
    for (std::size_t i = 0; i < m; ++i) diag += diagonal[i] * ket[i];
    row.emplace_back(static_cast<std::uint32_t>(j), diag);
    const int excited = basis.particle_count(j);

    for (std::size_t i = 0; i < m; ++i) {
      const double b = 0.5 * pairing[i];
      if (b == 0.0) continue;
      const std::size_t k = partner[i];
      // a_p^* a_{-p}^*
      if (excited + 2 <= cutoff) {
        std::copy(ket.begin(), ket.end(), work.begin());
        double amp = std::sqrt(static_cast<double>(++work[k]));
        amp *= std::sqrt(static_cast<double>(++work[i]));
        if (auto t = basis.find(work)) row.emplace_back(static_cast<std::uint32_t>(*t), b * amp);
      }
      // a_p a_{-p}
      if (ket[i] > 0 && ket[k] > 0 && (i != k || ket[i] > 1)) {
        std::copy(ket.begin(), ket.end(), work.begin());
        double amp = std::sqrt(static_cast<double>(work[k]--));
        amp *= std::sqrt(static_cast<double>(work[i]--));
        if (auto t = basis.find(work)) row.emplace_back(static_cast<std::uint32_t>(*t), b * amp);
      }
    }
  }
  return SparseOperator::from_rows(std::move(rows), true);
}

SparseOperator build_bogoliubov_hamiltonian(const FockBasis& basis, const PotentialSpec& potential) {
  std::vector<double> diagonal, pairing;
  for (const auto& p : basis.modes()) {
    const double w = potential(p);
    if (w < 0.0) throw std::invalid_argument("negative Fourier coefficient at " + p.to_string());
    diagonal.push_back(p.norm2() + w);
    pairing.push_back(w);
  }
  return build_quadratic_hamiltonian(basis, diagonal, pairing);
}

std::vector<double> apply_ladder(const FockBasis& from, std::span<const double> v, std::size_t mode, bool create,
                                 const FockBasis& to) {
  if (v.size() != from.size()) throw std::invalid_argument("vector does not match basis");
  if (from.modes() != to.modes()) throw std::invalid_argument("ladder operator between different mode sets");
  std::vector<double> out(to.size(), 0.0);
  std::vector<Occupation> work(from.num_modes());
  for (std::size_t j = 0; j < from.size(); ++j) {
    if (v[j] == 0.0) continue;
    const auto ket = from.state(j);
    if (!create && ket[mode] == 0) continue;
    std::copy(ket.begin(), ket.end(), work.begin());
    const double amp = create ? std::sqrt(static_cast<double>(++work[mode]))
                              : std::sqrt(static_cast<double>(work[mode]--));
    const auto i = to.find(work);
    if (!i) throw std::invalid_argument("ladder image leaves the target basis");
    out[*i] += amp * v[j];
  }
  return out;
}

Eigen::MatrixXd ladder_matrix(const FockBasis& from, const FockBasis& to, std::size_t mode, bool create) {
  if (from.modes() != to.modes()) throw std::invalid_argument("ladder operator between different mode sets");
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(to.size()),
                                              static_cast<Eigen::Index>(from.size()));
  std::vector<Occupation> work(from.num_modes());
  for (std::size_t j = 0; j < from.size(); ++j) {
    const auto ket = from.state(j);
    if (!create && ket[mode] == 0) continue;
    std::copy(ket.begin(), ket.end(), work.begin());
    const double amp = create ? std::sqrt(static_cast<double>(++work[mode]))
                              : std::sqrt(static_cast<double>(work[mode]--));
    if (const auto i = to.find(work))
      out(static_cast<Eigen::Index>(*i), static_cast<Eigen::Index>(j)) = amp;
  }
  return out;
}

}  // namespace bogo::fock
