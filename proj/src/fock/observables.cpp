#include "bogo/fock/observables.hpp"

#include <cmath>
#include <stdexcept>

namespace bogo::fock {

namespace {

std::size_t require_mode(const FockBasis& basis, const Momentum& p) {
  const auto k = basis.mode_index(p);
  if (!k) throw std::invalid_argument("mode " + p.to_string() + " is not in the basis");
  return *k;
}

template <typename Weight>
double diagonal_expectation(const FockBasis& basis, std::span<const double> v, Weight weight) {
  double s = 0.0;
  for (std::size_t i = 0; i < basis.size(); ++i) s += v[i] * v[i] * weight(i);
  return s;
}

}  // namespace

double observable_expectation(const FockBasis& basis, std::span<const double> v, const Observable& o) {
  if (v.size() != basis.size()) throw std::invalid_argument("vector does not match basis");
  using namespace observable;
  return std::visit(
      [&](const auto& obs) -> double {
        using T = std::decay_t<decltype(obs)>;
        if constexpr (std::is_same_v<T, ExcitedNumber>) {
          return diagonal_expectation(basis, v, [&](std::size_t i) { return double(basis.excited_count(i)); });
        } else if constexpr (std::is_same_v<T, ExcitedNumberSquared>) {
          return diagonal_expectation(basis, v, [&](std::size_t i) {
            const double n = basis.excited_count(i);
            return n * n;
          });
        } else if constexpr (std::is_same_v<T, TotalMomentum>) {
          if (basis.modes().empty()) return 0.0;
          if (obs.component < 0 || obs.component >= basis.modes().front().dim())
            throw std::invalid_argument("momentum component out of range");
          return diagonal_expectation(basis, v, [&](std::size_t i) {
            return double(basis.total_momentum(i).n[static_cast<std::size_t>(obs.component)]);
          });
        } else if constexpr (std::is_same_v<T, ModeOccupation>) {
          const auto k = require_mode(basis, obs.p);
          return diagonal_expectation(basis, v, [&](std::size_t i) { return double(basis.state(i)[k]); });
        } else {
          const auto a = require_mode(basis, obs.p);
          const auto b = require_mode(basis, -obs.p);
          std::vector<Occupation> work(basis.num_modes());
          double s = 0.0;
          for (std::size_t j = 0; j < basis.size(); ++j) {
            const auto ket = basis.state(j);
            if (ket[a] == 0 || ket[b] == 0 || (a == b && ket[a] < 2)) continue;
            std::copy(ket.begin(), ket.end(), work.begin());
            double amp = std::sqrt(double(work[b]--));
            amp *= std::sqrt(double(work[a]--));
            if (const auto i = basis.find(work)) s += v[*i] * amp * v[j];
          }
          return s;
        }
      },
      o);
}

std::vector<double> excitation_map(const FockBasis& particle_basis, std::span<const double> v,
                                   const FockBasis& excitation_basis) {
  if (v.size() != particle_basis.size()) throw std::invalid_argument("vector does not match basis");
  if (particle_basis.kind() != SectorKind::particles || excitation_basis.kind() != SectorKind::excitations)
    throw std::invalid_argument("excitation map needs a particle basis and an excitation basis");
  if (excitation_basis.particle_bound() < particle_basis.particle_bound())
    throw std::invalid_argument("excitation cutoff below N");
  const auto zero = particle_basis.zero_mode_index();
  if (!zero) throw std::invalid_argument("particle basis has no zero mode");

  // Nonzero modes of the particle basis must line up with the excitation modes.
  std::vector<std::size_t> target_slot(particle_basis.num_modes());
  std::size_t nonzero = 0;
  for (std::size_t i = 0; i < particle_basis.num_modes(); ++i) {
    if (i == *zero) continue;
    const auto k = excitation_basis.mode_index(particle_basis.modes()[i]);
    if (!k) throw std::invalid_argument("excitation basis misses mode " + particle_basis.modes()[i].to_string());
    target_slot[i] = *k;
    ++nonzero;
  }
  if (nonzero != excitation_basis.num_modes()) throw std::invalid_argument("excitation basis has extra modes");

  std::vector<double> out(excitation_basis.size(), 0.0);
  std::vector<Occupation> work(excitation_basis.num_modes());
  for (std::size_t j = 0; j < particle_basis.size(); ++j) {
    const auto ket = particle_basis.state(j);
    for (std::size_t i = 0; i < ket.size(); ++i)
      if (i != *zero) work[target_slot[i]] = ket[i];
    const auto t = excitation_basis.find(work);
    if (!t) throw std::invalid_argument("excitation basis misses an image state (momentum sector mismatch?)");
    out[*t] = v[j];
  }
  return out;
}

std::vector<double> restrict_excitations(const FockBasis& from, std::span<const double> v, const FockBasis& to,
                                         bool renormalize) {
  if (v.size() != from.size()) throw std::invalid_argument("vector does not match basis");
  if (from.modes() != to.modes()) throw std::invalid_argument("bases over different mode sets");
  std::vector<double> out(to.size(), 0.0);
  for (std::size_t j = 0; j < from.size(); ++j)
    if (const auto i = to.find(from.state(j))) out[*i] = v[j];
  if (renormalize) {
    double s = 0.0;
    for (double x : out) s += x * x;
    if (s == 0.0) throw std::invalid_argument("restriction annihilates the vector");
    s = std::sqrt(s);
    for (double& x : out) x /= s;
  }
  return out;
}

}  // namespace bogo::fock
