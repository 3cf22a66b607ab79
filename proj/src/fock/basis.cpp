#include "bogo/fock/basis.hpp"

#include <algorithm>
#include <limits>

namespace bogo::fock {

namespace {

constexpr std::uint64_t saturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t add_sat(std::uint64_t a, std::uint64_t b) { return a > saturated - b ? saturated : a + b; }

Momentum scaled(const Momentum& p, int c) {
  Momentum r(p);
  for (int& x : r.n) x *= c;
  return r;
}

// table[Q][n]: number of ways modes[i..] carry exactly n particles with total momentum Q.
using CountTable = std::map<Momentum, std::vector<std::uint64_t>>;

std::vector<CountTable> suffix_counts(const std::vector<Momentum>& modes, int dim, int bound) {
  const std::size_t m = modes.size();
  const auto width = static_cast<std::size_t>(bound) + 1;
  std::vector<CountTable> suffix(m + 1);
  suffix[m][Momentum::zero(dim)] = [&] {
    std::vector<std::uint64_t> v(width, 0);
    v[0] = 1;
    return v;
  }();
  for (std::size_t i = m; i-- > 0;) {
    auto& out = suffix[i];
    for (const auto& [Q, counts] : suffix[i + 1]) {
      for (int c = 0; c <= bound; ++c) {
        auto& slot = out[Q + scaled(modes[i], c)];
        if (slot.empty()) slot.assign(width, 0);
        for (std::size_t n = 0; n + static_cast<std::size_t>(c) < width; ++n)
          if (counts[n] != 0) slot[n + static_cast<std::size_t>(c)] = add_sat(slot[n + static_cast<std::size_t>(c)], counts[n]);
      }
    }
  }
  return suffix;
}

}  // namespace

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > saturated) return saturated;
  }
  return static_cast<std::uint64_t>(r);
}

std::map<Momentum, SectorInfo> sector_census(const std::vector<Momentum>& modes, int N) {
  if (modes.empty()) throw std::invalid_argument("empty mode set");
  if (N < 0) throw std::invalid_argument("negative particle number");
  const int dim = modes.front().dim();
  // layer[n][Q] over the modes processed so far
  std::vector<std::map<Momentum, SectorInfo>> layer(static_cast<std::size_t>(N) + 1);
  layer[0][Momentum::zero(dim)] = {1, 0.0};
  for (const auto& p : modes) {
    std::vector<std::map<Momentum, SectorInfo>> next(layer.size());
    const double p2 = p.norm2();
    for (int n = 0; n <= N; ++n) {
      for (const auto& [Q, info] : layer[static_cast<std::size_t>(n)]) {
        for (int c = 0; n + c <= N; ++c) {
          auto [it, fresh] = next[static_cast<std::size_t>(n + c)].try_emplace(
              Q + scaled(p, c), SectorInfo{0, std::numeric_limits<double>::infinity()});
          it->second.count = add_sat(it->second.count, info.count);
          it->second.min_kinetic = std::min(it->second.min_kinetic, info.min_kinetic + c * p2);
        }
      }
    }
    layer = std::move(next);
  }
  return std::move(layer.back());
}

// ------------------------------------------------------------ FockBasis

FockBasis::FockBasis(std::vector<Momentum> modes, SectorKind kind, int bound, std::optional<Momentum> K,
                     std::size_t budget)
    : modes_(std::move(modes)), kind_(kind), bound_(bound), momentum_(std::move(K)), num_modes_(modes_.size()) {
  if (bound_ < 0) throw std::invalid_argument("negative particle bound");
  if (bound_ > std::numeric_limits<Occupation>::max()) throw ResourceLimit("particle bound exceeds occupation width");
  if (modes_.empty() && kind_ == SectorKind::particles) throw std::invalid_argument("empty mode set");
  for (std::size_t i = 0; i < modes_.size(); ++i) {
    if (!mode_pos_.emplace(modes_[i], i).second) throw std::invalid_argument("duplicate mode " + modes_[i].to_string());
    if (kind_ == SectorKind::excitations && modes_[i].is_zero())
      throw std::invalid_argument("excitation basis must not contain the zero mode");
  }

  std::uint64_t count = 0;
  if (!momentum_) {
    const auto m = static_cast<std::uint64_t>(num_modes_);
    const auto b = static_cast<std::uint64_t>(bound_);
    count = kind_ == SectorKind::particles ? binomial(b + m - 1, m - 1) : binomial(b + m, m);
  } else if (!modes_.empty()) {
    const auto table = suffix_counts(modes_, momentum_->dim(), bound_);
    const auto it = table.front().find(*momentum_);
    if (it != table.front().end()) {
      if (kind_ == SectorKind::particles)
        count = it->second[static_cast<std::size_t>(bound_)];
      else
        for (auto c : it->second) count = add_sat(count, c);
    }
  } else {
    count = momentum_->is_zero() ? 1 : 0;
  }
  if (count > budget)
    throw ResourceLimit("basis of " + std::to_string(count) + " states exceeds budget " + std::to_string(budget));
  storage_.reserve(static_cast<std::size_t>(count) * num_modes_);
  index_.reserve(static_cast<std::size_t>(count));
  enumerate();
}

FockBasis FockBasis::particles(std::vector<Momentum> modes, int N, std::optional<Momentum> K, std::size_t budget) {
  return FockBasis(std::move(modes), SectorKind::particles, N, std::move(K), budget);
}

FockBasis FockBasis::excitations(std::vector<Momentum> modes, int max_excitations, std::optional<Momentum> K,
                                 std::size_t budget) {
  return FockBasis(std::move(modes), SectorKind::excitations, max_excitations, std::move(K), budget);
}

void FockBasis::enumerate() {
  const bool exact = kind_ == SectorKind::particles;
  const std::size_t m = num_modes_;
  std::vector<CountTable> suffix;
  if (momentum_ && m > 0) suffix = suffix_counts(modes_, momentum_->dim(), bound_);

  // Can modes[i..] move the running momentum P to the target with `remaining` particles?
  auto feasible = [&](std::size_t i, int remaining, const Momentum& P) {
    if (!momentum_) return true;
    const auto it = suffix[i].find(*momentum_ - P);
    if (it == suffix[i].end()) return false;
    if (exact) return it->second[static_cast<std::size_t>(remaining)] != 0;
    for (int n = 0; n <= remaining; ++n)
      if (it->second[static_cast<std::size_t>(n)] != 0) return true;
    return false;
  };

  std::vector<Occupation> current(m, 0);
  auto push = [&] {
    index_.emplace(current, size_++);
    storage_.insert(storage_.end(), current.begin(), current.end());
  };

  if (m == 0) {
    if (!momentum_ || momentum_->is_zero()) push();
    return;
  }

  const int dim = modes_.front().dim();
  auto recurse = [&](auto&& self, std::size_t i, int remaining, const Momentum& P) -> void {
    if (i + 1 == m && exact) {
      current[i] = static_cast<Occupation>(remaining);
      if (!momentum_ || P + scaled(modes_[i], remaining) == *momentum_) push();
      return;
    }
    for (int c = 0; c <= remaining; ++c) {
      current[i] = static_cast<Occupation>(c);
      const Momentum next = P + scaled(modes_[i], c);
      if (i + 1 == m) {
        if (!momentum_ || next == *momentum_) push();
      } else if (feasible(i + 1, remaining - c, next)) {
        self(self, i + 1, remaining - c, next);
      }
    }
    current[i] = 0;
  };
  if (feasible(0, bound_, Momentum::zero(dim))) recurse(recurse, 0, bound_, Momentum::zero(dim));
}

std::size_t FockBasis::SpanHash::operator()(std::span<const Occupation> s) const noexcept {
  std::uint64_t h = 1469598103934665603ULL;
  for (Occupation c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(h ^ (h >> 29));
}

std::optional<std::size_t> FockBasis::mode_index(const Momentum& p) const {
  const auto it = mode_pos_.find(p);
  if (it == mode_pos_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> FockBasis::zero_mode_index() const {
  if (modes_.empty()) return std::nullopt;
  return mode_index(Momentum::zero(modes_.front().dim()));
}

std::optional<std::size_t> FockBasis::find(std::span<const Occupation> occupation) const {
  const auto it = index_.find(occupation);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

int FockBasis::particle_count(std::size_t i) const {
  int s = 0;
  for (Occupation c : state(i)) s += c;
  return s;
}

Momentum FockBasis::total_momentum(std::size_t i) const {
  Momentum K = modes_.empty() ? Momentum{} : Momentum::zero(modes_.front().dim());
  const auto occ = state(i);
  for (std::size_t j = 0; j < num_modes_; ++j)
    if (occ[j] != 0) K += scaled(modes_[j], occ[j]);
  return K;
}

double FockBasis::kinetic_energy(std::size_t i) const {
  double e = 0.0;
  const auto occ = state(i);
  for (std::size_t j = 0; j < num_modes_; ++j) e += modes_[j].norm2() * occ[j];
  return e;
}

int FockBasis::excited_count(std::size_t i) const {
  const auto zero = zero_mode_index();
  int s = particle_count(i);
  if (zero) s -= state(i)[*zero];
  return s;
}

bool FockBasis::compatible(const FockBasis& other) const {
  return modes_ == other.modes_ && kind_ == other.kind_ && bound_ == other.bound_ && momentum_ == other.momentum_;
}

}  // namespace bogo::fock
