#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "bogo/model.hpp"

namespace bogo::fock {

using Occupation = std::uint16_t;

inline constexpr std::size_t default_basis_budget = 20'000'000;

/// Binomial coefficient, saturating at UINT64_MAX.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// Per total-momentum statistics of the exact N-particle sector.
struct SectorInfo {
  std::uint64_t count = 0;
  double min_kinetic = 0.0;  // min over states of sum |p|^2 n_p
};

std::map<Momentum, SectorInfo> sector_census(const std::vector<Momentum>& modes, int N);

enum class SectorKind {
  particles,    // sum of counts == N
  excitations,  // sum of counts <= M (modes exclude p = 0)
};

/// Enumerated occupation-number states of one sector, in lexicographic order
/// of the count vectors, with a hash index back to positions.
class FockBasis {
 public:
  static FockBasis particles(std::vector<Momentum> modes, int N, std::optional<Momentum> K = std::nullopt,
                             std::size_t budget = default_basis_budget);
  static FockBasis excitations(std::vector<Momentum> modes, int max_excitations,
                               std::optional<Momentum> K = std::nullopt,
                               std::size_t budget = default_basis_budget);

  SectorKind kind() const { return kind_; }
  /// N for particle sectors, the excitation cutoff M otherwise.
  int particle_bound() const { return bound_; }
  const std::optional<Momentum>& momentum_sector() const { return momentum_; }

  std::size_t size() const { return size_; }
  std::size_t num_modes() const { return num_modes_; }
  const std::vector<Momentum>& modes() const { return modes_; }
  std::optional<std::size_t> mode_index(const Momentum& p) const;
  std::optional<std::size_t> zero_mode_index() const;

  std::span<const Occupation> state(std::size_t i) const {
    return {storage_.data() + i * num_modes_, num_modes_};
  }
  std::optional<std::size_t> find(std::span<const Occupation> occupation) const;

  int particle_count(std::size_t i) const;
  Momentum total_momentum(std::size_t i) const;
  /// sum_p |p|^2 n_p
  double kinetic_energy(std::size_t i) const;
  /// Occupation of nonzero modes only.
  int excited_count(std::size_t i) const;

  /// Same modes, sector and momentum restriction.
  bool compatible(const FockBasis& other) const;

 private:
  struct SpanHash {
    using is_transparent = void;
    std::size_t operator()(std::span<const Occupation> s) const noexcept;
    std::size_t operator()(const std::vector<Occupation>& v) const noexcept {
      return (*this)(std::span<const Occupation>(v));
    }
  };
  struct SpanEqual {
    using is_transparent = void;
    bool operator()(std::span<const Occupation> a, std::span<const Occupation> b) const noexcept {
      return std::equal(a.begin(), a.end(), b.begin(), b.end());
    }
  };

  FockBasis(std::vector<Momentum> modes, SectorKind kind, int bound, std::optional<Momentum> K,
            std::size_t budget);
  void enumerate();

  std::vector<Momentum> modes_;
  std::unordered_map<Momentum, std::size_t, MomentumHash> mode_pos_;
  SectorKind kind_;
  int bound_;
  std::optional<Momentum> momentum_;
  std::size_t num_modes_;
  std::vector<Occupation> storage_;
  std::size_t size_ = 0;
  std::unordered_map<std::vector<Occupation>, std::size_t, SpanHash, SpanEqual> index_;
};

}  // namespace bogo::fock
