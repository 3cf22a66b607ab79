#pragma once

#include <span>
#include <variant>
#include <vector>

#include "bogo/fock/basis.hpp"

namespace bogo::fock {

namespace observable {
struct ExcitedNumber {};         // N_+ = sum_{p != 0} a_p^* a_p
struct ExcitedNumberSquared {};  // N_+^2
struct TotalMomentum {           // component of sum_p p a_p^* a_p, in units of 2 pi
  int component = 0;
};
struct ModeOccupation {          // a_p^* a_p
  Momentum p;
};
struct Pairing {                 // a_p a_{-p}
  Momentum p;
};
}  // namespace observable

using Observable = std::variant<observable::ExcitedNumber, observable::ExcitedNumberSquared,
                                observable::TotalMomentum, observable::ModeOccupation, observable::Pairing>;

/// <v, O v> for a real coefficient vector over `basis`. Throws when v does not
/// match the basis or the observable names a mode outside it.
double observable_expectation(const FockBasis& basis, std::span<const double> v, const Observable& o);

/// U_N: re-indexes an N-particle vector onto the excitation basis by stripping
/// the condensate quanta; the coefficient of |N - n, n_{p != 0}> moves to
/// |n_{p != 0}> unchanged. The target must be an excitation basis over the
/// nonzero modes with cutoff >= N and the same momentum sector.
std::vector<double> excitation_map(const FockBasis& particle_basis, std::span<const double> v,
                                   const FockBasis& excitation_basis);

/// Restriction of an excitation-space vector to a smaller cutoff (and/or
/// momentum sector), optionally renormalized.
std::vector<double> restrict_excitations(const FockBasis& from, std::span<const double> v, const FockBasis& to,
                                         bool renormalize);

}  // namespace bogo::fock
