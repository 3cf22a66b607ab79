#pragma once

#include <cmath>

#include "bogo/model.hpp"

namespace fixtures {

// d = 1, modes {0, +-2pi}, w_hat(+-2pi) = w.
inline bogo::TorusModel one_pair(int N = 2, double lambda = 1.0, double w = 1.0) {
  bogo::TorusModel m;
  m.d = 1;
  m.N = N;
  m.lambda = lambda;
  m.mode_cutoff = bogo::two_pi * 1.001;
  m.potential = bogo::PotentialSpec::pair(bogo::Momentum{1}, w);
  return m;
}

// d = 1, modes {0, +-2pi, +-4pi}, w_hat = 1 on the four nonzero modes.
inline bogo::TorusModel band(int N = 4, double lambda = 0.25) {
  bogo::TorusModel m;
  m.d = 1;
  m.N = N;
  m.lambda = lambda;
  m.mode_cutoff = 2.0 * bogo::two_pi * 1.001;
  m.potential = bogo::PotentialSpec::band(1, m.mode_cutoff, 1.0);
  return m;
}

// w_hat supported at p = 0 only.
inline bogo::TorusModel zero_mode_only(int N, double lambda, double w0, double cutoff = 2.0 * bogo::two_pi * 1.001) {
  bogo::TorusModel m;
  m.d = 1;
  m.N = N;
  m.lambda = lambda;
  m.mode_cutoff = cutoff;
  m.potential = bogo::PotentialSpec(1, {{bogo::Momentum{0}, w0}});
  return m;
}

inline bool rel_close(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b));
}

}  // namespace fixtures
