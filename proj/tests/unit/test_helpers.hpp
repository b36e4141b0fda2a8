#pragma once

#include <random>

#include "nvdressed/spin_core.hpp"

namespace testing {

// Random transverse configuration with B_perp <= zeta_max * D / gamma_e.
inline nvdressed::FieldConfiguration random_transverse(std::mt19937_64& rng,
                                                       const nvdressed::PhysicalConstants& c,
                                                       double zeta_max) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double b = zeta_max * c.d_gs / c.gamma_e * u(rng);
  const double pb = 2.0 * nvdressed::kPi * u(rng);
  const double pi = 3.0e5 * u(rng);
  const double pp = 2.0 * nvdressed::kPi * u(rng);
  nvdressed::FieldConfiguration f;
  f.b_x = b * std::cos(pb);
  f.b_y = b * std::sin(pb);
  f.pi_x = pi * std::cos(pp);
  f.pi_y = pi * std::sin(pp);
  return f;
}

}  // namespace testing
