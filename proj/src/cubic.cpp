#include <algorithm>
#include <cmath>

#include "nvdressed/eigen.hpp"

namespace nvdressed {

namespace {

// Newton refinement of a simple root of mu^3 + a mu^2 + b mu + c.
double polish(double mu, double a, double b, double c) {
  for (int it = 0; it < 4; ++it) {
    const double f = ((mu + a) * mu + b) * mu + c;
    const double df = (3.0 * mu + 2.0 * a) * mu + b;
    if (df == 0.0) break;
    const double step = f / df;
    mu -= step;
    if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(mu))) break;
  }
  return mu;
}

}  // namespace

// Written in mu = lambda - D:
//   mu^3 + D mu^2 - (B^2 + E^2) mu - (D E^2 - E B^2 cos(2 phi_B + phi_Pi)) = 0.
// One root sits near -D and the other two near 0, so the large root is found
// by the trigonometric method and the small pair from the deflated quadratic.
std::array<double, 3> cubic_eigenvalues_exact(const PhysicalConstants& c,
                                              const FieldConfiguration& f) {
  const double d = c.d_gs;
  const double b = c.gamma_e * f.b_perp();
  const double e = c.d_perp * f.pi_perp();
  const double chi = 2.0 * f.phi_b() + f.phi_pi();

  const double a2 = d;
  const double a1 = -(b * b + e * e);
  const double a0 = -(d * e * e - e * b * b * std::cos(chi));

  const double p = a1 - a2 * a2 / 3.0;
  const double q = 2.0 * a2 * a2 * a2 / 27.0 - a2 * a1 / 3.0 + a0;
  const double m = 2.0 * std::sqrt(-p / 3.0);
  const double arg = std::clamp(3.0 * q / (p * m), -1.0, 1.0);
  const double phi = std::acos(arg) / 3.0;
  double large = m * std::cos(phi - 2.0 * kPi / 3.0) - a2 / 3.0;
  for (int k = 0; k < 3; ++k) {
    const double r = m * std::cos(phi - 2.0 * kPi * k / 3.0) - a2 / 3.0;
    if (r < large) large = r;
  }
  const double mu0 = polish(large, a2, a1, a0);

  // (mu - mu0)(mu^2 + s mu + t)
  const double s = a2 + mu0;
  const double t = -a0 / mu0;
  const double disc = std::max(0.0, s * s - 4.0 * t);
  const double root = std::sqrt(disc);
  const double big = -0.5 * (s + (s >= 0.0 ? root : -root));
  const double mu1 = big;
  const double mu2 = (big != 0.0) ? t / big : 0.0;

  std::array<double, 3> out = {mu0 + d, mu1 + d, mu2 + d};
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace nvdressed
