#include <cmath>
#include <limits>

#include "nvdressed/eigen.hpp"
#include "nvdressed/errors.hpp"

namespace nvdressed {

PerturbationParams PerturbationParams::from(const PhysicalConstants& c,
                                            const FieldConfiguration& f) {
  PerturbationParams p;
  p.d_gs = c.d_gs;
  p.b_perp_script = c.gamma_e * f.b_perp();
  p.b_par_script = c.gamma_e * f.b_par;
  p.e_script = c.d_perp * f.pi_perp();
  p.zeta = p.b_perp_script / c.d_gs;
  p.r = p.b_perp_script > 0.0
            ? p.e_script * c.d_gs / (p.b_perp_script * p.b_perp_script)
            : std::numeric_limits<double>::infinity();
  return p;
}

namespace {

void check_range(const PerturbationParams& p) {
  if (!(p.zeta < 0.2))
    throw SeriesOutOfRange("perturbative series needs zeta < 0.2");
}

}  // namespace

PerturbativeSpectrum perturbative_spectrum(const PerturbationParams& p,
                                           double phi_b, double phi_pi) {
  check_range(p);
  const double d = p.d_gs;
  const double b2 = p.b_perp_script * p.b_perp_script;
  const double e = p.e_script;
  const double half = b2 / (2.0 * d);

  PerturbativeSpectrum s;
  s.e0 = -b2 / d;
  const double root = std::sqrt(std::max(
      0.0, half * half + e * e - e * (b2 / d) * std::cos(2.0 * phi_b + phi_pi)));
  s.e_minus = d + half - root;
  s.e_plus = d + half + root;
  s.e_gap = 2.0 * root;

  // 1/2 arg(e^{2i phi_B} - 2R e^{-i phi_Pi}), scaled by B^2/2D so that B = 0
  // stays finite.
  const cplx z = half * std::polar(1.0, 2.0 * phi_b) - e * std::polar(1.0, -phi_pi);
  double arg = std::arg(z);
  if (arg <= -kPi) arg += 2.0 * kPi;
  s.theta = 0.5 * arg;
  return s;
}

Vector3c dressed_minus(double theta) {
  const double r = 1.0 / std::sqrt(2.0);
  return Vector3c(r * std::polar(1.0, -theta), 0.0, -r * std::polar(1.0, theta));
}

Vector3c dressed_plus(double theta) {
  const double r = 1.0 / std::sqrt(2.0);
  return Vector3c(r * std::polar(1.0, -theta), 0.0, r * std::polar(1.0, theta));
}

std::array<Vector3c, 3> perturbative_eigenvectors(const PerturbationParams& p,
                                                  double phi_b, double phi_pi) {
  const PerturbativeSpectrum s = perturbative_spectrum(p, phi_b, phi_pi);
  const double alpha = phi_b - s.theta;
  const double z = p.zeta;
  const cplx i(0.0, 1.0);
  const Vector3c zero(0.0, 1.0, 0.0);
  const Vector3c minus = dressed_minus(s.theta);
  const Vector3c plus = dressed_plus(s.theta);

  // First-order admixtures: <+|H|0> = B cos(alpha), <-|H|0> = -i B sin(alpha).
  std::array<Vector3c, 3> out = {
      zero - z * std::cos(alpha) * plus + i * z * std::sin(alpha) * minus,
      minus + i * z * std::sin(alpha) * zero,
      plus + z * std::cos(alpha) * zero,
  };
  for (auto& v : out) {
    v.normalize();
    VectorXc tmp = v;
    fix_phase(tmp);
    v = tmp;
  }
  return out;
}

}  // namespace nvdressed
