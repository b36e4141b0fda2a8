#include <cmath>
#include <limits>
#include <stdexcept>

#include "nvdressed/dynamics.hpp"
#include "nvdressed/errors.hpp"

namespace nvdressed {

void NoiseModel::validate() const {
  for (const auto& v : {sigma_b_z, sigma_b_x, sigma_b_y, sigma_pi_xp, sigma_pi_yp, sigma_b_ens})
    if (v && !(*v >= 0.0)) throw std::invalid_argument("noise amplitudes must be non-negative");
  for (const auto& v : {tau_c_b, tau_c_pi})
    if (v && !(*v > 0.0)) throw std::invalid_argument("correlation times must be positive");
}

const char* to_string(Scenario::Kind k) {
  switch (k) {
    case Scenario::Kind::Dressed: return "dressed";
    case Scenario::Kind::StrongAxial: return "strong-axial";
    case Scenario::Kind::Partial: return "partial";
  }
  return "unknown";
}

namespace {

double need(const std::optional<double>& v, const char* name) {
  if (!v) throw MissingNoiseParameter(std::string("noise model lacks ") + name);
  return *v;
}

double from_rate(double rate_sq) {
  if (!(rate_sq > 0.0)) return std::numeric_limits<double>::infinity();
  return 1.0 / (std::sqrt(2.0) * kPi * std::sqrt(rate_sq));
}

}  // namespace

double predict_t2(const Scenario& s, const NoiseModel& n, const PhysicalConstants& c,
                  double e_gap) {
  n.validate();
  const double g = c.gamma_e;
  const double d = c.d_perp;
  switch (s.kind) {
    case Scenario::Kind::Dressed: {
      const double spx = need(n.sigma_pi_xp, "sigma_pi_xp");
      const double sbz = need(n.sigma_b_z, "sigma_b_z");
      if (!(e_gap > 0.0)) throw std::invalid_argument("dressed T2 needs E_gap > 0");
      const double mag = g * g * sbz * sbz / e_gap;
      return from_rate(d * d * spx * spx + mag * mag);
    }
    case Scenario::Kind::StrongAxial: {
      const double sbz = need(n.sigma_b_z, "sigma_b_z");
      const double spx = need(n.sigma_pi_xp, "sigma_pi_xp");
      const double spy = need(n.sigma_pi_yp, "sigma_pi_yp");
      double quartic = 0.0;
      if (spx > 0.0 || spy > 0.0) {
        const double denom = 2.0 * g * s.b_par_mT;
        if (denom == 0.0)
          throw std::invalid_argument("strong-axial T2 with electric noise needs B_par != 0");
        const double d4 = d * d * d * d;
        quartic = d4 * (std::pow(spx, 4) + std::pow(spy, 4)) / (denom * denom);
      }
      return from_rate(g * g * sbz * sbz + quartic);
    }
    case Scenario::Kind::Partial: {
      const double sbz = need(n.sigma_b_z, "sigma_b_z");
      const double spy = need(n.sigma_pi_yp, "sigma_pi_yp");
      if (!(s.gamma > 0.0 && s.gamma < kPi))
        throw std::invalid_argument("partial scenario needs gamma in (0, pi)");
      return from_rate(g * g * sbz * sbz * std::abs(std::cos(s.gamma)) +
                       d * d * spy * spy * std::sin(s.gamma));
    }
  }
  throw std::invalid_argument("unknown scenario");
}

}  // namespace nvdressed
