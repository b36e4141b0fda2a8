#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "nvdressed/dynamics.hpp"
#include "nvdressed/errors.hpp"

namespace nvdressed {

DetuningDistribution DetuningDistribution::tabulated(std::vector<double> grid,
                                                     std::vector<double> density) {
  if (grid.size() != density.size() || grid.size() < 2)
    throw std::invalid_argument("tabulated distribution needs matching grids of size >= 2");
  double integral = 0.0;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) throw std::invalid_argument("tabulated grid must ascend");
    integral += 0.5 * (density[i] + density[i - 1]) * (grid[i] - grid[i - 1]);
  }
  for (double p : density)
    if (!(p >= 0.0)) throw std::invalid_argument("tabulated density must be non-negative");
  if (std::abs(integral - 1.0) > 1e-6)
    throw std::invalid_argument("tabulated distribution is not normalized");
  DetuningDistribution d;
  d.kind = Kind::Tabulated;
  d.grid = std::move(grid);
  d.density = std::move(density);
  return d;
}

std::complex<double> DetuningDistribution::characteristic(double tau) const {
  switch (kind) {
    case Kind::Delta:
      return std::polar(1.0, 2.0 * kPi * mean * tau);
    case Kind::Gaussian:
      return std::polar(std::exp(-2.0 * kPi * kPi * sigma * sigma * tau * tau),
                        2.0 * kPi * mean * tau);
    case Kind::Tabulated: {
      std::complex<double> sum = 0.0;
      for (std::size_t i = 1; i < grid.size(); ++i) {
        const auto a = density[i - 1] * std::polar(1.0, 2.0 * kPi * grid[i - 1] * tau);
        const auto b = density[i] * std::polar(1.0, 2.0 * kPi * grid[i] * tau);
        sum += 0.5 * (a + b) * (grid[i] - grid[i - 1]);
      }
      return sum;
    }
  }
  return 0.0;
}

namespace {

double need(const std::optional<double>& v, const char* name) {
  if (!v) throw MissingNoiseParameter(std::string("noise model lacks ") + name);
  return *v;
}

}  // namespace

// Averaging exp(-2 pi^2 g^2 s^2 tau^2) over the ensemble law of s (with
// u = 1/s half-normal) gives exactly exp(-2 pi g s_ens tau).
double ensemble_t2_strong_axial(const NoiseModel& n, const PhysicalConstants& c) {
  return 1.0 / (2.0 * kPi * c.gamma_e * need(n.sigma_b_ens, "sigma_b_ens"));
}

double ensemble_t2_dressed(const NoiseModel& n, const PhysicalConstants& c) {
  return 1.0 / (std::sqrt(2.0) * kPi * c.d_perp * need(n.sigma_pi_xp, "sigma_pi_xp"));
}

std::vector<double> ensemble_decay(const Scenario& s, const NoiseModel& n,
                                   const PhysicalConstants& c,
                                   const DetuningDistribution& dist,
                                   const std::vector<double>& tau) {
  n.validate();
  for (std::size_t i = 1; i < tau.size(); ++i)
    if (!(tau[i] > tau[i - 1])) throw std::invalid_argument("ensemble_decay: grid must ascend");

  double w_sf = 0.0, w_dr = 0.0, t_sf = 1.0, t_dr = 1.0;
  switch (s.kind) {
    case Scenario::Kind::StrongAxial:
      w_sf = 1.0;
      t_sf = ensemble_t2_strong_axial(n, c);
      break;
    case Scenario::Kind::Dressed:
      w_dr = 1.0;
      t_dr = ensemble_t2_dressed(n, c);
      break;
    case Scenario::Kind::Partial:
      w_sf = std::abs(std::cos(s.gamma));
      w_dr = std::sin(s.gamma);
      t_sf = ensemble_t2_strong_axial(n, c);
      t_dr = ensemble_t2_dressed(n, c);
      break;
  }

  std::vector<double> out(tau.size());
  for (std::size_t i = 0; i < tau.size(); ++i) {
    const double t = tau[i];
    const double env = std::exp(-w_sf * t / t_sf - w_dr * (t / t_dr) * (t / t_dr));
    out[i] = env * dist.characteristic(t).real();
  }
  return out;
}

std::vector<double> ensemble_strong_axial_mc(const NoiseModel& n, const PhysicalConstants& c,
                                             const std::vector<double>& tau,
                                             int samples, std::uint64_t seed) {
  const double s_ens = need(n.sigma_b_ens, "sigma_b_ens");
  if (samples < 1) throw std::invalid_argument("need at least one sample");

  // CDF(s) = erfc(s_ens / (s sqrt2)), tabulated on a log grid spanning the
  // bulk and the heavy upper tail.
  const int npts = 4096;
  std::vector<double> s_grid(npts), cdf(npts);
  const double lo = std::log(s_ens / 40.0), hi = std::log(s_ens * 1e5);
  for (int i = 0; i < npts; ++i) {
    s_grid[i] = std::exp(lo + (hi - lo) * i / (npts - 1));
    cdf[i] = std::erfc(s_ens / (s_grid[i] * std::sqrt(2.0)));
  }

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  std::vector<double> acc(tau.size(), 0.0);
  const double k = 2.0 * kPi * kPi * c.gamma_e * c.gamma_e;
  for (int j = 0; j < samples; ++j) {
    const double u = uni(rng);
    const auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
    double s;
    if (it == cdf.begin()) {
      s = s_grid.front();
    } else if (it == cdf.end()) {
      s = s_grid.back();
    } else {
      const std::size_t i = static_cast<std::size_t>(it - cdf.begin());
      const double f = (u - cdf[i - 1]) / (cdf[i] - cdf[i - 1]);
      s = s_grid[i - 1] + f * (s_grid[i] - s_grid[i - 1]);
    }
    for (std::size_t i = 0; i < tau.size(); ++i) acc[i] += std::exp(-k * s * s * tau[i] * tau[i]);
  }
  for (double& a : acc) a /= samples;
  return acc;
}

}  // namespace nvdressed
