#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "nvdressed/dynamics.hpp"
#include "nvdressed/errors.hpp"
#include "nvdressed/parallel.hpp"

namespace nvdressed {

namespace {

// Exact discretization of an OU process with stationary deviation sigma.
struct OrnsteinUhlenbeck {
  double sigma = 0.0;
  double decay = 1.0;  // exp(-dt/tau_c)
  double kick = 0.0;   // sigma sqrt(1 - decay^2)
  double x = 0.0;

  void configure(double s, double tau_c, double dt) {
    sigma = s;
    if (s == 0.0) return;
    decay = std::exp(-dt / tau_c);
    kick = s * std::sqrt(std::max(0.0, 1.0 - decay * decay));
  }
  template <class Rng>
  void start(Rng& rng, std::normal_distribution<double>& normal) {
    x = sigma == 0.0 ? 0.0 : sigma * normal(rng);
  }
  template <class Rng>
  void step(Rng& rng, std::normal_distribution<double>& normal) {
    if (sigma == 0.0) return;
    x = x * decay + kick * normal(rng);
  }
};

struct FrequencyMap {
  Scenario s;
  double g = 0.0, d = 0.0, e_gap = 0.0;

  // Frequency fluctuation (MHz) for dB_z (mT), dPi_x', dPi_y' (V/cm).
  double operator()(double bz, double px, double py) const {
    switch (s.kind) {
      case Scenario::Kind::Dressed: {
        const double m = g * bz;
        return d * px + m * m / e_gap;
      }
      case Scenario::Kind::StrongAxial:
        return g * bz + d * d * (px * px + py * py) / (2.0 * g * s.b_par_mT);
      case Scenario::Kind::Partial:
        return -g * bz * std::cos(s.gamma) - d * py * std::sin(s.gamma);
    }
    return 0.0;
  }
};

}  // namespace

std::vector<double> mc_dephasing_oracle(const Scenario& s, const NoiseModel& n,
                                        const PhysicalConstants& c, double e_gap,
                                        const std::vector<double>& tau,
                                        const OracleOptions& opt) {
  if (opt.trials < kMinOracleTrials)
    throw InsufficientTrials("mc_dephasing_oracle needs at least 1000 trials");
  n.validate();
  if (tau.empty()) throw std::invalid_argument("mc_dephasing_oracle: empty grid");
  if (!(tau.front() >= 0.0)) throw std::invalid_argument("mc_dephasing_oracle: negative time");
  double min_step = tau.front() > 0.0 ? tau.front() : std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < tau.size(); ++i) {
    if (!(tau[i] > tau[i - 1])) throw std::invalid_argument("mc_dephasing_oracle: grid must ascend");
    min_step = std::min(min_step, tau[i] - tau[i - 1]);
  }
  if (s.kind == Scenario::Kind::Dressed && !(e_gap > 0.0))
    throw std::invalid_argument("dressed oracle needs E_gap > 0");
  if (s.kind == Scenario::Kind::StrongAxial && s.b_par_mT == 0.0)
    throw std::invalid_argument("strong-axial oracle needs B_par != 0");

  const double sbz = n.sigma_b_z.value_or(0.0);
  const double spx = n.sigma_pi_xp.value_or(0.0);
  const double spy = n.sigma_pi_yp.value_or(0.0);
  if (sbz > 0.0 && !n.tau_c_b) throw MissingNoiseParameter("noise model lacks tau_c_b");
  if ((spx > 0.0 || spy > 0.0) && !n.tau_c_pi)
    throw MissingNoiseParameter("noise model lacks tau_c_pi");
  const double h = min_step / 10.0;

  // Sub-steps per grid interval (the first interval starts at t = 0).
  std::vector<int> substeps(tau.size());
  std::vector<double> widths(tau.size());
  for (std::size_t i = 0; i < tau.size(); ++i) {
    const double span = tau[i] - (i == 0 ? 0.0 : tau[i - 1]);
    substeps[i] = span > 0.0 ? std::max(1, static_cast<int>(std::ceil(span / h - 1e-9))) : 0;
    widths[i] = substeps[i] > 0 ? span / substeps[i] : 0.0;
  }

  const FrequencyMap freq{s, c.gamma_e, c.d_perp, e_gap};
  const int blocks = (opt.trials + kOracleBlock - 1) / kOracleBlock;
  std::vector<std::vector<double>> block_sums(blocks, std::vector<double>(tau.size(), 0.0));

  parallel_for(static_cast<std::size_t>(blocks), opt.threads, [&](std::size_t b) {
    std::vector<double>& sum = block_sums[b];
    const int first = static_cast<int>(b) * kOracleBlock;
    const int last = std::min(opt.trials, first + kOracleBlock);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (int trial = first; trial < last; ++trial) {
      std::seed_seq seq{static_cast<std::uint32_t>(opt.seed),
                        static_cast<std::uint32_t>(opt.seed >> 32),
                        static_cast<std::uint32_t>(trial)};
      std::mt19937_64 rng(seq);
      normal.reset();
      OrnsteinUhlenbeck bz, px, py;
      bz.configure(sbz, n.tau_c_b.value_or(1.0), h);
      px.configure(spx, n.tau_c_pi.value_or(1.0), h);
      py.configure(spy, n.tau_c_pi.value_or(1.0), h);
      bz.start(rng, normal);
      px.start(rng, normal);
      py.start(rng, normal);
      double phase = 0.0;
      double nu = freq(bz.x, px.x, py.x);
      for (std::size_t i = 0; i < tau.size(); ++i) {
        const double w = widths[i];
        if (substeps[i] > 0) {
          bz.configure(sbz, n.tau_c_b.value_or(1.0), w);
          px.configure(spx, n.tau_c_pi.value_or(1.0), w);
          py.configure(spy, n.tau_c_pi.value_or(1.0), w);
        }
        for (int k = 0; k < substeps[i]; ++k) {
          bz.step(rng, normal);
          px.step(rng, normal);
          py.step(rng, normal);
          const double next = freq(bz.x, px.x, py.x);
          phase += kPi * (nu + next) * w;  // trapezoid of 2 pi nu dt
          nu = next;
        }
        sum[i] += std::cos(2.0 * kPi * opt.delta * tau[i] + phase);
      }
    }
  });

  std::vector<double> out(tau.size(), 0.0);
  for (const auto& bs : block_sums)
    for (std::size_t i = 0; i < tau.size(); ++i) out[i] += bs[i];
  for (double& v : out) v /= opt.trials;
  return out;
}

}  // namespace nvdressed
