#pragma once

// Free-induction-decay signal models, closed-form T2* for the dressed,
// strong-axial and partially dressed regimes, ensemble-averaged decay laws
// and a Monte-Carlo dephasing oracle driven by Ornstein-Uhlenbeck noise.
// Times are in microseconds and frequencies in MHz, so 2*pi*nu*tau is a phase.

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nvdressed/spin_core.hpp"

namespace nvdressed {

inline constexpr double kDefaultStretch = 1.24;  // fixed stretch of the FID fits
inline constexpr double kStretchSingleDecay = 1.28;

struct DecayComponent {
  double y0 = 0.5;
  double a = -0.5;
  double t2 = 1.0;     // us
  double p = kDefaultStretch;
  double delta = 0.0;  // MHz
  double phi = 0.0;    // rad

  void validate() const;  // T2 > 0, 1 <= p <= 2
};

/// y0 + A exp(-(tau/T2)^p) cos(2 pi Delta tau + phi). With y0 = 1/2 and
/// A = -1/2 this is the |0> population after a Ramsey sequence.
double fid_probability(const DecayComponent& comp, double tau);

/// Pointwise sum of fid_probability over the components.
std::vector<double> fid_signal(const std::vector<DecayComponent>& components,
                               const std::vector<double>& tau);

/// Noise amplitudes; absent entries are reported as MissingNoiseParameter by
/// operations that need them.
struct NoiseModel {
  std::optional<double> sigma_b_z;    // mT
  std::optional<double> sigma_b_x;    // mT
  std::optional<double> sigma_b_y;    // mT
  std::optional<double> sigma_pi_xp;  // V/cm, along x'
  std::optional<double> sigma_pi_yp;  // V/cm, along y'
  std::optional<double> tau_c_b;      // us
  std::optional<double> tau_c_pi;     // us
  std::optional<double> sigma_b_ens;  // mT, ensemble coupling scale

  void validate() const;
};

struct Scenario {
  enum class Kind { Dressed, StrongAxial, Partial };
  Kind kind = Kind::Dressed;
  double gamma = kPi / 2.0;  // mixing angle, partial only
  double b_par_mT = 0.0;     // static axial field, strong-axial only

  static Scenario dressed() { return {}; }
  static Scenario strong_axial(double b_par_mT) {
    return {Kind::StrongAxial, 0.0, b_par_mT};
  }
  static Scenario partial(double gamma) { return {Kind::Partial, gamma, 0.0}; }
};

const char* to_string(Scenario::Kind k);

/// Closed-form slow-bath T2* (us):
///   dressed       1 / (sqrt2 pi sqrt(d^2 sPx'^2 + g^4 sBz^4 / Eg^2))
///   strong-axial  1 / (sqrt2 pi sqrt(g^2 sBz^2 + d^4 (sPx'^4 + sPy'^4) / (2 g Bz)^2))
///   partial       1 / (sqrt2 pi sqrt(g^2 sBz^2 |cos gamma| + d^2 sPy'^2 sin gamma))
/// with g = gamma_e and d = d_perp. The partial form keeps the unsquared
/// weights of its source derivation.
double predict_t2(const Scenario& s, const NoiseModel& n, const PhysicalConstants& c,
                  double e_gap);

struct DetuningDistribution {
  enum class Kind { Delta, Gaussian, Tabulated };
  Kind kind = Kind::Delta;
  double mean = 0.0;   // MHz
  double sigma = 0.0;  // MHz
  std::vector<double> grid;     // MHz, ascending (tabulated)
  std::vector<double> density;  // 1/MHz (tabulated)

  static DetuningDistribution delta(double mean) { return {Kind::Delta, mean, 0.0, {}, {}}; }
  static DetuningDistribution gaussian(double mean, double sigma) {
    return {Kind::Gaussian, mean, sigma, {}, {}};
  }
  /// Throws std::invalid_argument unless the trapezoid integral is 1 within 1e-6.
  static DetuningDistribution tabulated(std::vector<double> grid, std::vector<double> density);

  /// P~(tau) = integral of exp(2 pi i Delta tau) P(Delta) dDelta.
  std::complex<double> characteristic(double tau) const;
};

/// Ensemble-averaged coherence: envelope(tau) * Re P~(tau) where the
/// envelope is exp(-tau/T_sf) (strong-axial), exp(-(tau/T_dr)^2) (dressed) or
/// exp(-|cos gamma| tau/T_sf) exp(-sin gamma (tau/T_dr)^2) (partial), with
///   T_sf = 1 / (2 pi gamma_e sigma_B_ens)   and   T_dr = 1 / (sqrt2 pi d_perp sigma_Pi_x').
std::vector<double> ensemble_decay(const Scenario& s, const NoiseModel& n,
                                   const PhysicalConstants& c,
                                   const DetuningDistribution& dist,
                                   const std::vector<double>& tau);

double ensemble_t2_strong_axial(const NoiseModel& n, const PhysicalConstants& c);
double ensemble_t2_dressed(const NoiseModel& n, const PhysicalConstants& c);

/// Monte-Carlo estimate of the strong-axial ensemble coherence: sigma_B is
/// drawn from its heavy-tailed ensemble law by inverse-CDF on a tabulated
/// grid and the single-NV Gaussian decay is averaged.
std::vector<double> ensemble_strong_axial_mc(const NoiseModel& n, const PhysicalConstants& c,
                                             const std::vector<double>& tau,
                                             int samples, std::uint64_t seed);

struct OracleOptions {
  int trials = 100000;
  std::uint64_t seed = 1;
  double delta = 0.0;  // detuning of the reference oscillation, MHz
  int threads = 1;
};

inline constexpr int kMinOracleTrials = 1000;
inline constexpr int kOracleBlock = 1024;

/// <cos(2 pi Delta tau + dphi(tau))> over trials, where dphi integrates
/// 2 pi dnu(t) and dnu follows the scenario's frequency-noise map applied to
/// stationary OU processes for dB_z, dPi_x', dPi_y'. The step is a tenth of
/// the smallest grid spacing. Bit-reproducible for any thread count.
/// Throws InsufficientTrials below 1000 trials.
std::vector<double> mc_dephasing_oracle(const Scenario& s, const NoiseModel& n,
                                        const PhysicalConstants& c, double e_gap,
                                        const std::vector<double>& tau,
                                        const OracleOptions& opt);

}  // namespace nvdressed
