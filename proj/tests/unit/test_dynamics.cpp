#include <doctest.h>

#include <complex>
#include <random>

#include "nvdressed/dynamics.hpp"
#include "nvdressed/errors.hpp"
#include "nvdressed/fitting.hpp"

using namespace nvdressed;

namespace {

std::vector<double> grid(double tmax, double dt) {
  std::vector<double> t;
  for (int i = 0; i * dt <= tmax + 1e-12; ++i) t.push_back(i * dt);
  return t;
}

double dft_magnitude(const std::vector<double>& t, const std::vector<double>& y, double f) {
  std::complex<double> acc = 0.0;
  double mean = 0.0;
  for (double v : y) mean += v / y.size();
  for (std::size_t i = 0; i < t.size(); ++i) acc += (y[i] - mean) * std::polar(1.0, -2 * kPi * f * t[i]);
  return std::abs(acc);
}

// T2 from a Gaussian fit of log(envelope) = -(t/T2)^2 on points with env > floor.
double gaussian_t2(const std::vector<double>& t, const std::vector<double>& env, double floor) {
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 1; i < t.size(); ++i) {
    if (env[i] <= floor) break;
    const double x = t[i] * t[i];
    sxx += x * x;
    sxy += x * std::log(env[i]);
  }
  return std::sqrt(-sxx / sxy);
}

}  // namespace

TEST_CASE("canonical FID probability") {
  DecayComponent c;
  c.t2 = 1.41;
  c.delta = 0.532;
  CHECK(fid_probability(c, 0.0) == doctest::Approx(0.0));
  CHECK(fid_probability(c, 200.0) == doctest::Approx(0.5));
  // at a full period the cosine is 1 and only the envelope remains
  const double tp = 1.0 / c.delta;
  CHECK(fid_probability(c, tp) ==
        doctest::Approx(0.5 * (1.0 - std::exp(-std::pow(tp / c.t2, c.p)))));
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 1000; ++k) {
    DecayComponent r;
    r.t2 = 0.05 + 5 * u(rng);
    r.p = 1 + u(rng);
    r.delta = 3 * u(rng);
    const double v = fid_probability(r, 10 * u(rng));
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
  }
  DecayComponent bad;
  bad.p = 2.5;
  CHECK_THROWS(fid_signal({bad}, {0.0, 1.0}));
  CHECK_THROWS(fid_signal({c}, {1.0, 0.5}));
}

TEST_CASE("multi-component signal carries each detuning") {
  std::vector<DecayComponent> comps(3);
  const double f[3] = {0.532, 1.49, 2.02};
  for (int k = 0; k < 3; ++k) {
    comps[k].y0 = k == 0 ? 0.5 : 0.0;
    comps[k].a = -0.5 / 3;
    comps[k].t2 = 10.0;  // long enough for 0.25 MHz side bins to resolve
    comps[k].delta = f[k];
  }
  const auto t = grid(20.0, 0.01);
  const auto y = fid_signal(comps, t);
  for (std::size_t i = 0; i < t.size(); i += 37) {
    double s = 0.0;
    for (const auto& c : comps) s += fid_probability(c, t[i]);
    CHECK(y[i] == doctest::Approx(s));
  }
  for (double fk : f) {
    CHECK(dft_magnitude(t, y, fk) > 3.0 * dft_magnitude(t, y, fk + 0.25));
    CHECK(dft_magnitude(t, y, fk) > 3.0 * dft_magnitude(t, y, fk - 0.25));
  }
}

TEST_CASE("closed-form T2 predictions") {
  const PhysicalConstants c;
  NoiseModel n;
  n.sigma_pi_xp = 1000.0;
  n.sigma_pi_yp = 1000.0;
  n.sigma_b_z = 0.0;
  const double t_dr = predict_t2(Scenario::dressed(), n, c, 6.4);
  CHECK(t_dr == doctest::Approx(1.0 / (std::sqrt(2.0) * kPi * c.d_perp * 1000.0)));
  // gamma = pi/2: magnetic weight vanishes
  n.sigma_b_z = 0.01;
  CHECK(predict_t2(Scenario::partial(kPi / 2), n, c, 6.4) == doctest::Approx(t_dr));

  NoiseModel m;
  m.sigma_b_z = 0.002;
  m.sigma_pi_xp = 0.0;
  m.sigma_pi_yp = 0.0;
  CHECK(predict_t2(Scenario::strong_axial(3.0), m, c, 6.4) ==
        doctest::Approx(1.0 / (std::sqrt(2.0) * kPi * c.gamma_e * 0.002)));

  // monotone in every noise amplitude
  NoiseModel base;
  base.sigma_b_z = 0.002;
  base.sigma_pi_xp = 2000.0;
  base.sigma_pi_yp = 2000.0;
  for (auto s : {Scenario::dressed(), Scenario::strong_axial(0.5), Scenario::partial(1.0)}) {
    const double t0 = predict_t2(s, base, c, 6.4);
    for (int field = 0; field < 3; ++field) {
      NoiseModel more = base;
      if (field == 0) more.sigma_b_z = 0.004;
      if (field == 1) more.sigma_pi_xp = 4000.0;
      if (field == 2) more.sigma_pi_yp = 4000.0;
      CHECK(predict_t2(s, more, c, 6.4) <= t0);
    }
  }
  CHECK_THROWS_AS(predict_t2(Scenario::dressed(), NoiseModel{}, c, 6.4), MissingNoiseParameter);
}

TEST_CASE("detuning distributions") {
  const auto d = DetuningDistribution::delta(0.3);
  CHECK(d.characteristic(1.0).real() == doctest::Approx(std::cos(2 * kPi * 0.3)));

  // Gaussian transform against direct quadrature
  const auto g = DetuningDistribution::gaussian(0.0, 0.2);
  for (double tau : {0.0, 0.5, 1.3, 2.0}) {
    double num = 0.0;
    const double h = 1e-4;
    for (double x = -2.0; x <= 2.0; x += h)
      num += h * std::cos(2 * kPi * x * tau) * std::exp(-x * x / (2 * 0.04)) / std::sqrt(2 * kPi * 0.04);
    CHECK(g.characteristic(tau).real() == doctest::Approx(num).epsilon(1e-6));
    CHECK(g.characteristic(tau).real() ==
          doctest::Approx(std::exp(-2 * kPi * kPi * 0.04 * tau * tau)));
  }

  // symmetric table gives a real transform
  std::vector<double> xs, ps;
  for (int i = -200; i <= 200; ++i) {
    xs.push_back(i * 0.005);
    ps.push_back(std::max(0.0, 1.0 - std::abs(i * 0.005)));
  }
  const auto tab = DetuningDistribution::tabulated(xs, ps);
  for (double tau : {0.3, 1.7, 4.2}) CHECK(std::abs(tab.characteristic(tau).imag()) < 1e-9);
  CHECK_THROWS(DetuningDistribution::tabulated({0.0, 1.0}, {1.0, 3.0}));
}

TEST_CASE("ensemble decay laws") {
  const PhysicalConstants c;
  NoiseModel n;
  n.sigma_b_ens = 0.001;
  n.sigma_pi_xp = 3000.0;
  const auto t = grid(4.0, 0.02);
  const double tsf = ensemble_t2_strong_axial(n, c);
  const auto sa = ensemble_decay(Scenario::strong_axial(1.0), n, c, DetuningDistribution::delta(0.0), t);
  for (std::size_t i = 0; i < t.size(); i += 20) CHECK(sa[i] == doctest::Approx(std::exp(-t[i] / tsf)));
  const auto det = ensemble_decay(Scenario::strong_axial(1.0), n, c, DetuningDistribution::delta(0.5), t);
  for (std::size_t i = 0; i < t.size(); i += 20)
    CHECK(det[i] == doctest::Approx(sa[i] * std::cos(2 * kPi * 0.5 * t[i])));

  // Monte-Carlo over the heavy-tailed sigma_B law reproduces the exponential
  const auto mc = ensemble_strong_axial_mc(n, c, t, 200000, 5);
  for (std::size_t i = 0; i < t.size(); i += 10) CHECK(std::abs(mc[i] - sa[i]) < 0.01);

  // pure Gaussian detuning spread with no single-NV decoherence
  NoiseModel quiet;
  quiet.sigma_b_ens = 0.0;
  const auto gs = ensemble_decay(Scenario::strong_axial(1.0), quiet, c,
                                 DetuningDistribution::gaussian(0.0, 0.1), t);
  for (std::size_t i = 0; i < t.size(); i += 20)
    CHECK(gs[i] == doctest::Approx(std::exp(-2 * kPi * kPi * 0.01 * t[i] * t[i])));

  CHECK_THROWS_AS(ensemble_decay(Scenario::dressed(), NoiseModel{}, c, DetuningDistribution::delta(0), t),
                  MissingNoiseParameter);
}

TEST_CASE("Monte-Carlo oracle basics") {
  const PhysicalConstants c;
  const auto t = grid(2.0, 0.1);
  NoiseModel none;
  OracleOptions o;
  o.trials = 1000;
  o.delta = 0.4;
  const auto flat = mc_dephasing_oracle(Scenario::dressed(), none, c, 6.4, t, o);
  for (std::size_t i = 0; i < t.size(); ++i) CHECK(flat[i] == doctest::Approx(std::cos(2 * kPi * 0.4 * t[i])));

  NoiseModel n;
  n.sigma_b_z = 0.01;
  n.tau_c_b = 5.0;
  o.trials = 3000;
  o.delta = 0.0;
  o.threads = 1;
  const auto a = mc_dephasing_oracle(Scenario::strong_axial(1.0), n, c, 6.4, t, o);
  o.threads = 3;
  const auto b = mc_dephasing_oracle(Scenario::strong_axial(1.0), n, c, 6.4, t, o);
  CHECK(a == b);
  o.trials = 999;
  CHECK_THROWS_AS(mc_dephasing_oracle(Scenario::strong_axial(1.0), n, c, 6.4, t, o), InsufficientTrials);
  NoiseModel lacking;
  lacking.sigma_b_z = 0.01;
  o.trials = 1000;
  CHECK_THROWS_AS(mc_dephasing_oracle(Scenario::dressed(), lacking, c, 6.4, t, o), MissingNoiseParameter);
}

TEST_CASE("slow bath reproduces the Gaussian closed forms") {
  const PhysicalConstants c;
  OracleOptions o;
  o.trials = 20000;
  o.threads = 4;

  NoiseModel sa;
  sa.sigma_b_z = 0.005;
  sa.tau_c_b = 1000.0;
  sa.sigma_pi_xp = 0.0;
  sa.sigma_pi_yp = 0.0;
  const double t_sa = predict_t2(Scenario::strong_axial(1.0), sa, c, 6.4);
  const auto tg = grid(2.0 * t_sa, t_sa / 20);
  const auto env_sa = mc_dephasing_oracle(Scenario::strong_axial(1.0), sa, c, 6.4, tg, o);
  CHECK(gaussian_t2(tg, env_sa, 0.1) == doctest::Approx(t_sa).epsilon(0.08));

  NoiseModel dr;
  dr.sigma_pi_xp = 5000.0;
  dr.tau_c_pi = 1000.0;
  dr.sigma_b_z = 0.0;
  const double t_dr = predict_t2(Scenario::dressed(), dr, c, 6.4);
  const auto td = grid(2.0 * t_dr, t_dr / 20);
  const auto env_dr = mc_dephasing_oracle(Scenario::dressed(), dr, c, 6.4, td, o);
  CHECK(gaussian_t2(td, env_dr, 0.1) == doctest::Approx(t_dr).epsilon(0.08));
}

TEST_CASE("fast bath narrows toward a simple exponential") {
  const PhysicalConstants c;
  NoiseModel n;
  n.sigma_pi_xp = 93600.0;
  n.tau_c_pi = 0.01;
  n.sigma_b_z = 0.0;
  OracleOptions o;
  o.trials = 4000;
  o.threads = 4;
  const auto t = grid(3.0, 0.05);
  const auto env = mc_dephasing_oracle(Scenario::dressed(), n, c, 6.4, t, o);
  FidFitOptions fo;
  fo.fixed_p = std::nullopt;
  fo.seeds = {0.0};
  const auto fit = fit_fid(t, env, fo);
  CHECK(fit.p < 1.3);
}
