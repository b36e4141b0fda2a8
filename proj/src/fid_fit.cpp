#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "nvdressed/fitting.hpp"

namespace nvdressed {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

constexpr int kGlobal = 2;    // y0, p
constexpr int kPerComp = 4;   // A, T2, delta, phi

double wrap_phase(double phi) {
  phi = std::remainder(phi, 2.0 * kPi);
  return phi <= -kPi ? phi + 2.0 * kPi : phi;
}

double tail_mean(const std::vector<double>& y) {
  const std::size_t start = y.size() - std::max<std::size_t>(1, y.size() / 10);
  double s = 0.0;
  for (std::size_t i = start; i < y.size(); ++i) s += y[i];
  return s / static_cast<double>(y.size() - start);
}

// Log-linear fit of the running upper envelope of |y - y0|.
double envelope_t2(const std::vector<double>& tau, const std::vector<double>& y, double y0) {
  const std::size_t n = y.size();
  std::vector<double> env(n);
  double run = 0.0;
  for (std::size_t i = n; i-- > 0;) {
    run = std::max(run, std::abs(y[i] - y0));
    env[i] = run;
  }
  const double floor = 0.05 * env[0];
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(env[i] > floor)) break;
    const double ly = std::log(env[i]);
    sx += tau[i];
    sy += ly;
    sxx += tau[i] * tau[i];
    sxy += tau[i] * ly;
    ++m;
  }
  const double den = m * sxx - sx * sx;
  if (m < 3 || den <= 0.0) return 0.3 * (tau.back() - tau.front());
  const double slope = (m * sxy - sx * sy) / den;
  return slope < 0.0 ? -1.0 / slope : tau.back() - tau.front();
}

}  // namespace

std::vector<double> fft_peak_frequencies(const std::vector<double>& tau,
                                         const std::vector<double>& y, int count) {
  if (tau.size() != y.size() || tau.size() < 4)
    throw std::invalid_argument("fft_peak_frequencies needs matching arrays of size >= 4");
  const std::size_t n = y.size();
  const double dt = (tau.back() - tau.front()) / static_cast<double>(n - 1);
  std::size_t padded = 1;
  while (padded < 8 * n) padded <<= 1;
  const double y0 = tail_mean(y);

  // Magnitude on bins 0 .. padded/2 by direct summation with a rotating phasor.
  const std::size_t bins = padded / 2 + 1;
  std::vector<double> mag(bins);
  for (std::size_t k = 0; k < bins; ++k) {
    const std::complex<double> w = std::polar(1.0, -2.0 * kPi * static_cast<double>(k) / padded);
    std::complex<double> ph = 1.0, acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      acc += (y[i] - y0) * ph;
      ph *= w;
    }
    mag[k] = std::abs(acc);
  }
  const double df = 1.0 / (static_cast<double>(padded) * dt);
  const double resolution = 1.0 / (static_cast<double>(n) * dt);

  std::vector<std::size_t> maxima;
  for (std::size_t k = 0; k < bins; ++k) {
    const bool left = k == 0 || mag[k] >= mag[k - 1];
    const bool right = k + 1 == bins || mag[k] >= mag[k + 1];
    if (left && right) maxima.push_back(k);
  }
  std::stable_sort(maxima.begin(), maxima.end(),
                   [&](std::size_t a, std::size_t b) { return mag[a] > mag[b]; });
  std::vector<double> out;
  for (std::size_t k : maxima) {
    if (static_cast<int>(out.size()) >= count) break;
    const double f = static_cast<double>(k) * df;
    bool clash = false;
    for (double g : out) clash = clash || std::abs(f - g) < resolution;
    if (!clash) out.push_back(f);
  }
  return out;
}

FidFitResult fit_fid(const std::vector<double>& tau, const std::vector<double>& y,
                     const FidFitOptions& opt) {
  const int nc = opt.n_components;
  if (nc < 1 || nc > 3) throw std::invalid_argument("fit_fid supports 1 to 3 components");
  if (tau.size() != y.size()) throw std::invalid_argument("tau and signal lengths differ");
  if (tau.size() < 8) throw std::invalid_argument("fit_fid needs at least 8 samples");
  for (std::size_t i = 1; i < tau.size(); ++i)
    if (!(tau[i] > tau[i - 1])) throw std::invalid_argument("tau must ascend");
  if (!opt.seeds.empty() && static_cast<int>(opt.seeds.size()) != nc)
    throw std::invalid_argument("one detuning seed per component is required");
  if (opt.fixed_p && !(*opt.fixed_p >= 1.0 && *opt.fixed_p <= 2.0))
    throw std::invalid_argument("fixed stretch must lie in [1, 2]");

  const Eigen::Index m = static_cast<Eigen::Index>(tau.size());
  const VectorXd t = Eigen::Map<const VectorXd>(tau.data(), m);
  const VectorXd yv = Eigen::Map<const VectorXd>(y.data(), m);

  std::vector<double> deltas = opt.seeds;
  if (deltas.empty()) {
    deltas = fft_peak_frequencies(tau, y, nc);
    while (static_cast<int>(deltas.size()) < nc) deltas.push_back(0.0);
  }
  for (double& d : deltas) d = std::clamp(std::abs(d), opt.delta_min, opt.delta_max);

  const double p0 = opt.fixed_p.value_or(1.5);
  double y0 = tail_mean(y);
  const double t2_0 = std::clamp(envelope_t2(tau, y, y0), opt.t2_min, opt.t2_max);

  // Linear amplitudes and phases for the seeded envelopes.
  std::vector<double> amp(nc), phase(nc, 0.0);
  {
    int cols = 1;
    for (int k = 0; k < nc; ++k) cols += deltas[k] == 0.0 ? 1 : 2;
    MatrixXd a(m, cols);
    a.col(0).setOnes();
    int c = 1;
    for (int k = 0; k < nc; ++k) {
      for (Eigen::Index i = 0; i < m; ++i) {
        const double env = std::exp(-std::pow(t[i] / t2_0, p0));
        a(i, c) = env * std::cos(2.0 * kPi * deltas[k] * t[i]);
        if (deltas[k] != 0.0) a(i, c + 1) = env * std::sin(2.0 * kPi * deltas[k] * t[i]);
      }
      c += deltas[k] == 0.0 ? 1 : 2;
    }
    const VectorXd sol = a.colPivHouseholderQr().solve(yv);
    y0 = sol[0];
    c = 1;
    for (int k = 0; k < nc; ++k) {
      if (deltas[k] == 0.0) {
        amp[k] = sol[c];
        c += 1;
      } else {
        amp[k] = std::hypot(sol[c], sol[c + 1]);
        phase[k] = std::atan2(-sol[c + 1], sol[c]);
        c += 2;
      }
      if (!std::isfinite(amp[k]) || amp[k] == 0.0) amp[k] = (y[0] - y0) / nc;
    }
  }

  FitProblem prob;
  const int np = kGlobal + kPerComp * nc;
  prob.y = yv;
  prob.initial = VectorXd(np);
  prob.lower = VectorXd::Constant(np, -std::numeric_limits<double>::infinity());
  prob.upper = VectorXd::Constant(np, std::numeric_limits<double>::infinity());
  prob.free.assign(np, true);
  prob.initial[0] = y0;
  prob.initial[1] = p0;
  prob.lower[1] = opt.p_min;
  prob.upper[1] = opt.p_max;
  prob.free[1] = !opt.fixed_p.has_value();
  for (int k = 0; k < nc; ++k) {
    const int o = kGlobal + kPerComp * k;
    prob.initial[o] = amp[k];
    prob.initial[o + 1] = t2_0;
    prob.initial[o + 2] = deltas[k];
    prob.initial[o + 3] = phase[k];
    prob.lower[o + 1] = opt.t2_min;
    prob.upper[o + 1] = opt.t2_max;
    prob.lower[o + 2] = opt.delta_min;
    prob.upper[o + 2] = opt.delta_max;
    if (deltas[k] == 0.0) prob.free[o + 2] = prob.free[o + 3] = false;
  }
  prob.model = [t, nc](const VectorXd& x) {
    VectorXd out = VectorXd::Constant(t.size(), x[0]);
    for (int k = 0; k < nc; ++k) {
      const int o = kGlobal + kPerComp * k;
      for (Eigen::Index i = 0; i < t.size(); ++i)
        out[i] += x[o] * std::exp(-std::pow(t[i] / x[o + 1], x[1])) *
                  std::cos(2.0 * kPi * x[o + 2] * t[i] + x[o + 3]);
    }
    return out;
  };

  double noise = 0.0;
  if (opt.sigma) {
    if (opt.sigma->size() != tau.size()) throw std::invalid_argument("sigma length differs");
    prob.sigma = Eigen::Map<const VectorXd>(opt.sigma->data(), m);
  }

  FidFitResult res;
  res.raw = levenberg_marquardt(prob);
  FitResult& raw = res.raw;

  if (!opt.sigma && raw.status != FitStatus::Singular) {
    // Homoscedastic noise from the late-time residuals, where the signal has decayed.
    const Eigen::Index start = m - m / 4;
    noise = std::sqrt(raw.residuals.tail(m - start).squaredNorm() / static_cast<double>(m - start));
    const double scale = raw.chi2_reduced > 0.0 ? noise * noise / raw.chi2_reduced : 0.0;
    raw.covariance *= scale;
    raw.errors = raw.covariance.diagonal().cwiseMax(0.0).cwiseSqrt();
  }

  res.y0 = raw.params[0];
  res.p = raw.params[1];
  res.p_err = raw.errors[1];
  res.noise_sigma = noise;
  for (int k = 0; k < nc; ++k) {
    const int o = kGlobal + kPerComp * k;
    FidFitComponent c;
    c.a = raw.params[o];
    c.t2 = raw.params[o + 1];
    c.t2_err = raw.errors[o + 1];
    c.delta = raw.params[o + 2];
    c.delta_err = raw.errors[o + 2];
    c.phi = wrap_phase(raw.params[o + 3]);
    c.on_resonance = !prob.free[o + 2];
    res.components.push_back(c);
  }
  std::stable_sort(res.components.begin(), res.components.end(),
                   [](const FidFitComponent& a, const FidFitComponent& b) {
                     return std::abs(a.delta) < std::abs(b.delta);
                   });
  return res;
}

}  // namespace nvdressed
