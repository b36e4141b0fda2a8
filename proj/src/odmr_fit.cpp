#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "nvdressed/fitting.hpp"
#include "nvdressed/spectra.hpp"

namespace nvdressed {

namespace {

using Eigen::VectorXd;

// Full width at half depth around index i, walking outwards.
double half_depth_width(const std::vector<double>& f, const std::vector<double>& y,
                        std::size_t i, double baseline) {
  const double half = baseline - 0.5 * (baseline - y[i]);
  std::size_t lo = i, hi = i;
  while (lo > 0 && y[lo] < half) --lo;
  while (hi + 1 < y.size() && y[hi] < half) ++hi;
  const double w = f[hi] - f[lo];
  return w > 0.0 ? w : 2.0 * (f[1] - f[0]);
}

}  // namespace

OdmrFitResult fit_odmr(const std::vector<double>& freq, const std::vector<double>& y,
                       int n_peaks, std::optional<std::vector<double>> sigma) {
  if (n_peaks < 1) throw std::invalid_argument("fit_odmr needs at least one peak");
  if (freq.size() != y.size()) throw std::invalid_argument("frequency and signal lengths differ");
  if (freq.size() < static_cast<std::size_t>(3 * n_peaks + 3))
    throw std::invalid_argument("too few samples for the requested peaks");
  for (std::size_t i = 1; i < freq.size(); ++i)
    if (!(freq[i] > freq[i - 1])) throw std::invalid_argument("frequencies must ascend");

  const std::size_t n = y.size();
  std::vector<double> sorted = y;
  std::sort(sorted.begin(), sorted.end());
  const double baseline = sorted[static_cast<std::size_t>(0.9 * static_cast<double>(n - 1))];
  const double span = freq.back() - freq.front();
  const double step = span / static_cast<double>(n - 1);

  std::vector<std::size_t> minima;
  for (std::size_t i = 0; i < n; ++i) {
    const bool left = i == 0 || y[i] <= y[i - 1];
    const bool right = i + 1 == n || y[i] <= y[i + 1];
    if (left && right) minima.push_back(i);
  }
  std::stable_sort(minima.begin(), minima.end(),
                   [&](std::size_t a, std::size_t b) { return y[a] < y[b]; });
  if (minima.empty()) minima.push_back(0);

  const double w0 = half_depth_width(freq, y, minima.front(), baseline);
  const double exclusion = 0.75 * w0;
  std::vector<double> centers;
  std::vector<double> depths;
  for (std::size_t i : minima) {
    if (static_cast<int>(centers.size()) >= n_peaks) break;
    bool clash = false;
    for (double c : centers) clash = clash || std::abs(freq[i] - c) < exclusion;
    if (clash) continue;
    centers.push_back(freq[i]);
    depths.push_back(std::max(baseline - y[i], 1e-6));
  }
  for (int k = 0; static_cast<int>(centers.size()) < n_peaks; ++k) {
    centers.push_back(std::clamp(centers.front() + (k % 2 ? -1.0 : 1.0) * w0 * (1 + k / 2),
                                 freq.front(), freq.back()));
    depths.push_back(0.5 * depths.front());
  }

  const int np = 1 + 3 * n_peaks;
  FitProblem prob;
  prob.y = Eigen::Map<const VectorXd>(y.data(), static_cast<Eigen::Index>(n));
  if (sigma) {
    if (sigma->size() != n) throw std::invalid_argument("sigma length differs");
    prob.sigma = Eigen::Map<const VectorXd>(sigma->data(), static_cast<Eigen::Index>(n));
  }
  prob.initial = VectorXd(np);
  prob.lower = VectorXd::Constant(np, -std::numeric_limits<double>::infinity());
  prob.upper = VectorXd::Constant(np, std::numeric_limits<double>::infinity());
  prob.initial[0] = baseline;
  for (int k = 0; k < n_peaks; ++k) {
    const int o = 1 + 3 * k;
    prob.initial[o] = centers[k];
    prob.initial[o + 1] = w0;
    prob.initial[o + 2] = depths[k];
    prob.lower[o] = freq.front();
    prob.upper[o] = freq.back();
    prob.lower[o + 1] = 0.1 * step;
    prob.upper[o + 1] = span;
    prob.lower[o + 2] = 0.0;
  }
  const VectorXd f = Eigen::Map<const VectorXd>(freq.data(), static_cast<Eigen::Index>(n));
  prob.model = [f, n_peaks](const VectorXd& x) {
    VectorXd out = VectorXd::Constant(f.size(), x[0]);
    for (int k = 0; k < n_peaks; ++k) {
      const int o = 1 + 3 * k;
      for (Eigen::Index i = 0; i < f.size(); ++i)
        out[i] -= x[o + 2] * lorentzian(f[i], x[o], x[o + 1]);
    }
    return out;
  };

  OdmrFitResult res;
  res.raw = levenberg_marquardt(prob);
  res.baseline = res.raw.params[0];
  for (int k = 0; k < n_peaks; ++k) {
    const int o = 1 + 3 * k;
    res.peaks.push_back({res.raw.params[o], res.raw.errors[o], res.raw.params[o + 1],
                         res.raw.errors[o + 1], res.raw.params[o + 2], res.raw.errors[o + 2]});
  }
  std::stable_sort(res.peaks.begin(), res.peaks.end(),
                   [](const OdmrPeak& a, const OdmrPeak& b) { return a.center < b.center; });
  return res;
}

}  // namespace nvdressed
