#pragma once

// Damped Gauss-Newton (Levenberg-Marquardt) least squares and the two model
// fits built on it: multi-component FID decays and Lorentzian ODMR dips.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "nvdressed/dynamics.hpp"

namespace nvdressed {

enum class FitStatus { Converged, MaxIterations, Singular };

const char* to_string(FitStatus s);

struct FitProblem {
  // Model prediction at every data point for the full parameter vector.
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> model;
  Eigen::VectorXd y;
  std::optional<Eigen::VectorXd> sigma;  // per-point uncertainty
  Eigen::VectorXd initial;
  std::vector<bool> free;                // empty means all free
  Eigen::VectorXd lower;                 // empty means unbounded
  Eigen::VectorXd upper;

  int max_iterations = 500;
  double cost_tolerance = 1e-10;  // relative cost change
  double step_tolerance = 1e-12;  // step norm
};

struct FitResult {
  Eigen::VectorXd params;
  Eigen::VectorXd errors;      // 1 sigma, zero for fixed parameters
  Eigen::MatrixXd covariance;  // full size, zero rows for fixed parameters
  double chi2 = 0.0;
  double chi2_reduced = 0.0;
  FitStatus status = FitStatus::Converged;
  int iterations = 0;
  Eigen::VectorXd residuals;   // y - model, unweighted
  Eigen::VectorXd gradient;    // J^T r over free parameters, at the solution
};

/// Minimizes sum((y - model)/sigma)^2. lambda is multiplied by 10 on a
/// rejected step and divided by 10 on an accepted one. Without sigma the
/// covariance is scaled by the reduced chi-square.
/// Throws NonFiniteResidual if the model is not finite at the initial guess
/// and SingularJacobian if a free parameter has no influence on the model.
FitResult levenberg_marquardt(const FitProblem& p);

struct FidFitOptions {
  int n_components = 1;
  std::optional<double> fixed_p = kDefaultStretch;  // nullopt frees p
  std::vector<double> seeds;  // initial detunings (MHz); empty means FFT peaks
  std::optional<std::vector<double>> sigma;  // per-point uncertainty
  double t2_min = 0.05, t2_max = 50.0;
  double delta_min = 0.0, delta_max = 10.0;
  double p_min = 1.0, p_max = 2.0;
};

struct FidFitComponent {
  double a = 0.0;
  double t2 = 0.0;
  double t2_err = 0.0;
  double delta = 0.0;
  double delta_err = 0.0;
  double phi = 0.0;
  bool on_resonance = false;  // delta and phi held at zero
};

struct FidFitResult {
  std::vector<FidFitComponent> components;  // sorted by |delta|
  double y0 = 0.0;
  double p = kDefaultStretch;
  double p_err = 0.0;
  double noise_sigma = 0.0;  // estimated when no uncertainties were supplied
  FitResult raw;
};

/// Fits y0 + sum_k A_k exp(-(t/T2_k)^p) cos(2 pi Delta_k t + phi_k) with a
/// shared offset and a shared stretch. A zero seed fixes that component on
/// resonance. Without uncertainties the noise level is estimated from the
/// RMS residual over the last quarter of the trace.
FidFitResult fit_fid(const std::vector<double>& tau, const std::vector<double>& y,
                     const FidFitOptions& opt);

/// Dominant frequencies (MHz) of y - mean(tail) by zero-padded DFT, strongest
/// first; the zero-frequency bin is a candidate.
std::vector<double> fft_peak_frequencies(const std::vector<double>& tau,
                                         const std::vector<double>& y, int count);

struct OdmrPeak {
  double center = 0.0, center_err = 0.0;
  double width = 0.0, width_err = 0.0;  // FWHM
  double depth = 0.0, depth_err = 0.0;
};

struct OdmrFitResult {
  double baseline = 1.0;
  std::vector<OdmrPeak> peaks;  // sorted by center
  FitResult raw;
};

/// Fits baseline - sum_k depth_k L(nu; center_k, width_k). Initial centers
/// come from the deepest local minima, each excluding its neighbourhood.
OdmrFitResult fit_odmr(const std::vector<double>& freq, const std::vector<double>& y,
                       int n_peaks, std::optional<std::vector<double>> sigma = std::nullopt);

}  // namespace nvdressed
