#pragma once

// Rotating-wave drive Hamiltonians for linear, elliptical and circular
// microwave polarization, in the electronic 3x3 space.

#include <optional>
#include <string>

#include "nvdressed/spin_core.hpp"

namespace nvdressed {

struct DriveConfig {
  double omega_theta = 0.0;  // Rabi amplitude along theta, MHz
  double omega_perp = 0.0;   // Rabi amplitude along theta + pi/2, MHz
  double theta = 0.0;        // rad
  double omega_d = 0.0;      // drive frequency, MHz

  void validate() const;  // throws std::invalid_argument on negative amplitudes
};

/// diag(D - w_d, 0, D - w_d) with (W_theta + W_perp) e^{-i theta}/sqrt2 on
/// the |+1><0| side and (W_theta - W_perp) e^{-i theta}/sqrt2 on |0><-1|.
Matrix3c rwa_hamiltonian(const DriveConfig& d, const PhysicalConstants& c);

/// <target| V |S_z=0> where V is the off-diagonal (drive) part.
cplx drive_matrix_element(const DriveConfig& d, const Vector3c& target);

/// gamma of the partially dressed state |+>_{theta,gamma} driven resonantly,
/// 2 atan2(W_theta - W_perp, W_theta + W_perp). Throws ZeroDrive when both
/// amplitudes vanish.
double drive_match_gamma(const DriveConfig& d);

/// |+>_{theta,gamma} = cos(gamma/2) e^{-i theta}|+1> + sin(gamma/2) e^{i theta}|-1>
/// and |->_{theta,gamma} = sin(gamma/2) e^{-i theta}|+1> - cos(gamma/2) e^{i theta}|-1>.
Vector3c partially_dressed_plus(double theta, double gamma);
Vector3c partially_dressed_minus(double theta, double gamma);

inline constexpr double kRwaRatioLimit = 0.01;

/// Warning text when max(W_theta, W_perp) / D exceeds 0.01.
std::optional<std::string> rwa_validity_warning(const DriveConfig& d,
                                                const PhysicalConstants& c);

}  // namespace nvdressed
