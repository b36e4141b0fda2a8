#include "nvdressed/polarization.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "nvdressed/errors.hpp"

namespace nvdressed {

void DriveConfig::validate() const {
  if (!(omega_theta >= 0.0) || !(omega_perp >= 0.0))
    throw std::invalid_argument("drive amplitudes must be non-negative");
}

Matrix3c rwa_hamiltonian(const DriveConfig& d, const PhysicalConstants& c) {
  d.validate();
  const double r = 1.0 / std::sqrt(2.0);
  const cplx ph = std::polar(1.0, -d.theta);
  Matrix3c h = Matrix3c::Zero();
  h(0, 0) = c.d_gs - d.omega_d;
  h(2, 2) = c.d_gs - d.omega_d;
  h(0, 1) = (d.omega_theta + d.omega_perp) * r * ph;
  h(1, 2) = (d.omega_theta - d.omega_perp) * r * ph;
  h(1, 0) = std::conj(h(0, 1));
  h(2, 1) = std::conj(h(1, 2));
  return h;
}

cplx drive_matrix_element(const DriveConfig& d, const Vector3c& target) {
  PhysicalConstants c;
  Matrix3c v = rwa_hamiltonian(d, c);
  v.diagonal().setZero();
  return target.dot(v.col(1));
}

double drive_match_gamma(const DriveConfig& d) {
  d.validate();
  if (d.omega_theta == 0.0 && d.omega_perp == 0.0)
    throw ZeroDrive("drive_match_gamma: both drive amplitudes are zero");
  return 2.0 * std::atan2(d.omega_theta - d.omega_perp, d.omega_theta + d.omega_perp);
}

Vector3c partially_dressed_plus(double theta, double gamma) {
  return Vector3c(std::cos(0.5 * gamma) * std::polar(1.0, -theta), 0.0,
                  std::sin(0.5 * gamma) * std::polar(1.0, theta));
}

Vector3c partially_dressed_minus(double theta, double gamma) {
  return Vector3c(std::sin(0.5 * gamma) * std::polar(1.0, -theta), 0.0,
                  -std::cos(0.5 * gamma) * std::polar(1.0, theta));
}

std::optional<std::string> rwa_validity_warning(const DriveConfig& d,
                                                const PhysicalConstants& c) {
  const double ratio = std::max(d.omega_theta, d.omega_perp) / c.d_gs;
  if (ratio <= kRwaRatioLimit) return std::nullopt;
  std::ostringstream os;
  os << "drive amplitude / D = " << ratio << " exceeds " << kRwaRatioLimit
     << "; counter-rotating terms are no longer negligible";
  return os.str();
}

}  // namespace nvdressed
