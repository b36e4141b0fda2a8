#pragma once

// Physical constants, field configurations, spin-1 operators and the NV
// ground-state Hamiltonians. Energies are frequencies in MHz (h = 1).
//
// Basis ordering: electron |Sz = +1, 0, -1> (major index) tensored with the
// 14N nucleus |Iz = +1, 0, -1>.

#include <complex>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace nvdressed {

using cplx = std::complex<double>;
using Matrix3c = Eigen::Matrix3cd;
using Vector3c = Eigen::Vector3cd;
using Matrix9c = Eigen::Matrix<cplx, 9, 9>;
using Vector9c = Eigen::Matrix<cplx, 9, 1>;

inline constexpr double kPi = 3.14159265358979323846;

/// Spin-Hamiltonian parameters. All couplings are in frequency units.
struct PhysicalConstants {
  double d_gs = 2870.0;       ///< zero-field splitting, MHz
  double d_perp = 17e-6;      ///< transverse electric dipole, MHz per (V/cm)
  double d_par = 0.35e-6;     ///< axial electric dipole, MHz per (V/cm)
  double gamma_e = 28.025;    ///< g_e mu_B / h, MHz/mT
  double gamma_n = 3.077e-4;  ///< g_n mu_n / h, MHz/mT
  double a_par = -2.16;       ///< axial hyperfine, MHz
  double a_perp = -2.7;       ///< transverse hyperfine, MHz
  double quadrupole = -4.945; ///< nuclear quadrupole Q, MHz

  /// Throws std::invalid_argument when a sign or ratio invariant is broken.
  void validate() const;
};

/// Static magnetic field (mT) and effective electric field Pi (V/cm).
struct FieldConfiguration {
  double b_x = 0.0;
  double b_y = 0.0;
  double b_par = 0.0;
  double pi_x = 0.0;
  double pi_y = 0.0;
  double pi_par = 0.0;

  double b_perp() const;
  double phi_b() const;  // atan2(B_y, B_x)
  double pi_perp() const;
  double phi_pi() const; // atan2(Pi_y, Pi_x)

  FieldConfiguration with_b_par(double b_par_mT) const {
    FieldConfiguration f = *this;
    f.b_par = b_par_mT;
    return f;
  }

  /// Throws std::invalid_argument on non-finite components.
  void validate() const;
};

/// Named field presets: "main-text" (B_perp = [3.83, 3.33] mT) and
/// "supplementary" (B_perp = [3.89, 3.27] mT); both with
/// Pi = (-124000, -94000, 0) V/cm and B_par = 0.
FieldConfiguration field_preset(std::string_view name);
std::vector<std::string> field_preset_names();

struct SpinOperatorSet {
  Matrix3c sx, sy, sz;
  Matrix3c ix, iy, iz;

  // S_i (x) 1 and 1 (x) I_i
  Matrix9c lifted_sx() const;
  Matrix9c lifted_sy() const;
  Matrix9c lifted_sz() const;
  Matrix9c lifted_ix() const;
  Matrix9c lifted_iy() const;
  Matrix9c lifted_iz() const;
};

SpinOperatorSet spin1_operators();

Matrix9c lift_electron(const Matrix3c& op);
Matrix9c lift_nucleus(const Matrix3c& op);
Matrix9c kron(const Matrix3c& electron, const Matrix3c& nucleus);

/// Electronic-only Hamiltonian (D + d_par Pi_par) Sz^2 - d_perp[...] +
/// gamma_e B.S. With the axial fields at zero this is the textbook
/// transverse-field matrix with diagonal (D, 0, D).
Matrix3c electronic_hamiltonian(const PhysicalConstants& c,
                                const FieldConfiguration& f);

/// Full electron-nuclear Hamiltonian including hyperfine, quadrupole and
/// nuclear Zeeman terms.
Matrix9c full_hamiltonian(const PhysicalConstants& c,
                          const FieldConfiguration& f);

}  // namespace nvdressed
