#pragma once

// Exact diagonalization (cyclic Jacobi), the closed-form cubic of the
// electronic 3x3 problem, and the second-order perturbative eigenstructure.

#include <array>
#include <optional>
#include <vector>

#include "nvdressed/spin_core.hpp"

namespace nvdressed {

using MatrixXc = Eigen::MatrixXcd;
using VectorXc = Eigen::VectorXcd;

struct StateLabel {
  double sz = 0.0;                // <S_z>
  std::optional<double> iz;       // <I_z>, only for 9-dimensional states
};

struct EigenSolution {
  std::vector<double> values;     // ascending, MHz
  MatrixXc vectors;               // column k pairs with values[k]
  std::vector<StateLabel> labels;

  VectorXc vector(int k) const { return vectors.col(k); }
  int size() const { return static_cast<int>(values.size()); }
};

/// Cyclic complex Jacobi diagonalization for 2 <= n <= 16. Eigenvectors are
/// phase-fixed (first non-negligible component real and positive); ties are
/// broken by descending <S_z> then <I_z> when n is 3 or 9.
/// Throws NonHermitianInput if ||H - H^dagger|| > 1e-10 ||H||.
EigenSolution diagonalize_hermitian(const MatrixXc& h);

/// Roots of det(H_elec - lambda) = 0 for the transverse-only electronic
/// Hamiltonian (B_par and Pi_par are ignored), ascending.
std::array<double, 3> cubic_eigenvalues_exact(const PhysicalConstants& c,
                                              const FieldConfiguration& f);

struct PerturbationParams {
  double zeta = 0.0;          // B_perp / D
  double r = 0.0;             // E D / B_perp^2 (infinite when B_perp = 0)
  double e_script = 0.0;      // d_perp Pi_perp, MHz
  double b_perp_script = 0.0; // gamma_e B_perp, MHz
  double b_par_script = 0.0;  // gamma_e B_par, MHz
  double d_gs = 2870.0;

  static PerturbationParams from(const PhysicalConstants& c,
                                 const FieldConfiguration& f);
};

struct PerturbativeSpectrum {
  double e0 = 0.0;
  double e_minus = 0.0;
  double e_plus = 0.0;
  double e_gap = 0.0;
  double theta = 0.0;  // in (-pi/2, pi/2]
};

/// Throws SeriesOutOfRange if zeta >= 0.2.
PerturbativeSpectrum perturbative_spectrum(const PerturbationParams& p,
                                           double phi_b, double phi_pi);

/// Normalized first-order eigenvectors: [0] the |S_z=0>-like state, [1] the
/// |->_theta-like state, [2] the |+>_theta-like state.
std::array<Vector3c, 3> perturbative_eigenvectors(const PerturbationParams& p,
                                                  double phi_b, double phi_pi);

/// Rotated dressed states |-/+>_theta = (e^{-i theta}|+1> -/+ e^{i theta}|-1>)/sqrt 2.
Vector3c dressed_minus(double theta);
Vector3c dressed_plus(double theta);

/// Multiplies v by a global phase so its first component with magnitude
/// above tol is real and positive.
void fix_phase(VectorXc& v, double tol = 1e-12);

}  // namespace nvdressed
