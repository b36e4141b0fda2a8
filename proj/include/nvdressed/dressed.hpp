#pragma once

// Dressed / partially-dressed / strong-axial states of the reduced two-level
// problem |->_theta, |+>_theta under an axial field, plus state metrics.

#include "nvdressed/eigen.hpp"

namespace nvdressed {

struct DressedPairModel {
  double theta = 0.0;
  double e_gap = 0.0;         // MHz
  double b_par_script = 0.0;  // gamma_e B_par, MHz
  double gamma = kPi / 2.0;   // atan2(E_gap/2, B_par_script), in (0, pi)
  double e_m = 0.0;           // D + B_perp^2 / 2D, MHz

  static DressedPairModel make(double theta, double e_gap, double b_par_script,
                               double e_m);
  /// Built from the perturbative theta and E_gap of the given fields.
  static DressedPairModel from(const PhysicalConstants& c,
                               const FieldConfiguration& f);
};

struct PartiallyDressedBasis {
  Vector3c minus;
  Vector3c plus;
  double e_minus = 0.0;
  double e_plus = 0.0;
};

PartiallyDressedBasis partially_dressed_basis(const DressedPairModel& m);

enum class StateKind { Dressed, PartiallyDressed, StrongAxial };

struct StateClass {
  StateKind kind = StateKind::Dressed;
  double score = 0.0;  // |<S_z>|
};

const char* to_string(StateKind k);

inline constexpr double kDressedThreshold = 0.05;
inline constexpr double kStrongAxialThreshold = 0.95;

/// <v|S_z|v> for 3- or 9-component states. Throws UnnormalizedInput when
/// | ||v|| - 1 | > 1e-8.
double sz_expectation(const VectorXc& v);

StateClass classify_state(const VectorXc& v);

MatrixXc density_matrix(const VectorXc& v);

/// 1/2 Tr|rho - sigma|. Throws InvalidDensityMatrix unless both inputs are
/// Hermitian, unit trace and positive semidefinite within 1e-9.
double trace_distance(const MatrixXc& rho, const MatrixXc& sigma);

/// B_par^2 B_perp^2 / D^3 in MHz: the neglected |0>-mixing energy scale.
double mixing_bound(const PhysicalConstants& c, const FieldConfiguration& f);

}  // namespace nvdressed
