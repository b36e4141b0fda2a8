#pragma once

// Projection of a lab-frame field onto the four NV orientations of the
// diamond lattice.
//
// Each family carries a fixed transverse frame: e_x is the lab [100]
// direction projected onto the plane orthogonal to the NV axis (normalized),
// and e_y = axis x e_x. In-plane angles phi_B are measured in that frame.

#include <array>

#include <Eigen/Dense>

namespace nvdressed {

struct NVFamily {
  int label = 1;  // 1..4
  Eigen::Vector3d axis;
  Eigen::Vector3d e_x;
  Eigen::Vector3d e_y;
};

/// Families with axes [111], [1-1-1], [-11-1], [-1-11] (normalized).
const std::array<NVFamily, 4>& nv_families();

struct FamilyProjection {
  int label = 1;
  double b_par = 0.0;   // mT
  double b_perp = 0.0;  // mT
  double phi_b = 0.0;   // rad, in the family frame
  double b_x = 0.0;     // transverse components in the family frame, mT
  double b_y = 0.0;
};

std::array<FamilyProjection, 4> family_projection(const Eigen::Vector3d& b_lab);

/// Lab-frame vector whose components in family `label`'s frame are
/// (b_x, b_y, b_par).
Eigen::Vector3d to_lab(int label, double b_x, double b_y, double b_par);

}  // namespace nvdressed
