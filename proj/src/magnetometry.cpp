#include "nvdressed/magnetometry.hpp"

#include <cmath>
#include <stdexcept>

namespace nvdressed {

namespace {

NVFamily make_family(int label, double x, double y, double z) {
  NVFamily f;
  f.label = label;
  f.axis = Eigen::Vector3d(x, y, z).normalized();
  const Eigen::Vector3d lab_x(1.0, 0.0, 0.0);
  f.e_x = (lab_x - lab_x.dot(f.axis) * f.axis).normalized();
  f.e_y = f.axis.cross(f.e_x);
  return f;
}

}  // namespace

const std::array<NVFamily, 4>& nv_families() {
  static const std::array<NVFamily, 4> families = {
      make_family(1, 1, 1, 1),
      make_family(2, 1, -1, -1),
      make_family(3, -1, 1, -1),
      make_family(4, -1, -1, 1),
  };
  return families;
}

std::array<FamilyProjection, 4> family_projection(const Eigen::Vector3d& b_lab) {
  std::array<FamilyProjection, 4> out;
  const auto& fams = nv_families();
  for (std::size_t k = 0; k < 4; ++k) {
    const NVFamily& f = fams[k];
    FamilyProjection& p = out[k];
    p.label = f.label;
    p.b_par = b_lab.dot(f.axis);
    p.b_x = b_lab.dot(f.e_x);
    p.b_y = b_lab.dot(f.e_y);
    p.b_perp = std::hypot(p.b_x, p.b_y);
    p.phi_b = std::atan2(p.b_y, p.b_x);
  }
  return out;
}

Eigen::Vector3d to_lab(int label, double b_x, double b_y, double b_par) {
  if (label < 1 || label > 4) throw std::invalid_argument("NV family label must be 1..4");
  const NVFamily& f = nv_families()[label - 1];
  return b_x * f.e_x + b_y * f.e_y + b_par * f.axis;
}

}  // namespace nvdressed
