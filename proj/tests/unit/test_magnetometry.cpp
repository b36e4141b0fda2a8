#include <doctest.h>

#include <random>

#include "nvdressed/magnetometry.hpp"

using namespace nvdressed;

TEST_CASE("family frames are right-handed orthonormal triads") {
  for (const auto& f : nv_families()) {
    CHECK(f.axis.norm() == doctest::Approx(1.0));
    CHECK(f.e_x.norm() == doctest::Approx(1.0));
    CHECK(std::abs(f.axis.dot(f.e_x)) < 1e-15);
    CHECK((f.axis.cross(f.e_x) - f.e_y).norm() < 1e-15);
  }
  // tetrahedral axes: pairwise cosines are -1/3
  const auto& fs = nv_families();
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) CHECK(fs[i].axis.dot(fs[j].axis) == doctest::Approx(-1.0 / 3.0));
}

TEST_CASE("projections are consistent with the field vector") {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> g(0.0, 3.0);
  for (int k = 0; k < 50; ++k) {
    const Eigen::Vector3d b(g(rng), g(rng), g(rng));
    const auto proj = family_projection(b);
    double sum_par2 = 0.0;
    for (const auto& p : proj) {
      CHECK(p.b_par * p.b_par + p.b_perp * p.b_perp == doctest::Approx(b.squaredNorm()));
      CHECK(std::hypot(p.b_x, p.b_y) == doctest::Approx(p.b_perp));
      CHECK((to_lab(p.label, p.b_x, p.b_y, p.b_par) - b).norm() < 1e-12);
      sum_par2 += p.b_par * p.b_par;
    }
    // sum of squared projections onto four tetrahedral axes is 4/3 |B|^2
    CHECK(sum_par2 == doctest::Approx(4.0 / 3.0 * b.squaredNorm()));
  }
}

TEST_CASE("supplementary field on family 1") {
  const Eigen::Vector3d lab = to_lab(1, 3.89, 3.27, 0.0);
  const auto proj = family_projection(lab);
  CHECK(proj[0].b_perp == doctest::Approx(5.08).epsilon(0.005));
  CHECK(std::abs(proj[0].b_par) < 1e-12);
  CHECK(proj[0].phi_b == doctest::Approx(std::atan2(3.27, 3.89)));
  CHECK_THROWS(to_lab(5, 0, 0, 0));
}
