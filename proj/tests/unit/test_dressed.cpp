#include <doctest.h>

#include "nvdressed/dressed.hpp"
#include "nvdressed/errors.hpp"

using namespace nvdressed;

TEST_CASE("dressed states have vanishing <S_z>") {
  for (double th : {-1.2, 0.0, 0.31, 1.5}) {
    CHECK(std::abs(sz_expectation(dressed_minus(th))) < 1e-15);
    CHECK(std::abs(sz_expectation(dressed_plus(th))) < 1e-15);
    CHECK(classify_state(dressed_minus(th)).kind == StateKind::Dressed);
  }
  Vector3c up = Vector3c::Zero();
  up[0] = 1.0;
  CHECK(sz_expectation(up) == doctest::Approx(1.0));
  CHECK(classify_state(up).kind == StateKind::StrongAxial);
  VectorXc nine = VectorXc::Zero(9);
  nine[3 * 2 + 1] = 1.0;  // |S_z=-1, I_z=0>
  CHECK(sz_expectation(nine) == doctest::Approx(-1.0));
}

TEST_CASE("partially dressed basis under an axial field") {
  const PhysicalConstants c;
  const auto model = DressedPairModel::from(c, field_preset("main-text"));
  CHECK(model.gamma == doctest::Approx(kPi / 2));
  CHECK(model.e_gap > 6.0);

  // B_par equal to E_gap / 2 gives gamma = pi / 4.
  const auto m = DressedPairModel::make(model.theta, model.e_gap, model.e_gap / 2, model.e_m);
  CHECK(m.gamma == doctest::Approx(kPi / 4));
  const auto basis = partially_dressed_basis(m);
  const double sz = sz_expectation(basis.plus);
  CHECK(std::abs(sz) == doctest::Approx(std::cos(m.gamma)).epsilon(1e-12));
  CHECK(classify_state(basis.plus).kind == StateKind::PartiallyDressed);
  CHECK(basis.e_plus - basis.e_minus ==
        doctest::Approx(std::hypot(model.e_gap, 2 * m.b_par_script)).epsilon(1e-12));
}

TEST_CASE("unnormalized states are rejected") {
  Vector3c v = Vector3c::Zero();
  v[1] = 1.1;
  CHECK_THROWS_AS(sz_expectation(v), UnnormalizedInput);
  VectorXc four = VectorXc::Zero(4);
  four[0] = 1.0;
  CHECK_THROWS_AS(sz_expectation(four), std::invalid_argument);
}

TEST_CASE("trace distance") {
  const Vector3c a = dressed_minus(0.2);
  const Vector3c b = dressed_plus(0.2);
  CHECK(trace_distance(density_matrix(a), density_matrix(a)) < 1e-12);
  CHECK(trace_distance(density_matrix(a), density_matrix(b)) == doctest::Approx(1.0));
  // pure states: D = sqrt(1 - |<a|c>|^2)
  const Vector3c cst = (a + 0.5 * b).normalized();
  const double ov = std::abs(a.dot(cst));
  CHECK(trace_distance(density_matrix(a), density_matrix(cst)) ==
        doctest::Approx(std::sqrt(1 - ov * ov)).epsilon(1e-12));
  // mixed versus pure
  const MatrixXc mixed = MatrixXc::Identity(3, 3) / 3.0;
  CHECK(trace_distance(mixed, density_matrix(a)) == doctest::Approx(2.0 / 3.0));

  MatrixXc bad = density_matrix(a);
  bad(0, 0) += 0.5;
  CHECK_THROWS_AS(trace_distance(bad, mixed), InvalidDensityMatrix);
  MatrixXc negative = MatrixXc::Zero(2, 2);
  negative(0, 0) = 1.5;
  negative(1, 1) = -0.5;
  CHECK_THROWS_AS(trace_distance(negative, MatrixXc::Identity(2, 2) / 2.0), InvalidDensityMatrix);
}

TEST_CASE("mixing bound") {
  const PhysicalConstants c;
  FieldConfiguration f = field_preset("main-text");
  CHECK(mixing_bound(c, f) == 0.0);
  f.b_par = 0.1;
  const double bp = c.gamma_e * f.b_par, bt = c.gamma_e * f.b_perp();
  CHECK(mixing_bound(c, f) == doctest::Approx(bp * bp * bt * bt / std::pow(c.d_gs, 3)));
}
