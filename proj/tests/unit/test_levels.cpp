#include <doctest.h>

#include <Eigen/Eigenvalues>

#include "nvdressed/levels.hpp"

using namespace nvdressed;

TEST_CASE("nine levels split into three branches of three") {
  const PhysicalConstants c;
  for (double b : {-0.3, -0.077, 0.0, 0.05, 0.3}) {
    const auto sol = solve_full(c, field_preset("main-text").with_b_par(b));
    const auto levels = classify_levels(sol);
    int count[3] = {0, 0, 0};
    for (const auto& l : levels) ++count[static_cast<int>(l.branch)];
    CHECK(count[0] == 3);
    CHECK(count[1] == 3);
    CHECK(count[2] == 3);
    for (const auto& l : levels) {
      if (l.branch == Branch::Zero) CHECK(l.p_sz0 > 0.9);
      if (l.branch != Branch::Zero) CHECK(l.p_sz0 < 0.1);
    }
  }
}

TEST_CASE("energy diagram matches a direct diagonalization and ignores thread count") {
  const PhysicalConstants c;
  const FieldConfiguration f = field_preset("main-text");
  std::vector<double> b;
  for (int i = 0; i <= 40; ++i) b.push_back(-0.4 + 0.02 * i);
  const auto one = energy_diagram(c, f, b, 1);
  const auto four = energy_diagram(c, f, b, 4);
  REQUIRE(one.size() == b.size());
  for (std::size_t i = 0; i < b.size(); ++i) {
    CHECK(one[i].energies == four[i].energies);
    CHECK(one[i].sz == four[i].sz);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(Eigen::MatrixXcd(full_hamiltonian(c, f.with_b_par(b[i]))));
    for (int k = 0; k < 9; ++k) CHECK(std::abs(one[i].energies[k] - es.eigenvalues()[k]) < 1e-9);
  }
}

TEST_CASE("dressed points sit at the hyperfine compensation field") {
  const PhysicalConstants c;
  const FieldConfiguration f = field_preset("main-text");
  const auto s = DressedPairModel::from(c, f);
  for (int m : {-1, 1}) {
    const DressedPoint p = find_dressed_point(c, f, m);
    CHECK(p.b_par == doctest::Approx(-m * c.a_par / c.gamma_e).epsilon(0.01));
    CHECK(std::abs(p.compensation_residual) < 0.002);
    CHECK(p.gap == doctest::Approx(s.e_gap).epsilon(0.1));
  }
  CHECK_THROWS_AS(find_dressed_point(c, f, 0), std::invalid_argument);
}

TEST_CASE("working points") {
  const PhysicalConstants c;
  CHECK(working_point_b_par(c, 'A') == 0.0);
  CHECK(working_point_b_par(c, 'B') == doctest::Approx(c.a_par / c.gamma_e));
  CHECK_THROWS(working_point_b_par(c, 'C'));
}

TEST_CASE("trace distance scan grows away from B_par = 0") {
  const PhysicalConstants c;
  const FieldConfiguration f = field_preset("main-text");
  const std::vector<double> b = {0.0, 0.02, 0.05, 0.1, 0.2};
  for (auto mode : {TraceDistanceMode::Joint, TraceDistanceMode::Electronic}) {
    const auto rows = trace_distance_scan(c, f, b, 2, mode);
    for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].d[1] > rows[i - 1].d[1]);
    for (const auto& r : rows)
      for (double d : r.d) {
        CHECK(d >= 0.0);
        CHECK(d <= 1.0);
      }
  }
  // Electronic distances never exceed joint ones (partial trace is contractive).
  for (double bp : b)
    for (int m = -1; m <= 1; ++m)
      CHECK(dressed_trace_distance(c, f.with_b_par(bp), m, TraceDistanceMode::Electronic) <=
            dressed_trace_distance(c, f.with_b_par(bp), m) + 1e-12);
}

TEST_CASE("without nuclear couplings the I_z=0 state is the product |->_theta|0>") {
  PhysicalConstants c;
  c.a_par = c.a_perp = c.quadrupole = c.gamma_n = 0.0;
  const double d = dressed_trace_distance(c, field_preset("main-text"), 0);
  // Only the O(zeta) admixture of |S_z=0> remains.
  const double zeta = PerturbationParams::from(c, field_preset("main-text")).zeta;
  CHECK(d < 0.5 * zeta);
}
