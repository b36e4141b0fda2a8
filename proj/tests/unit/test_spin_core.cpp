#include <doctest.h>

#include <random>

#include "nvdressed/spin_core.hpp"
#include "test_helpers.hpp"

using namespace nvdressed;

namespace {

// Spin-1 matrices written out by hand, basis (+1, 0, -1).
struct Hand {
  Matrix3c sx, sy, sz;
  Hand() {
    const double r = 1.0 / std::sqrt(2.0);
    const cplx i(0.0, 1.0);
    sx << 0, r, 0, r, 0, r, 0, r, 0;
    sy << 0, -i * r, 0, i * r, 0, -i * r, 0, i * r, 0;
    sz << 1, 0, 0, 0, 0, 0, 0, 0, -1;
  }
};

}  // namespace

TEST_CASE("spin-1 operators obey the angular momentum algebra") {
  const auto s = spin1_operators();
  const cplx i(0.0, 1.0);
  CHECK((s.sx * s.sy - s.sy * s.sx - i * s.sz).norm() < 1e-14);
  CHECK((s.sy * s.sz - s.sz * s.sy - i * s.sx).norm() < 1e-14);
  const Matrix3c casimir = s.sx * s.sx + s.sy * s.sy + s.sz * s.sz;
  CHECK((casimir - 2.0 * Matrix3c::Identity()).norm() < 1e-14);
  const Hand h;
  CHECK((s.sx - h.sx).norm() < 1e-15);
  CHECK((s.sy - h.sy).norm() < 1e-15);
}

TEST_CASE("electronic Hamiltonian matches the operator form") {
  const PhysicalConstants c;
  std::mt19937_64 rng(3);
  const Hand s;
  for (int k = 0; k < 50; ++k) {
    FieldConfiguration f = testing::random_transverse(rng, c, 0.15);
    f.b_par = 0.3 * (k % 5 - 2);
    f.pi_par = 1000.0 * k;
    const Matrix3c oracle =
        (c.d_gs + c.d_par * f.pi_par) * s.sz * s.sz +
        c.gamma_e * (f.b_x * s.sx + f.b_y * s.sy + f.b_par * s.sz) -
        c.d_perp * (f.pi_x * (s.sx * s.sx - s.sy * s.sy) -
                    f.pi_y * (s.sx * s.sy + s.sy * s.sx));
    CHECK((electronic_hamiltonian(c, f) - oracle).norm() < 1e-9);
  }
}

TEST_CASE("full Hamiltonian is Hermitian and traceless") {
  const PhysicalConstants c;
  std::mt19937_64 rng(4);
  for (int k = 0; k < 100; ++k) {
    FieldConfiguration f = testing::random_transverse(rng, c, 0.2);
    f.b_par = 0.1 * k - 5.0;
    const Matrix9c h = full_hamiltonian(c, f);
    CHECK((h - h.adjoint()).norm() <= 1e-12 * h.norm());
    CHECK(std::abs(h.trace()) < 1e-9);
  }
}

TEST_CASE("hyperfine block couples only states with equal total projection") {
  const PhysicalConstants c;
  const Matrix9c h = full_hamiltonian(c, FieldConfiguration{});
  for (int a = 0; a < 9; ++a)
    for (int b = 0; b < 9; ++b) {
      const int ma = (1 - a / 3) + (1 - a % 3);
      const int mb = (1 - b / 3) + (1 - b % 3);
      if (ma != mb) CHECK(std::abs(h(a, b)) < 1e-15);
    }
  // |0,+1> <-> |+1,0> flip-flop carries A_perp.
  CHECK(std::abs(h(3 * 1 + 0, 3 * 0 + 1) - c.a_perp) < 1e-12);
}

TEST_CASE("presets and validation") {
  const auto m = field_preset("main-text");
  CHECK(m.b_x == doctest::Approx(3.83));
  CHECK(m.b_y == doctest::Approx(3.33));
  CHECK(m.pi_perp() == doctest::Approx(std::hypot(124000.0, 94000.0)));
  const auto s = field_preset("supplementary");
  CHECK(s.b_perp() == doctest::Approx(std::hypot(3.89, 3.27)));
  CHECK_THROWS_AS(field_preset("lab"), std::invalid_argument);
  CHECK(field_preset_names().size() == 2);

  PhysicalConstants c;
  CHECK_NOTHROW(c.validate());
  c.d_par = c.d_perp;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  FieldConfiguration f;
  f.b_x = std::nan("");
  CHECK_THROWS_AS(f.validate(), std::invalid_argument);
}
