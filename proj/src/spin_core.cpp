#include "nvdressed/spin_core.hpp"

#include <cmath>
#include <stdexcept>

namespace nvdressed {

void PhysicalConstants::validate() const {
  if (!(d_gs > 0.0)) throw std::invalid_argument("D_gs must be positive");
  if (!(d_perp > 0.0)) throw std::invalid_argument("d_perp must be positive");
  if (!(gamma_e > 0.0)) throw std::invalid_argument("gamma_e must be positive");
  if (!(std::abs(d_par) < 0.05 * d_perp))
    throw std::invalid_argument("|d_par| must stay below 0.05 d_perp");
  for (double v : {gamma_n, a_par, a_perp, quadrupole})
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite constant");
}

double FieldConfiguration::b_perp() const { return std::hypot(b_x, b_y); }
double FieldConfiguration::phi_b() const { return std::atan2(b_y, b_x); }
double FieldConfiguration::pi_perp() const { return std::hypot(pi_x, pi_y); }
double FieldConfiguration::phi_pi() const { return std::atan2(pi_y, pi_x); }

void FieldConfiguration::validate() const {
  for (double v : {b_x, b_y, b_par, pi_x, pi_y, pi_par})
    if (!std::isfinite(v))
      throw std::invalid_argument("field components must be finite");
}

FieldConfiguration field_preset(std::string_view name) {
  FieldConfiguration f;
  f.pi_x = -124000.0;
  f.pi_y = -94000.0;
  if (name == "main-text") {
    f.b_x = 3.83;
    f.b_y = 3.33;
  } else if (name == "supplementary") {
    f.b_x = 3.89;
    f.b_y = 3.27;
  } else {
    throw std::invalid_argument("unknown preset '" + std::string(name) + "'");
  }
  return f;
}

std::vector<std::string> field_preset_names() {
  return {"main-text", "supplementary"};
}

namespace {

const Matrix3c& identity3() {
  static const Matrix3c id = Matrix3c::Identity();
  return id;
}

}  // namespace

SpinOperatorSet spin1_operators() {
  const double r = 1.0 / std::sqrt(2.0);
  const cplx i(0.0, 1.0);
  Matrix3c sx = Matrix3c::Zero();
  Matrix3c sy = Matrix3c::Zero();
  Matrix3c sz = Matrix3c::Zero();
  sx(0, 1) = sx(1, 0) = sx(1, 2) = sx(2, 1) = r;
  sy(0, 1) = -i * r;
  sy(1, 0) = i * r;
  sy(1, 2) = -i * r;
  sy(2, 1) = i * r;
  sz(0, 0) = 1.0;
  sz(2, 2) = -1.0;
  return {sx, sy, sz, sx, sy, sz};
}

Matrix9c kron(const Matrix3c& electron, const Matrix3c& nucleus) {
  Matrix9c out;
  for (int s1 = 0; s1 < 3; ++s1)
    for (int s2 = 0; s2 < 3; ++s2)
      out.block<3, 3>(3 * s1, 3 * s2) = electron(s1, s2) * nucleus;
  return out;
}

Matrix9c lift_electron(const Matrix3c& op) { return kron(op, identity3()); }
Matrix9c lift_nucleus(const Matrix3c& op) { return kron(identity3(), op); }

Matrix9c SpinOperatorSet::lifted_sx() const { return lift_electron(sx); }
Matrix9c SpinOperatorSet::lifted_sy() const { return lift_electron(sy); }
Matrix9c SpinOperatorSet::lifted_sz() const { return lift_electron(sz); }
Matrix9c SpinOperatorSet::lifted_ix() const { return lift_nucleus(ix); }
Matrix9c SpinOperatorSet::lifted_iy() const { return lift_nucleus(iy); }
Matrix9c SpinOperatorSet::lifted_iz() const { return lift_nucleus(iz); }

namespace {

// -d_perp [Pi_x (Sx^2 - Sy^2) - Pi_y (SxSy + SySx)]
Matrix3c transverse_electric_term(const SpinOperatorSet& s,
                                  const PhysicalConstants& c,
                                  const FieldConfiguration& f) {
  const Matrix3c quad_xy = s.sx * s.sx - s.sy * s.sy;
  const Matrix3c anti_xy = s.sx * s.sy + s.sy * s.sx;
  return -c.d_perp * (f.pi_x * quad_xy - f.pi_y * anti_xy);
}

Matrix3c electron_zeeman(const SpinOperatorSet& s, const PhysicalConstants& c,
                         const FieldConfiguration& f) {
  return c.gamma_e * (f.b_x * s.sx + f.b_y * s.sy + f.b_par * s.sz);
}

}  // namespace

Matrix3c electronic_hamiltonian(const PhysicalConstants& c,
                                const FieldConfiguration& f) {
  const SpinOperatorSet s = spin1_operators();
  const double axial = c.d_gs + c.d_par * f.pi_par;
  Matrix3c h = axial * s.sz * s.sz;
  h += transverse_electric_term(s, c, f);
  h += electron_zeeman(s, c, f);
  return h;
}

Matrix9c full_hamiltonian(const PhysicalConstants& c,
                          const FieldConfiguration& f) {
  const SpinOperatorSet s = spin1_operators();
  const Matrix3c id = Matrix3c::Identity();
  const double axial = c.d_gs + c.d_par * f.pi_par;

  Matrix3c electronic = axial * (s.sz * s.sz - (2.0 / 3.0) * id);
  electronic += transverse_electric_term(s, c, f);
  electronic += electron_zeeman(s, c, f);

  Matrix9c h = lift_electron(electronic);
  h += c.a_par * kron(s.sz, s.iz);
  h += c.a_perp * (kron(s.sx, s.ix) + kron(s.sy, s.iy));
  h += c.quadrupole * lift_nucleus(s.iz * s.iz - (2.0 / 3.0) * id);
  h += c.gamma_n *
       lift_nucleus(f.b_x * s.ix + f.b_y * s.iy + f.b_par * s.iz);
  return h;
}

}  // namespace nvdressed
