#include "nvdressed/dressed.hpp"

#include <cmath>

#include "nvdressed/errors.hpp"

namespace nvdressed {

DressedPairModel DressedPairModel::make(double theta, double e_gap,
                                        double b_par_script, double e_m) {
  DressedPairModel m;
  m.theta = theta;
  m.e_gap = e_gap;
  m.b_par_script = b_par_script;
  m.e_m = e_m;
  m.gamma = std::atan2(0.5 * e_gap, b_par_script);
  return m;
}

DressedPairModel DressedPairModel::from(const PhysicalConstants& c,
                                        const FieldConfiguration& f) {
  const PerturbationParams p = PerturbationParams::from(c, f);
  const PerturbativeSpectrum s = perturbative_spectrum(p, f.phi_b(), f.phi_pi());
  const double b = p.b_perp_script;
  return make(s.theta, s.e_gap, p.b_par_script, c.d_gs + b * b / (2.0 * c.d_gs));
}

PartiallyDressedBasis partially_dressed_basis(const DressedPairModel& m) {
  const double sg = std::sin(0.5 * m.gamma);
  const double cg = std::cos(0.5 * m.gamma);
  const cplx em = std::polar(1.0, -m.theta);
  const cplx ep = std::polar(1.0, m.theta);
  const double half = std::hypot(0.5 * m.e_gap, m.b_par_script);

  PartiallyDressedBasis out;
  out.minus = Vector3c(sg * em, 0.0, -cg * ep);
  out.plus = Vector3c(cg * em, 0.0, sg * ep);
  out.e_minus = m.e_m - half;
  out.e_plus = m.e_m + half;
  return out;
}

const char* to_string(StateKind k) {
  switch (k) {
    case StateKind::Dressed: return "dressed";
    case StateKind::PartiallyDressed: return "partially-dressed";
    case StateKind::StrongAxial: return "strong-axial";
  }
  return "unknown";
}

double sz_expectation(const VectorXc& v) {
  if (v.size() != 3 && v.size() != 9)
    throw std::invalid_argument("sz_expectation: state must have 3 or 9 components");
  if (std::abs(v.norm() - 1.0) > 1e-8)
    throw UnnormalizedInput("sz_expectation: state is not normalized");
  const Eigen::Index block = v.size() / 3;
  double up = 0.0, down = 0.0;
  for (Eigen::Index i = 0; i < block; ++i) {
    up += std::norm(v[i]);
    down += std::norm(v[2 * block + i]);
  }
  return up - down;
}

StateClass classify_state(const VectorXc& v) {
  const double score = std::abs(sz_expectation(v));
  StateClass out;
  out.score = score;
  if (score < kDressedThreshold)
    out.kind = StateKind::Dressed;
  else if (score > kStrongAxialThreshold)
    out.kind = StateKind::StrongAxial;
  else
    out.kind = StateKind::PartiallyDressed;
  return out;
}

MatrixXc density_matrix(const VectorXc& v) { return v * v.adjoint(); }

namespace {

void check_density(const MatrixXc& rho, const char* name) {
  constexpr double tol = 1e-9;
  if (rho.rows() != rho.cols())
    throw InvalidDensityMatrix(std::string(name) + " is not square");
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > tol)
    throw InvalidDensityMatrix(std::string(name) + " is not Hermitian");
  if (std::abs(rho.trace() - cplx(1.0)) > tol)
    throw InvalidDensityMatrix(std::string(name) + " does not have unit trace");
  const EigenSolution es = diagonalize_hermitian(0.5 * (rho + rho.adjoint()));
  if (es.values.front() < -tol)
    throw InvalidDensityMatrix(std::string(name) + " is not positive semidefinite");
}

}  // namespace

double trace_distance(const MatrixXc& rho, const MatrixXc& sigma) {
  if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols())
    throw InvalidDensityMatrix("trace_distance: dimension mismatch");
  check_density(rho, "rho");
  check_density(sigma, "sigma");
  const MatrixXc delta = rho - sigma;
  const MatrixXc herm = 0.5 * (delta + delta.adjoint());
  double sum = 0.0;
  for (double v : diagonalize_hermitian(herm).values) sum += std::abs(v);
  return 0.5 * sum;
}

double mixing_bound(const PhysicalConstants& c, const FieldConfiguration& f) {
  const double bpar = c.gamma_e * f.b_par;
  const double bperp = c.gamma_e * f.b_perp();
  return bpar * bpar * bperp * bperp / (c.d_gs * c.d_gs * c.d_gs);
}

}  // namespace nvdressed
