#include <algorithm>
#include <cmath>
#include <limits>

#include "nvdressed/errors.hpp"
#include "nvdressed/fitting.hpp"

namespace nvdressed {

const char* to_string(FitStatus s) {
  switch (s) {
    case FitStatus::Converged: return "converged";
    case FitStatus::MaxIterations: return "max-iterations";
    case FitStatus::Singular: return "singular";
  }
  return "unknown";
}

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

struct Workspace {
  const FitProblem& p;
  std::vector<int> free_idx;
  VectorXd weight;  // 1/sigma

  VectorXd clamp(VectorXd x) const {
    if (p.lower.size() == x.size()) x = x.cwiseMax(p.lower);
    if (p.upper.size() == x.size()) x = x.cwiseMin(p.upper);
    return x;
  }

  VectorXd residual(const VectorXd& x) const {
    const VectorXd m = p.model(x);
    if (m.size() != p.y.size()) throw std::invalid_argument("model size differs from data size");
    return (p.y - m).cwiseProduct(weight);
  }

  // d(model)/d(theta) weighted, central differences over free parameters.
  MatrixXd jacobian(const VectorXd& x) const {
    MatrixXd j(p.y.size(), free_idx.size());
    for (std::size_t c = 0; c < free_idx.size(); ++c) {
      const int k = free_idx[c];
      const double h = 1e-6 * std::max(std::abs(x[k]), 1e-3);
      VectorXd up = x, dn = x;
      up[k] += h;
      dn[k] -= h;
      j.col(c) = (p.model(up) - p.model(dn)).cwiseProduct(weight) / (2.0 * h);
    }
    return j;
  }
};

bool all_finite(const VectorXd& v) { return v.allFinite(); }

}  // namespace

FitResult levenberg_marquardt(const FitProblem& p) {
  const Eigen::Index n = p.initial.size();
  const Eigen::Index m = p.y.size();
  if (!p.model) throw std::invalid_argument("fit problem has no model");
  Workspace ws{p, {}, VectorXd::Ones(m)};
  for (Eigen::Index k = 0; k < n; ++k)
    if (p.free.empty() || p.free[k]) ws.free_idx.push_back(static_cast<int>(k));
  if (p.sigma) {
    if (p.sigma->size() != m) throw std::invalid_argument("sigma size differs from data size");
    for (Eigen::Index i = 0; i < m; ++i) {
      if (!((*p.sigma)[i] > 0.0)) throw std::invalid_argument("sigma entries must be positive");
      ws.weight[i] = 1.0 / (*p.sigma)[i];
    }
  }
  const Eigen::Index nf = static_cast<Eigen::Index>(ws.free_idx.size());
  if (m < nf + 2) throw std::invalid_argument("need at least (free parameters + 2) data points");

  VectorXd x = ws.clamp(p.initial);
  VectorXd r = ws.residual(x);
  if (!all_finite(r)) throw NonFiniteResidual("residual is not finite at the initial guess");
  double cost = 0.5 * r.squaredNorm();

  FitResult out;
  out.status = FitStatus::MaxIterations;
  double lambda = 1e-3;
  MatrixXd j = ws.jacobian(x);
  for (Eigen::Index c = 0; c < nf; ++c)
    if (j.col(c).squaredNorm() == 0.0)
      throw SingularJacobian("parameter " + std::to_string(ws.free_idx[c]) +
                             " does not influence the model");

  int it = 0;
  for (; it < p.max_iterations; ++it) {
    const MatrixXd jtj = j.transpose() * j;
    const VectorXd jtr = j.transpose() * r;
    bool accepted = false;
    bool converged = false;
    while (!accepted) {
      MatrixXd a = jtj;
      for (Eigen::Index c = 0; c < nf; ++c) a(c, c) += lambda * std::max(jtj(c, c), 1e-300);
      const Eigen::LDLT<MatrixXd> ldlt(a);
      VectorXd delta = ldlt.solve(jtr);
      if (ldlt.info() != Eigen::Success || !all_finite(delta)) {
        lambda *= 10.0;
        if (lambda > 1e16) throw SingularJacobian("damped normal equations are singular");
        continue;
      }
      VectorXd trial = x;
      for (Eigen::Index c = 0; c < nf; ++c) trial[ws.free_idx[c]] += delta[c];
      trial = ws.clamp(trial);
      const double step = (trial - x).norm();
      const VectorXd rt = ws.residual(trial);
      const double ct = all_finite(rt) ? 0.5 * rt.squaredNorm()
                                       : std::numeric_limits<double>::infinity();
      if (ct <= cost) {
        const double rel = (cost - ct) / std::max(cost, 1e-300);
        x = trial;
        r = rt;
        cost = ct;
        lambda = std::max(lambda / 10.0, 1e-12);
        accepted = true;
        converged = rel < p.cost_tolerance || step < p.step_tolerance || cost < 1e-300;
      } else {
        lambda *= 10.0;
        if (lambda > 1e12 || step < p.step_tolerance) {
          // No downhill step exists at any damping: a stationary point.
          accepted = true;
          converged = true;
        }
      }
    }
    if (converged) {
      out.status = FitStatus::Converged;
      ++it;
      break;
    }
    j = ws.jacobian(x);
  }
  out.iterations = it;

  j = ws.jacobian(x);
  const MatrixXd jtj = j.transpose() * j;
  out.params = x;
  out.residuals = r.cwiseQuotient(ws.weight);
  out.gradient = j.transpose() * r;
  out.chi2 = r.squaredNorm();
  const double dof = static_cast<double>(m - nf);
  out.chi2_reduced = out.chi2 / dof;
  out.errors = VectorXd::Zero(n);
  out.covariance = MatrixXd::Zero(n, n);

  const Eigen::FullPivLU<MatrixXd> lu(jtj);
  if (nf > 0 && !lu.isInvertible()) {
    out.status = FitStatus::Singular;
    out.errors.setConstant(std::numeric_limits<double>::infinity());
    return out;
  }
  MatrixXd cov = nf > 0 ? MatrixXd(lu.inverse()) : MatrixXd(0, 0);
  if (!p.sigma) cov *= out.chi2_reduced;
  for (Eigen::Index a = 0; a < nf; ++a) {
    for (Eigen::Index b = 0; b < nf; ++b)
      out.covariance(ws.free_idx[a], ws.free_idx[b]) = cov(a, b);
    out.errors[ws.free_idx[a]] = std::sqrt(std::max(0.0, cov(a, a)));
  }
  return out;
}

}  // namespace nvdressed
