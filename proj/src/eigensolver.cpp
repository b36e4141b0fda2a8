#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "nvdressed/eigen.hpp"
#include "nvdressed/errors.hpp"

namespace nvdressed {

void fix_phase(VectorXc& v, double tol) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double mag = std::abs(v[i]);
    if (mag > tol) {
      v *= std::conj(v[i]) / mag;
      v[i] = mag;
      return;
    }
  }
}

namespace {

double frobenius(const MatrixXc& m) { return m.norm(); }

double off_diagonal_norm(const MatrixXc& a) {
  double s = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

// Zero a(p,q) with the unitary acting on columns p, q:
//   [c, s; -s e^{-i phi}, c e^{-i phi}]  where a(p,q) = |a(p,q)| e^{i phi}.
void rotate(MatrixXc& a, MatrixXc& v, Eigen::Index p, Eigen::Index q) {
  const cplx b = a(p, q);
  const double mag = std::abs(b);
  if (mag == 0.0) return;
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();
  const double tau = (aqq - app) / (2.0 * mag);
  const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                   (std::abs(tau) + std::sqrt(1.0 + tau * tau));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;
  const cplx ph = b / mag;  // e^{i phi}
  const cplx phc = std::conj(ph);

  // Columns: A <- A U
  for (Eigen::Index k = 0; k < a.rows(); ++k) {
    const cplx akp = a(k, p);
    const cplx akq = a(k, q);
    a(k, p) = c * akp - s * phc * akq;
    a(k, q) = s * akp + c * phc * akq;
  }
  // Rows: A <- U^dagger A
  for (Eigen::Index k = 0; k < a.cols(); ++k) {
    const cplx apk = a(p, k);
    const cplx aqk = a(q, k);
    a(p, k) = c * apk - s * ph * aqk;
    a(q, k) = s * apk + c * ph * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = a(p, p).real();
  a(q, q) = a(q, q).real();

  for (Eigen::Index k = 0; k < v.rows(); ++k) {
    const cplx vkp = v(k, p);
    const cplx vkq = v(k, q);
    v(k, p) = c * vkp - s * phc * vkq;
    v(k, q) = s * vkp + c * phc * vkq;
  }
}

VectorXc sz_diagonal(int n) {
  // Electron S_z on the major index: +1, 0, -1 blocks of size n/3.
  VectorXc d(n);
  const int block = n / 3;
  for (int i = 0; i < n; ++i) d[i] = 1.0 - static_cast<double>(i / block);
  return d;
}

VectorXc iz_diagonal() {
  VectorXc d(9);
  for (int i = 0; i < 9; ++i) d[i] = 1.0 - static_cast<double>(i % 3);
  return d;
}

double diag_expectation(const VectorXc& v, const VectorXc& d) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) s += std::norm(v[i]) * d[i].real();
  return s;
}

}  // namespace

EigenSolution diagonalize_hermitian(const MatrixXc& h) {
  const Eigen::Index n = h.rows();
  if (h.cols() != n || n < 2 || n > 16)
    throw std::invalid_argument("diagonalize_hermitian: need square 2 <= n <= 16");
  const double hnorm = frobenius(h);
  if (frobenius(h - h.adjoint()) > 1e-10 * std::max(hnorm, 1e-300))
    throw NonHermitianInput("diagonalize_hermitian: matrix is not Hermitian");

  MatrixXc a = 0.5 * (h + h.adjoint());
  MatrixXc v = MatrixXc::Identity(n, n);
  const double scale = std::max(hnorm, 1e-300);
  double previous = off_diagonal_norm(a);
  for (int sweep = 0; sweep < 100; ++sweep) {
    if (previous <= 1e-15 * scale) break;
    for (Eigen::Index p = 0; p < n - 1; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) rotate(a, v, p, q);
    const double off = off_diagonal_norm(a);
    if (off >= previous) break;  // stalled at rounding level
    previous = off;
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> raw(n);
  for (Eigen::Index i = 0; i < n; ++i) raw[i] = a(i, i).real();
  std::stable_sort(order.begin(), order.end(),
                   [&](int x, int y) { return raw[x] < raw[y]; });

  EigenSolution sol;
  sol.values.resize(n);
  sol.vectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    sol.values[k] = raw[order[k]];
    sol.vectors.col(k) = v.col(order[k]);
  }

  const bool labelled = (n == 3 || n == 9);
  const VectorXc szd = labelled ? sz_diagonal(static_cast<int>(n)) : VectorXc();
  const VectorXc izd = (n == 9) ? iz_diagonal() : VectorXc();

  // Degenerate clusters: replace the basis with a deterministic one built by
  // Gram-Schmidt on projected standard basis vectors, then order by labels.
  const double tol = 1e-9 * std::max(1.0, hnorm);
  Eigen::Index start = 0;
  while (start < n) {
    Eigen::Index end = start + 1;
    while (end < n && sol.values[end] - sol.values[end - 1] < tol) ++end;
    const Eigen::Index m = end - start;
    if (m > 1) {
      const MatrixXc block = sol.vectors.middleCols(start, m);
      const MatrixXc proj = block * block.adjoint();
      std::vector<VectorXc> basis;
      for (Eigen::Index e = 0; e < n && static_cast<Eigen::Index>(basis.size()) < m; ++e) {
        VectorXc w = proj.col(e);
        for (const auto& b : basis) w -= b * b.dot(w);
        for (const auto& b : basis) w -= b * b.dot(w);
        const double nw = w.norm();
        if (nw > 1e-6) basis.push_back(w / nw);
      }
      if (static_cast<Eigen::Index>(basis.size()) == m) {
        if (labelled) {
          std::stable_sort(basis.begin(), basis.end(),
                           [&](const VectorXc& x, const VectorXc& y) {
                             const double sx = diag_expectation(x, szd);
                             const double sy = diag_expectation(y, szd);
                             if (std::abs(sx - sy) > 1e-9) return sx > sy;
                             if (n == 9)
                               return diag_expectation(x, izd) >
                                      diag_expectation(y, izd) + 1e-9;
                             return false;
                           });
        }
        for (Eigen::Index k = 0; k < m; ++k) sol.vectors.col(start + k) = basis[k];
      }
    }
    start = end;
  }

  sol.labels.resize(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    VectorXc col = sol.vectors.col(k);
    col.normalize();
    fix_phase(col);
    sol.vectors.col(k) = col;
    if (labelled) {
      sol.labels[k].sz = diag_expectation(col, szd);
      if (n == 9) sol.labels[k].iz = diag_expectation(col, izd);
    }
  }
  return sol;
}

}  // namespace nvdressed
