#include "nvdressed/levels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nvdressed/parallel.hpp"

namespace nvdressed {

EigenSolution solve_full(const PhysicalConstants& c, const FieldConfiguration& f) {
  return diagonalize_hermitian(full_hamiltonian(c, f));
}

std::vector<LevelInfo> classify_levels(const EigenSolution& sol) {
  if (sol.size() != 9)
    throw std::invalid_argument("classify_levels: expects a 9-state solution");
  std::vector<LevelInfo> levels(9);
  for (int k = 0; k < 9; ++k) {
    const VectorXc v = sol.vectors.col(k);
    LevelInfo& l = levels[k];
    l.index = k;
    l.energy = sol.values[k];
    l.sz = sol.labels[k].sz;
    l.iz = sol.labels[k].iz.value_or(0.0);
    for (int n = 0; n < 3; ++n) l.p_sz0 += std::norm(v[3 + n]);
    for (int e = 0; e < 3; ++e) l.p_iz0 += std::norm(v[3 * e + 1]);
    l.branch = l.p_sz0 > 0.5 ? Branch::Zero : Branch::Lower;
    if (l.p_iz0 > 0.5)
      l.group = 0;
    else if (l.iz > 0.5)
      l.group = 1;
    else if (l.iz < -0.5)
      l.group = -1;
    else
      l.group = kHybridGroup;
  }

  // Branches are counted per nuclear family |m| rather than per m: the
  // |S_z=0, I_z=+-1> pair is nearly degenerate and may hybridize while the
  // dressed states do not. Within a family the lowest n0 dressed states form
  // the lower branch, n0 being the number of |S_z=0> states of the family.
  auto family = [](const LevelInfo& l) { return l.group == 0 ? 0 : 1; };
  int zero_count[2] = {0, 0};
  for (const auto& l : levels)
    if (l.branch == Branch::Zero) ++zero_count[family(l)];
  int seen[2] = {0, 0};
  for (auto& l : levels) {  // ascending energy
    if (l.branch == Branch::Zero) continue;
    const int fam = family(l);
    l.branch = seen[fam]++ < zero_count[fam] ? Branch::Lower : Branch::Upper;
  }
  return levels;
}

namespace {

int state_of_manifold(const std::vector<LevelInfo>& levels, int m, Branch b) {
  for (const auto& l : levels)
    if (l.group == m && l.branch == b) return l.index;
  return -1;
}

}  // namespace

int lower_state_of_manifold(const std::vector<LevelInfo>& levels, int m) {
  return state_of_manifold(levels, m, Branch::Lower);
}

int upper_state_of_manifold(const std::vector<LevelInfo>& levels, int m) {
  return state_of_manifold(levels, m, Branch::Upper);
}

std::vector<EnergyDiagramRow> energy_diagram(const PhysicalConstants& c,
                                             const FieldConfiguration& f,
                                             const std::vector<double>& b_par,
                                             int threads) {
  std::vector<EnergyDiagramRow> rows(b_par.size());
  parallel_for(b_par.size(), threads, [&](std::size_t i) {
    const EigenSolution sol = solve_full(c, f.with_b_par(b_par[i]));
    EnergyDiagramRow& r = rows[i];
    r.b_par = b_par[i];
    r.energies = sol.values;
    for (const auto& l : sol.labels) {
      r.sz.push_back(l.sz);
      r.iz.push_back(l.iz.value_or(0.0));
    }
  });
  return rows;
}

double dressed_trace_distance(const PhysicalConstants& c,
                              const FieldConfiguration& f, int m,
                              TraceDistanceMode mode) {
  if (m < -1 || m > 1) throw std::invalid_argument("nuclear projection must be -1, 0 or +1");
  const DressedPairModel model = DressedPairModel::from(c, f);
  const Vector3c electron = dressed_minus(model.theta);
  Vector3c nucleus = Vector3c::Zero();
  nucleus[1 - m] = 1.0;
  VectorXc target(9);
  for (int e = 0; e < 3; ++e)
    for (int n = 0; n < 3; ++n) target[3 * e + n] = electron[e] * nucleus[n];

  const EigenSolution sol = solve_full(c, f);
  const std::vector<LevelInfo> levels = classify_levels(sol);
  int best = -1;
  double best_overlap = -1.0;
  for (const auto& l : levels) {
    if (l.branch != Branch::Lower) continue;
    const double ov = std::abs(target.dot(sol.vectors.col(l.index)));
    if (ov > best_overlap) {
      best_overlap = ov;
      best = l.index;
    }
  }
  const VectorXc exact = sol.vectors.col(best);
  if (mode == TraceDistanceMode::Joint)
    return trace_distance(density_matrix(target), density_matrix(exact));

  MatrixXc reduced = MatrixXc::Zero(3, 3);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int n = 0; n < 3; ++n)
        reduced(a, b) += exact[3 * a + n] * std::conj(exact[3 * b + n]);
  return trace_distance(density_matrix(VectorXc(electron)), reduced);
}

std::vector<TraceDistanceRow> trace_distance_scan(const PhysicalConstants& c,
                                                  const FieldConfiguration& f,
                                                  const std::vector<double>& b_par,
                                                  int threads, TraceDistanceMode mode) {
  std::vector<TraceDistanceRow> rows(b_par.size());
  parallel_for(b_par.size(), threads, [&](std::size_t i) {
    const FieldConfiguration fi = f.with_b_par(b_par[i]);
    rows[i].b_par = b_par[i];
    for (int m = -1; m <= 1; ++m) rows[i].d[m + 1] = dressed_trace_distance(c, fi, m, mode);
  });
  return rows;
}

namespace {

struct ManifoldSample {
  double sz = 0.0;
  double gap = 0.0;
  bool ok = false;
};

ManifoldSample sample_manifold(const PhysicalConstants& c,
                               const FieldConfiguration& f, int m) {
  const EigenSolution sol = solve_full(c, f);
  const auto levels = classify_levels(sol);
  const int lo = lower_state_of_manifold(levels, m);
  const int hi = upper_state_of_manifold(levels, m);
  ManifoldSample s;
  if (lo < 0 || hi < 0) return s;
  s.sz = levels[lo].sz;
  s.gap = levels[hi].energy - levels[lo].energy;
  s.ok = true;
  return s;
}

}  // namespace

DressedPoint find_dressed_point(const PhysicalConstants& c,
                                const FieldConfiguration& f, int m,
                                double half_width) {
  if (m != 1 && m != -1) throw std::invalid_argument("dressed point needs m = +/-1");
  const double center = -m * c.a_par / c.gamma_e;
  double a = center - half_width;
  double b = center + half_width;
  ManifoldSample sa = sample_manifold(c, f.with_b_par(a), m);
  const ManifoldSample sb = sample_manifold(c, f.with_b_par(b), m);
  if (!sa.ok || !sb.ok || (sa.sz > 0) == (sb.sz > 0))
    throw std::runtime_error("find_dressed_point: no <S_z> sign change in bracket");
  for (int it = 0; it < 80 && b - a > 1e-13; ++it) {
    const double mid = 0.5 * (a + b);
    const ManifoldSample sm = sample_manifold(c, f.with_b_par(mid), m);
    if (!sm.ok) throw std::runtime_error("find_dressed_point: manifold lost during bisection");
    if ((sm.sz > 0) == (sa.sz > 0)) {
      a = mid;
      sa = sm;
    } else {
      b = mid;
    }
  }
  DressedPoint out;
  out.b_par = 0.5 * (a + b);
  out.gap = sample_manifold(c, f.with_b_par(out.b_par), m).gap;
  out.compensation_residual = c.gamma_e * out.b_par + m * c.a_par;
  return out;
}

double working_point_b_par(const PhysicalConstants& c, char point) {
  switch (point) {
    case 'A': case 'a': return 0.0;
    case 'B': case 'b': return c.a_par / c.gamma_e;
    default: throw std::invalid_argument("working point must be A or B");
  }
}

}  // namespace nvdressed
