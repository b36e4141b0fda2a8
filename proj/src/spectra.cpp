#include "nvdressed/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nvdressed {

ResonanceSet resonance_frequencies(const PhysicalConstants& c,
                                   const FieldConfiguration& f,
                                   BranchSelect branch, double merge_tolerance) {
  const EigenSolution sol = solve_full(c, f);
  const std::vector<LevelInfo> levels = classify_levels(sol);
  const SpinOperatorSet ops = spin1_operators();
  const Matrix9c sx = ops.lifted_sx();
  const Matrix9c sy = ops.lifted_sy();
  const Branch wanted = branch == BranchSelect::Lower ? Branch::Lower : Branch::Upper;

  ResonanceSet lines;
  for (const auto& i : levels) {
    if (i.branch != Branch::Zero) continue;
    const Vector9c vi = sol.vectors.col(i.index);
    for (const auto& fl : levels) {
      if (fl.branch != wanted) continue;  // Delta I_z = 0 is enforced by the strength
      const Vector9c vf = sol.vectors.col(fl.index);
      const double strength =
          std::norm(vf.dot(sx * vi)) + std::norm(vf.dot(sy * vi));
      if (strength < kMinTransitionStrength) continue;
      Resonance r;
      r.freq = std::abs(fl.energy - i.energy);
      r.lower = {i.sz, i.iz};
      r.upper = {fl.sz, fl.iz};
      r.weight = strength;
      lines.push_back(r);
    }
  }
  std::sort(lines.begin(), lines.end(),
            [](const Resonance& a, const Resonance& b) { return a.freq < b.freq; });

  // Merge chains of lines closer than the tolerance; the merged frequency is
  // the weight-averaged one and labels come from the strongest member.
  ResonanceSet merged;
  for (std::size_t k = 0; k < lines.size();) {
    std::size_t e = k + 1;
    while (e < lines.size() && lines[e].freq - lines[e - 1].freq < merge_tolerance) ++e;
    Resonance m = lines[k];
    double wsum = 0.0, fsum = 0.0, best = -1.0;
    for (std::size_t j = k; j < e; ++j) {
      wsum += lines[j].weight;
      fsum += lines[j].weight * lines[j].freq;
      if (lines[j].weight > best) {
        best = lines[j].weight;
        m.lower = lines[j].lower;
        m.upper = lines[j].upper;
      }
    }
    m.freq = fsum / wsum;
    m.weight = wsum;
    merged.push_back(m);
    k = e;
  }
  return merged;
}

double lorentzian(double nu, double center, double linewidth) {
  const double x = 2.0 * (nu - center) / linewidth;
  return 1.0 / (1.0 + x * x);
}

std::vector<double> odmr_lineshape(const ResonanceSet& res, double linewidth,
                                   double contrast, const std::vector<double>& grid) {
  if (!(linewidth > 0.0)) throw std::invalid_argument("linewidth must be positive");
  std::vector<double> out(grid.size(), 1.0);
  for (std::size_t i = 0; i < grid.size(); ++i)
    for (const auto& r : res)
      out[i] -= contrast * r.weight * lorentzian(grid[i], r.freq, linewidth);
  return out;
}

double zero_field_splitting(const FieldConfiguration& f, const PhysicalConstants& c) {
  return 2.0 * c.d_perp * f.pi_perp();
}

std::pair<double, double> reconstruct_transverse_pi(double splitting, double phi_pi,
                                                    const PhysicalConstants& c) {
  if (!(splitting >= 0.0)) throw std::invalid_argument("splitting must be non-negative");
  const double mag = splitting / (2.0 * c.d_perp);
  return {mag * std::cos(phi_pi), mag * std::sin(phi_pi)};
}

}  // namespace nvdressed
