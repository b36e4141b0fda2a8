#pragma once

// Allowed |S_z=0> -> dressed-branch transitions, CW-ODMR lineshapes and the
// zero-field splitting produced by the effective electric field.

#include <utility>
#include <vector>

#include "nvdressed/levels.hpp"

namespace nvdressed {

struct ResonanceLabel {
  double sz = 0.0;
  double iz = 0.0;
};

struct Resonance {
  double freq = 0.0;  // MHz
  ResonanceLabel lower;  // the |S_z=0> side
  ResonanceLabel upper;  // the dressed-branch side
  double weight = 0.0;
};

using ResonanceSet = std::vector<Resonance>;

enum class BranchSelect { Lower, Upper };

// Lines of one nuclear family split by the ~14 kHz hybridization of the
// |S_z=0, I_z=+-1> states are one resonance at ODMR linewidths.
inline constexpr double kMergeToleranceMHz = 0.050;
inline constexpr double kMinTransitionStrength = 0.01;

/// Transitions |S_z=0 branch> -> selected branch within each nuclear group,
/// weighted by sum_k |<f|S_k|i>|^2 (k = x, y). Lines closer than
/// merge_tolerance (MHz) are merged with summed weight. Sorted by frequency.
ResonanceSet resonance_frequencies(const PhysicalConstants& c,
                                   const FieldConfiguration& f,
                                   BranchSelect branch = BranchSelect::Lower,
                                   double merge_tolerance = kMergeToleranceMHz);

/// Unit-peak Lorentzian with full width at half maximum `linewidth`.
double lorentzian(double nu, double center, double linewidth);

/// 1 - sum_k contrast * weight_k * L(nu; nu_k, linewidth).
std::vector<double> odmr_lineshape(const ResonanceSet& res, double linewidth,
                                   double contrast, const std::vector<double>& grid);

/// 2 d_perp |Pi_perp|, MHz.
double zero_field_splitting(const FieldConfiguration& f, const PhysicalConstants& c);

/// Inverse of zero_field_splitting for a known in-plane angle: (Pi_x, Pi_y).
std::pair<double, double> reconstruct_transverse_pi(double splitting, double phi_pi,
                                                    const PhysicalConstants& c);

}  // namespace nvdressed
