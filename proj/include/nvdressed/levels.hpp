#pragma once

// Labelling of the nine electron-nuclear eigenstates into the |S_z=0> branch
// and the lower/upper dressed branches of each nuclear manifold, and the
// B_par sweeps built on top of it.

#include <vector>

#include "nvdressed/dressed.hpp"

namespace nvdressed {

enum class Branch { Zero, Lower, Upper };

// Nuclear group of a state: the dominant I_z, or kHybridGroup for states
// mixing I_z = +1 and -1 (near B_par = 0).
inline constexpr int kHybridGroup = 2;

struct LevelInfo {
  int index = 0;         // column in the EigenSolution
  double energy = 0.0;   // MHz
  double sz = 0.0;
  double iz = 0.0;
  double p_sz0 = 0.0;    // population of |S_z=0>
  double p_iz0 = 0.0;    // population of |I_z=0>
  Branch branch = Branch::Zero;
  int group = 0;         // -1, 0, +1 or kHybridGroup
};

EigenSolution solve_full(const PhysicalConstants& c, const FieldConfiguration& f);

std::vector<LevelInfo> classify_levels(const EigenSolution& sol);

/// Index of the lower (upper) branch state whose group is m, or -1 if the
/// manifold is hybridized.
int lower_state_of_manifold(const std::vector<LevelInfo>& levels, int m);
int upper_state_of_manifold(const std::vector<LevelInfo>& levels, int m);

struct EnergyDiagramRow {
  double b_par = 0.0;
  std::vector<double> energies;
  std::vector<double> sz;
  std::vector<double> iz;
};

/// Exact 9x9 spectrum at each B_par (mT); the transverse fields come from f.
std::vector<EnergyDiagramRow> energy_diagram(const PhysicalConstants& c,
                                             const FieldConfiguration& f,
                                             const std::vector<double>& b_par,
                                             int threads = 1);

struct TraceDistanceRow {
  double b_par = 0.0;
  double d[3] = {0.0, 0.0, 0.0};  // I_z = -1, 0, +1
};

// Joint compares 9-dim pure states. Electronic compares |->_theta with the
// exact eigenstate's reduced density matrix after tracing out the nucleus.
enum class TraceDistanceMode { Joint, Electronic };

/// Distance between |->_theta (x) |m> and the lower-branch exact eigenstate
/// with the largest overlap to it.
double dressed_trace_distance(const PhysicalConstants& c,
                              const FieldConfiguration& f, int m,
                              TraceDistanceMode mode = TraceDistanceMode::Joint);

std::vector<TraceDistanceRow> trace_distance_scan(const PhysicalConstants& c,
                                                  const FieldConfiguration& f,
                                                  const std::vector<double>& b_par,
                                                  int threads = 1,
                                                  TraceDistanceMode mode = TraceDistanceMode::Joint);

struct DressedPoint {
  double b_par = 0.0;      // mT, where the lower state of manifold m has <S_z> = 0
  double gap = 0.0;        // upper minus lower energy of manifold m there, MHz
  double compensation_residual = 0.0;  // gamma_e B_par + m A_par, MHz
};

/// Bisection for the dressed point of manifold m (m = -1 or +1) within
/// +/- half_width mT of the hyperfine compensation field -m A_par / gamma_e.
DressedPoint find_dressed_point(const PhysicalConstants& c,
                                const FieldConfiguration& f, int m,
                                double half_width = 0.03);

/// B_par of the named working point: "A" -> 0, "B" -> A_par / gamma_e, the
/// field at which the I_z = -1 manifold is dressed again.
double working_point_b_par(const PhysicalConstants& c, char point);

}  // namespace nvdressed
