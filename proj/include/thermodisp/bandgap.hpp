#pragma once

#include <span>
#include <utility>
#include <vector>

#include "thermodisp/branches.hpp"

namespace thermodisp {

/// Frequency interval in which no propagating branch has a point.
struct BandGap {
  double lo = 0.0;
  double hi = 0.0;
  std::vector<SystemKind> systems_covered;
  double tol_damping = 1e-3;

  double width() const { return hi - lo; }
};

/// Uniform grid on [0, 2 * largest cutoff].
std::vector<double> default_omega_grid(const MaterialParams& p, int cells = 2000);

/// Occupancy of omega_grid cells by propagating branch points (non-THERMAL,
/// Re w > 0, |Im w| <= tol |Re w|), linearly interpolated between sweep points.
/// Unoccupied runs longer than 2 cells are returned, clipped to the highest
/// frequency the branches reach at k_max. Throws PreconditionError when that
/// reach is below twice the largest cutoff.
std::vector<BandGap> detect_band_gaps(std::span<const BranchSet> sets, std::span<const double> omega_grid);

double total_width(std::span<const BandGap> gaps);

struct BandGapAnalysis {
  std::vector<BranchSet> sets;
  std::vector<BandGap> joint;
  std::vector<std::pair<SystemKind, std::vector<BandGap>>> per_system;
};

/// Sweeps all three systems and reports joint and per-system gaps.
BandGapAnalysis analyze_band_gaps(const MaterialParams& p, std::span<const double> k_grid,
                                  std::span<const double> omega_grid, const SweepOptions& options = {});

}  // namespace thermodisp
