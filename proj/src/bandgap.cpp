#include "thermodisp/bandgap.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "thermodisp/errors.hpp"

namespace thermodisp {

namespace {

bool propagating(const Branch& b, const BranchPoint& pt, double tol) {
  return is_propagating_label(b.label) && pt.omega.real() > 0.0 &&
         std::abs(pt.omega.imag()) <= tol * std::abs(pt.omega.real());
}

double largest_cutoff(const MaterialParams& p) {
  double m = 0.0;
  for (const Cutoff& c : cutoffs(p)) m = std::max(m, c.omega);
  return m;
}

// Highest Re w reached by a propagating branch at the last wavenumber.
double reach(std::span<const BranchSet> sets) {
  double top = 0.0;
  for (const BranchSet& s : sets)
    for (const Branch& b : s.branches)
      if (!b.points.empty() && propagating(b, b.points.back(), s.tol_damping))
        top = std::max(top, b.points.back().omega.real());
  return top;
}

void check_grid(std::span<const double> grid) {
  if (grid.size() < 2) throw std::invalid_argument("detect_band_gaps: frequency grid needs at least 2 nodes");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1])) throw std::invalid_argument("detect_band_gaps: frequency grid must be increasing");
}

std::vector<BandGap> gaps_below(std::span<const BranchSet> sets, std::span<const double> grid, double clip) {
  const std::size_t cells = grid.size() - 1;
  std::vector<bool> occupied(cells, false);
  auto mark = [&](double a, double b) {
    if (a > b) std::swap(a, b);
    // first cell whose upper node is >= a
    auto lo = std::lower_bound(grid.begin() + 1, grid.end(), a) - (grid.begin() + 1);
    for (auto j = static_cast<std::size_t>(lo); j < cells && grid[j] <= b; ++j) occupied[j] = true;
  };

  for (const BranchSet& s : sets) {
    for (const Branch& b : s.branches) {
      const auto& pts = b.points;
      for (std::size_t i = 0; i < pts.size(); ++i) {
        if (!propagating(b, pts[i], s.tol_damping)) continue;
        const bool next = i + 1 < pts.size() && propagating(b, pts[i + 1], s.tol_damping);
        mark(pts[i].omega.real(), next ? pts[i + 1].omega.real() : pts[i].omega.real());
      }
    }
  }

  std::vector<SystemKind> kinds;
  for (const BranchSet& s : sets) kinds.push_back(s.system);
  const double tol = sets.empty() ? 1e-3 : sets.front().tol_damping;

  std::vector<BandGap> out;
  std::size_t j = 0;
  while (j < cells) {
    if (occupied[j] || grid[j] >= clip) {
      ++j;
      continue;
    }
    std::size_t end = j;
    while (end < cells && !occupied[end] && grid[end] < clip) ++end;
    if (end - j > 2) out.push_back({grid[j], std::min(grid[end], clip), kinds, tol});
    j = end;
  }
  return out;
}

}  // namespace

std::vector<double> default_omega_grid(const MaterialParams& p, int cells) {
  if (cells < 3) throw std::invalid_argument("default_omega_grid: need at least 3 cells");
  const double top = 2.0 * largest_cutoff(p);
  std::vector<double> g(cells + 1);
  for (int i = 0; i <= cells; ++i) g[i] = top * i / cells;
  return g;
}

std::vector<BandGap> detect_band_gaps(std::span<const BranchSet> sets, std::span<const double> omega_grid) {
  check_grid(omega_grid);
  if (sets.empty()) throw std::invalid_argument("detect_band_gaps: no branch sets");
  const double needed = 2.0 * largest_cutoff(sets.front().params);
  const double top = reach(sets);
  if (top < needed) {
    std::ostringstream os;
    os << "detect_band_gaps: wavenumber range too short; branches reach " << top << " rad/s at k_max but "
       << needed << " rad/s (twice the largest cutoff) is required";
    throw PreconditionError(os.str());
  }
  return gaps_below(sets, omega_grid, std::min(top, omega_grid.back()));
}

double total_width(std::span<const BandGap> gaps) {
  double w = 0.0;
  for (const BandGap& g : gaps) w += g.width();
  return w;
}

BandGapAnalysis analyze_band_gaps(const MaterialParams& p, std::span<const double> k_grid,
                                  std::span<const double> omega_grid, const SweepOptions& options) {
  BandGapAnalysis a;
  for (SystemKind kind : {SystemKind::Longitudinal5, SystemKind::Transverse3, SystemKind::Uncoupled1})
    a.sets.push_back(sweep(p, kind, k_grid, options));
  a.joint = detect_band_gaps(a.sets, omega_grid);
  const double clip = std::min(reach(a.sets), omega_grid.back());
  for (const BranchSet& s : a.sets)
    a.per_system.emplace_back(s.system, gaps_below(std::span(&s, 1), omega_grid, clip));
  return a;
}

}  // namespace thermodisp
