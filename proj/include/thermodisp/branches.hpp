#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "thermodisp/material.hpp"
#include "thermodisp/wave_systems.hpp"

namespace thermodisp {

enum class BranchLabel { LA, LO, TA, TO, TSO_TCVO, THERMAL };

std::string_view to_string(BranchLabel label);
bool is_propagating_label(BranchLabel label);

struct BranchPoint {
  double k = 0.0;
  Complex omega{};
  double residual = 0.0;
};

struct Branch {
  SystemKind system = SystemKind::Longitudinal5;
  BranchLabel label = BranchLabel::LA;
  /// 1-based ordinal within the label.
  int index = 1;
  std::vector<BranchPoint> points;
  /// Re(omega) at k = 0 (linearly extrapolated when the grid starts above 0).
  std::optional<double> cutoff;

  std::string name() const { return std::string(to_string(label)) + std::to_string(index); }
};

struct LinkAmbiguity {
  double k = 0.0;
  std::string detail;
};

struct BranchSet {
  MaterialParams params;
  SystemKind system = SystemKind::Longitudinal5;
  std::vector<double> k_grid;
  std::vector<Branch> branches;
  std::vector<LinkAmbiguity> ambiguities;
  double tol_damping = 1e-3;

  int count(BranchLabel label) const;
};

struct SweepOptions {
  double tol_damping = 1e-3;
  /// 0 selects std::thread::hardware_concurrency().
  unsigned threads = 0;
};

/// k = 0, a geometric run over [1e-4, 5e-2] * k_max, then a uniform run up to k_max.
std::vector<double> default_k_grid(double k_max = 1.0e4, int points = 400);

/// Collapses each pair (w, -conj(w)) to its Re(w) >= 0 member. Near-imaginary
/// roots are self-symmetric; coincident ones (e.g. at k = 0) pair up.
std::vector<Complex> symmetric_representatives(std::span<const Complex> rs, double scale);

/// Throws std::invalid_argument when the grid is empty, not strictly
/// increasing, or contains negative wavenumbers.
BranchSet sweep(const MaterialParams& p, SystemKind kind, std::span<const double> k_grid,
                const SweepOptions& options = {});

/// THERMAL for a branch pinned at zero or damped beyond tol_damping on most
/// points; otherwise acoustic/optic by cutoff within the branch's system.
BranchLabel classify(const Branch& b, double tol_damping, double omega_scale);

struct Cutoff {
  SystemKind system = SystemKind::Longitudinal5;
  BranchLabel label = BranchLabel::LO;
  int index = 1;
  double omega = 0.0;
  /// Closed-form expression the value came from.
  std::string origin;
};

/// Closed-form cut-off frequencies. The longitudinal dilatational cutoff
/// carries the thermal shift from the P^S / theta coupling. Entries whose
/// closed form vanishes are returned as acoustic with omega = 0.
std::vector<Cutoff> cutoffs(const MaterialParams& p);

/// Thermally shifted dilatational cutoff.
double shifted_omega_p(const MaterialParams& p);

/// Indices i where |w(k_{i+1}) - w(k_i)| exceeds max_slope * dk.
std::vector<std::size_t> continuity_violations(const Branch& b, double max_slope);

}  // namespace thermodisp
