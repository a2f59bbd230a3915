#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "thermodisp/bandgap.hpp"
#include "thermodisp/branches.hpp"

namespace thermodisp {

std::string_view version();

enum class PlotFormat { Csv, Gnuplot };

/// Columns k,branch_label,branch_index,re_omega,im_omega,residual; rows sorted
/// by (branch_label, branch_index, k); numbers in %.17e.
void write_csv(std::ostream& out, std::span<const BranchSet> sets);

/// One block per branch separated by two blank lines (gnuplot `index`).
void write_gnuplot(std::ostream& out, std::span<const BranchSet> sets);

struct SweepReport {
  std::string tool_version;
  MaterialParams params;
  std::string system_selector = "all";
  double k_max = 1.0e4;
  int points = 400;
  double tol_damping = 1e-3;
  std::vector<BranchSet> sets;
  std::vector<Cutoff> cutoffs;
  std::optional<std::vector<BandGap>> joint_gaps;
};

std::string write_report_json(const SweepReport& report);
/// Restores parameters, grid settings and branch tables.
SweepReport read_report_json(std::string_view text);

}  // namespace thermodisp
