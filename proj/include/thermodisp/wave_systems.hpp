#pragma once

#include <complex>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "thermodisp/material.hpp"

namespace thermodisp {

using Complex = std::complex<double>;

/// Longitudinal5: unknowns (u1, P^D, P^S, P_[23], theta).
/// Transverse3: unknowns (u_xi, P_(1xi), P_[1xi]), identical for xi = 2, 3.
/// Uncoupled1: the scalar relation shared by P_(23) and P^V.
enum class SystemKind { Longitudinal5, Transverse3, Uncoupled1 };

std::string_view to_string(SystemKind kind);
int system_size(SystemKind kind);

/// One matrix entry as a quadratic in omega: c0 + c1 w + c2 w^2.
struct PencilEntry {
  Complex c0{};
  Complex c1{};
  Complex c2{};

  Complex operator()(Complex omega) const { return c0 + omega * (c1 + omega * c2); }
  bool is_zero() const { return c0 == Complex{} && c1 == Complex{} && c2 == Complex{}; }
  /// Sum of term magnitudes |c0| + |c1||w| + |c2||w|^2.
  double magnitude(double abs_omega) const {
    return std::abs(c0) + abs_omega * (std::abs(c1) + abs_omega * std::abs(c2));
  }
  friend bool operator==(const PencilEntry&, const PencilEntry&) = default;
};

/// Square matrix whose entries are quadratic in omega at a fixed wavenumber.
class Pencil {
 public:
  explicit Pencil(int n) : n_(n), entries_(static_cast<std::size_t>(n) * n) {}

  int size() const { return n_; }
  PencilEntry& operator()(int row, int col) { return entries_[index(row, col)]; }
  const PencilEntry& operator()(int row, int col) const { return entries_[index(row, col)]; }

  Eigen::MatrixXcd evaluate(Complex omega) const;
  /// Each row scaled by the matching factor.
  Pencil row_scaled(const std::vector<Complex>& factors) const;

  friend bool operator==(const Pencil&, const Pencil&) = default;

 private:
  std::size_t index(int row, int col) const { return static_cast<std::size_t>(row) * n_ + col; }

  int n_;
  std::vector<PencilEntry> entries_;
};

struct WaveSystemMatrix {
  SystemKind kind = SystemKind::Longitudinal5;
  double k = 0.0;
  Complex omega{};
  Eigen::MatrixXcd entries;
};

Pencil longitudinal_pencil(const MaterialParams& p, double k);
Pencil transverse_pencil(const MaterialParams& p, double k);
Pencil uncoupled_pencil(const MaterialParams& p, double k);
Pencil wave_pencil(SystemKind kind, const MaterialParams& p, double k);

WaveSystemMatrix assemble_longitudinal(const MaterialParams& p, double k, Complex omega);
WaveSystemMatrix assemble_transverse(const MaterialParams& p, double k, Complex omega);
WaveSystemMatrix assemble(SystemKind kind, const MaterialParams& p, double k, Complex omega);

/// Closed-form branch shared by P_(23) and P^V.
struct UncoupledBranch {
  double c_m = 0.0;
  double omega_s = 0.0;

  double omega(double k) const;
};

UncoupledBranch uncoupled_branch(const MaterialParams& p);
double uncoupled_omega(const MaterialParams& p, double k);

}  // namespace thermodisp
