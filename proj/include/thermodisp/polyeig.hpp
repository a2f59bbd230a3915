#pragma once

#include <span>
#include <vector>

#include "thermodisp/polynomial.hpp"
#include "thermodisp/wave_systems.hpp"

namespace thermodisp {

/// Exact determinant of a quadratic pencil as a polynomial in omega, built by
/// cofactor expansion that skips structurally zero entries.
ComplexPolynomial determinant_polynomial(const Pencil& pencil, double omega_scale);

/// det A(k, omega) for one of the wave systems, with omega scaled by omega_s.
ComplexPolynomial det_poly(SystemKind kind, const MaterialParams& p, double k);

/// Newton polishing target for |q(x)| / (max|c| * max(1, |x|^deg)).
inline constexpr double kRootResidualTol = 1e-10;
/// Bound on the normalized determinant residual of every reported root.
inline constexpr double kPointResidualTol = 1e-8;

struct RootOptions {
  double residual_tol = kRootResidualTol;
  int max_iterations = 50;
  /// Leading coefficients below this (relative) are treated as zero.
  double trim_tol = 1e-13;
};

struct Root {
  Complex omega{};
  /// |q(x)| / (max|c| * max(1, |x|^deg)) in the scaled variable.
  double residual = 0.0;
  int iterations = 0;
  bool converged = true;
};

/// All roots with multiplicity. Exact zero low-order coefficients are
/// deflated as roots at zero; the rest come from a balanced companion matrix
/// and are each polished by Newton iteration on q.
std::vector<Root> roots(const ComplexPolynomial& q, const RootOptions& options = {});
std::vector<Complex> root_values(std::span<const Root> rs);

struct RootCluster {
  Complex center{};
  int multiplicity = 1;
};

/// Groups roots closer than rel_tol * max(|w|, scale).
std::vector<RootCluster> cluster_roots(std::span<const Root> rs, double scale, double rel_tol = 1e-6);

/// |det A| over the product of row norms, where a row norm is the largest
/// term magnitude sum among its entries. Invariant under row scaling.
/// A row that vanishes identically gives 0.
double normalized_residual(const Pencil& pencil, Complex omega);
double residual(SystemKind kind, const MaterialParams& p, double k, Complex omega);

struct ScanMinimum {
  double omega = 0.0;
  double residual = 0.0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
};

struct ScanOptions {
  /// Refined minima above this residual are discarded as non-roots.
  double accept_residual = 1e-4;
  int golden_iterations = 100;
};

/// Brute-force real-frequency scan: interior local minima of the residual,
/// refined by golden-section search. Throws on an empty or non-increasing grid.
std::vector<ScanMinimum> scan_oracle(SystemKind kind, const MaterialParams& p, double k,
                                     std::span<const double> omega_grid, const ScanOptions& options = {});

}  // namespace thermodisp
