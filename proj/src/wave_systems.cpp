#include "thermodisp/wave_systems.hpp"

#include <cmath>
#include <stdexcept>

namespace thermodisp {

namespace {
constexpr Complex I{0.0, 1.0};
}

std::string_view to_string(SystemKind kind) {
  switch (kind) {
    case SystemKind::Longitudinal5: return "longitudinal";
    case SystemKind::Transverse3: return "transverse";
    case SystemKind::Uncoupled1: return "uncoupled";
  }
  return "?";
}

int system_size(SystemKind kind) {
  switch (kind) {
    case SystemKind::Longitudinal5: return 5;
    case SystemKind::Transverse3: return 3;
    case SystemKind::Uncoupled1: return 1;
  }
  return 0;
}

Eigen::MatrixXcd Pencil::evaluate(Complex omega) const {
  Eigen::MatrixXcd m(n_, n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) m(i, j) = (*this)(i, j)(omega);
  return m;
}

Pencil Pencil::row_scaled(const std::vector<Complex>& factors) const {
  if (static_cast<int>(factors.size()) != n_) throw std::invalid_argument("row_scaled: factor count mismatch");
  Pencil out = *this;
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) {
      PencilEntry& e = out(i, j);
      e.c0 *= factors[i];
      e.c1 *= factors[i];
      e.c2 *= factors[i];
    }
  return out;
}

// Entries follow the printed element list; a(i, j) is 1-based to match it.
Pencil longitudinal_pencil(const MaterialParams& p, double k) {
  const WaveCoefficients w = wave_coefficients(p);
  const double k2 = k * k;
  const double curv_dev = (p.alpha2_bar - p.alpha3_bar) / (3.0 * p.zeta0);
  const double curv_rot = (p.alpha2_bar + p.alpha3_bar + 2.0 * p.alpha1_bar) / p.zeta0;
  const double bulk_e = 3.0 * p.lambda_e + 2.0 * p.mu_e;
  const double dc = p.c2 - p.c1;

  Pencil A(5);
  auto a = [&A](int i, int j) -> PencilEntry& { return A(i - 1, j - 1); };

  a(1, 1) = {-w.c_p2 * k2, 0.0, 1.0};
  a(1, 2).c0 = -2.0 * I * k * p.mu_e / p.rho;
  a(1, 3).c0 = -I * k * bulk_e / p.rho;
  a(1, 5).c0 = -I * k * p.c1 / p.rho;

  a(2, 1).c0 = 4.0 * I * k * p.mu_e / (3.0 * p.zeta0);
  a(2, 2) = {-k2 * curv_dev - w.omega_s2, 0.0, 1.0};
  a(2, 3).c0 = 2.0 * k2 * curv_dev;

  a(3, 1).c0 = I * k * bulk_e / (3.0 * p.zeta0);
  a(3, 2).c0 = k2 * curv_dev;
  a(3, 3) = {-w.omega_p2 - 2.0 * k2 * curv_dev, 0.0, 1.0};
  a(3, 5).c0 = dc / p.zeta0;

  a(4, 4) = {-curv_rot * k2 - 2.0 * p.mu_c / p.zeta0, 0.0, 1.0};
  a(4, 5).c0 = -I * k * p.c3 / p.zeta0;

  // Heat equation row: linear in omega.
  a(5, 1).c1 = k * p.theta0 * p.c1;
  a(5, 3).c1 = -3.0 * I * dc * p.theta0;
  a(5, 4).c1 = 2.0 * k * p.c3 * p.theta0;
  a(5, 5) = {k2 * p.c4 / p.theta0, -I * p.rho * p.c0, 0.0};
  return A;
}

// Rows carry the factor 2 on the micro-distortion equations exactly as printed.
Pencil transverse_pencil(const MaterialParams& p, double k) {
  const WaveCoefficients w = wave_coefficients(p);
  const double k2 = k * k;
  const double curv = k2 * p.alpha2_bar / p.zeta0;

  Pencil A(3);
  A(0, 0) = {w.c_s2 * k2, 0.0, -1.0};
  A(0, 1).c0 = 2.0 * I * k * p.mu_e / p.rho;
  A(0, 2).c0 = -2.0 * I * k * p.mu_c / p.rho;

  A(1, 0).c0 = -2.0 * I * k * p.mu_e / p.zeta0;
  A(1, 1) = {curv + 2.0 * w.omega_s2, 0.0, -2.0};
  A(1, 2).c0 = curv;

  A(2, 0).c0 = 2.0 * I * k * p.mu_c / p.zeta0;
  A(2, 1).c0 = curv;
  A(2, 2) = {curv + 4.0 * p.mu_c / p.zeta0, 0.0, -2.0};
  return A;
}

Pencil uncoupled_pencil(const MaterialParams& p, double k) {
  const WaveCoefficients w = wave_coefficients(p);
  Pencil A(1);
  A(0, 0) = {-(w.c_m2 * k * k + w.omega_s2), 0.0, 1.0};
  return A;
}

Pencil wave_pencil(SystemKind kind, const MaterialParams& p, double k) {
  switch (kind) {
    case SystemKind::Longitudinal5: return longitudinal_pencil(p, k);
    case SystemKind::Transverse3: return transverse_pencil(p, k);
    case SystemKind::Uncoupled1: return uncoupled_pencil(p, k);
  }
  throw std::invalid_argument("wave_pencil: unknown system kind");
}

WaveSystemMatrix assemble(SystemKind kind, const MaterialParams& p, double k, Complex omega) {
  return {kind, k, omega, wave_pencil(kind, p, k).evaluate(omega)};
}

WaveSystemMatrix assemble_longitudinal(const MaterialParams& p, double k, Complex omega) {
  return assemble(SystemKind::Longitudinal5, p, k, omega);
}

WaveSystemMatrix assemble_transverse(const MaterialParams& p, double k, Complex omega) {
  return assemble(SystemKind::Transverse3, p, k, omega);
}

double UncoupledBranch::omega(double k) const { return std::sqrt(c_m * c_m * k * k + omega_s * omega_s); }

UncoupledBranch uncoupled_branch(const MaterialParams& p) {
  const WaveCoefficients w = wave_coefficients(p);
  return {std::sqrt(std::max(0.0, w.c_m2)), std::sqrt(w.omega_s2)};
}

double uncoupled_omega(const MaterialParams& p, double k) {
  const WaveCoefficients w = wave_coefficients(p);
  return std::sqrt(w.c_m2 * k * k + w.omega_s2);
}

}  // namespace thermodisp
