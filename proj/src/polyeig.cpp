#include "thermodisp/polyeig.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace thermodisp {

namespace {

ComplexPolynomial entry_polynomial(const PencilEntry& e, double s) {
  return ComplexPolynomial({e.c0, e.c1 * s, e.c2 * s * s}, s);
}

// Laplace expansion along `row` over the columns still set in `mask`.
ComplexPolynomial cofactor_expand(const Pencil& A, double s, int row, unsigned mask) {
  const int n = A.size();
  if (row == n) return ComplexPolynomial({Complex{1.0}}, s);
  ComplexPolynomial total({}, s);
  int sign = 1;
  for (int col = 0; col < n; ++col) {
    if (!(mask & (1u << col))) continue;
    const PencilEntry& e = A(row, col);
    if (!e.is_zero()) {
      ComplexPolynomial term = entry_polynomial(e, s) * cofactor_expand(A, s, row + 1, mask & ~(1u << col));
      total = sign > 0 ? total + term : total - term;
    }
    sign = -sign;
  }
  return total;
}

// Parlett-Reinsch diagonal balancing with radix 2.
void balance(Eigen::MatrixXcd& m) {
  const int n = static_cast<int>(m.rows());
  constexpr double radix = 2.0;
  bool done = false;
  for (int sweep = 0; !done && sweep < 100; ++sweep) {
    done = true;
    for (int i = 0; i < n; ++i) {
      double c = 0.0;
      double r = 0.0;
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(m(j, i));
        r += std::abs(m(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      const double s = c + r;
      double f = 1.0;
      double g = r / radix;
      while (c < g) {
        f *= radix;
        c *= radix * radix;
      }
      g = r * radix;
      while (c > g) {
        f /= radix;
        c /= radix * radix;
      }
      if ((c + r) / f < 0.95 * s) {
        done = false;
        m.row(i) /= f;
        m.col(i) *= f;
      }
    }
  }
}

std::vector<Complex> companion_eigenvalues(std::span<const Complex> c) {
  const int n = static_cast<int>(c.size()) - 1;
  if (n == 1) return {-c[0] / c[1]};
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(n, n);
  for (int j = 0; j < n; ++j) comp(0, j) = -c[n - 1 - j] / c[n];
  for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
  balance(comp);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(comp, false);
  if (solver.info() != Eigen::Success) throw std::runtime_error("roots: companion eigenvalue solver failed");
  std::vector<Complex> out(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
  return out;
}

double root_residual(const ComplexPolynomial& q, Complex x, double norm) {
  const double mag = std::max(1.0, std::pow(std::abs(x), q.degree()));
  return std::abs(q.evaluate_scaled(x)) / (norm * mag);
}

}  // namespace

ComplexPolynomial determinant_polynomial(const Pencil& pencil, double omega_scale) {
  if (pencil.size() > 16) throw std::invalid_argument("determinant_polynomial: pencil too large for cofactor expansion");
  const unsigned all = (1u << pencil.size()) - 1u;
  return cofactor_expand(pencil, omega_scale, 0, all);
}

ComplexPolynomial det_poly(SystemKind kind, const MaterialParams& p, double k) {
  return determinant_polynomial(wave_pencil(kind, p, k), frequency_scale(p));
}

std::vector<Root> roots(const ComplexPolynomial& input, const RootOptions& options) {
  const ComplexPolynomial q = input.trimmed(options.trim_tol);
  if (q.degree() < 1) throw std::invalid_argument("roots: polynomial degree must be at least 1");
  const auto coeffs = q.scaled_coefficients();
  const double norm = q.max_abs_coefficient();

  std::vector<Root> out;
  out.reserve(q.degree());
  std::size_t zeros = 0;
  while (coeffs[zeros] == Complex{}) ++zeros;
  for (std::size_t i = 0; i < zeros; ++i) out.push_back({Complex{}, 0.0, 0, true});
  if (static_cast<int>(zeros) == q.degree()) return out;

  const std::vector<Complex> estimates = companion_eigenvalues(coeffs.subspan(zeros));
  constexpr double eps = std::numeric_limits<double>::epsilon();
  for (std::size_t r = 0; r < estimates.size(); ++r) {
    // Newton must not walk onto a neighbouring root.
    double separation = std::numeric_limits<double>::infinity();
    for (std::size_t o = 0; o < estimates.size(); ++o)
      if (o != r) separation = std::min(separation, std::abs(estimates[o] - estimates[r]));

    Complex x = estimates[r];
    double value = std::abs(q.evaluate_scaled(x));
    int it = 0;
    for (; it < options.max_iterations && value > 0.0; ++it) {
      const auto [f, df] = q.evaluate_with_derivative_scaled(x);
      if (df == Complex{}) break;
      const Complex step = f / df;
      const Complex next = x - step;
      const double next_value = std::abs(q.evaluate_scaled(next));
      if (!(next_value < value) || std::abs(next - estimates[r]) > 0.5 * separation) break;
      x = next;
      value = next_value;
      if (std::abs(step) <= 4.0 * eps * std::abs(x)) break;
    }
    const double res = root_residual(q, x, norm);
    out.push_back({x * q.scale(), res, it, res <= options.residual_tol});
  }
  return out;
}

std::vector<Complex> root_values(std::span<const Root> rs) {
  std::vector<Complex> v;
  v.reserve(rs.size());
  for (const Root& r : rs) v.push_back(r.omega);
  return v;
}

std::vector<RootCluster> cluster_roots(std::span<const Root> rs, double scale, double rel_tol) {
  std::vector<RootCluster> clusters;
  std::vector<bool> used(rs.size(), false);
  for (std::size_t i = 0; i < rs.size(); ++i) {
    if (used[i]) continue;
    used[i] = true;
    Complex sum = rs[i].omega;
    int count = 1;
    const double tol = rel_tol * std::max(std::abs(rs[i].omega), scale);
    for (std::size_t j = i + 1; j < rs.size(); ++j) {
      if (!used[j] && std::abs(rs[j].omega - rs[i].omega) <= tol) {
        used[j] = true;
        sum += rs[j].omega;
        ++count;
      }
    }
    clusters.push_back({sum / static_cast<double>(count), count});
  }
  return clusters;
}

double normalized_residual(const Pencil& pencil, Complex omega) {
  const int n = pencil.size();
  const double aw = std::abs(omega);
  Eigen::MatrixXcd m = pencil.evaluate(omega);
  for (int i = 0; i < n; ++i) {
    double norm = 0.0;
    for (int j = 0; j < n; ++j) norm = std::max(norm, pencil(i, j).magnitude(aw));
    if (norm == 0.0) return 0.0;
    m.row(i) /= norm;
  }
  return std::abs(m.partialPivLu().determinant());
}

double residual(SystemKind kind, const MaterialParams& p, double k, Complex omega) {
  return normalized_residual(wave_pencil(kind, p, k), omega);
}

std::vector<ScanMinimum> scan_oracle(SystemKind kind, const MaterialParams& p, double k,
                                     std::span<const double> omega_grid, const ScanOptions& options) {
  if (omega_grid.empty()) throw std::invalid_argument("scan_oracle: empty frequency grid");
  for (std::size_t i = 1; i < omega_grid.size(); ++i)
    if (!(omega_grid[i] > omega_grid[i - 1]))
      throw std::invalid_argument("scan_oracle: frequency grid must be strictly increasing");

  const Pencil pencil = wave_pencil(kind, p, k);
  auto f = [&](double w) { return normalized_residual(pencil, Complex{w, 0.0}); };

  std::vector<double> r(omega_grid.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = f(omega_grid[i]);

  std::vector<ScanMinimum> out;
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  for (std::size_t i = 1; i + 1 < r.size(); ++i) {
    if (!(r[i] < r[i - 1] && r[i] <= r[i + 1])) continue;
    double a = omega_grid[i - 1];
    double b = omega_grid[i + 1];
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = f(c);
    double fd = f(d);
    for (int it = 0; it < options.golden_iterations && (b - a) > 1e-15 * std::abs(b); ++it) {
      if (fc < fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - invphi * (b - a);
        fc = f(c);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + invphi * (b - a);
        fd = f(d);
      }
    }
    double best = 0.5 * (a + b);
    double best_r = f(best);
    if (r[i] < best_r) {
      best = omega_grid[i];
      best_r = r[i];
    }
    if (best_r <= options.accept_residual)
      out.push_back({best, best_r, omega_grid[i - 1], omega_grid[i + 1]});
  }
  return out;
}

}  // namespace thermodisp
