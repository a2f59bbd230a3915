#pragma once

#include <complex>
#include <span>
#include <vector>

namespace thermodisp {

using Complex = std::complex<double>;

/// Dense complex polynomial in omega, stored in the scaled variable
/// x = omega / scale so that coefficients stay well conditioned.
/// Coefficients are ordered lowest degree first.
class ComplexPolynomial {
 public:
  ComplexPolynomial() = default;
  explicit ComplexPolynomial(std::vector<Complex> scaled_coeffs, double scale = 1.0);

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  double scale() const { return scale_; }
  std::span<const Complex> scaled_coefficients() const { return coeffs_; }

  /// Coefficient of omega^j in SI units.
  Complex coefficient(int j) const;
  std::vector<Complex> coefficients() const;
  Complex leading_coefficient() const { return coefficient(degree()); }

  Complex operator()(Complex omega) const { return evaluate_scaled(omega / scale_); }
  Complex evaluate_scaled(Complex x) const;
  /// Value and first derivative with respect to x.
  std::pair<Complex, Complex> evaluate_with_derivative_scaled(Complex x) const;

  /// Drops leading coefficients below rel_tol * max |c|.
  ComplexPolynomial trimmed(double rel_tol) const;
  double max_abs_coefficient() const;

  /// Quotient by (x - root) via synthetic division; remainder is discarded.
  ComplexPolynomial deflated(Complex scaled_root) const;

  friend ComplexPolynomial operator+(const ComplexPolynomial& a, const ComplexPolynomial& b);
  friend ComplexPolynomial operator-(const ComplexPolynomial& a, const ComplexPolynomial& b);
  friend ComplexPolynomial operator*(const ComplexPolynomial& a, const ComplexPolynomial& b);

 private:
  static void check_scales(const ComplexPolynomial& a, const ComplexPolynomial& b);

  std::vector<Complex> coeffs_;
  double scale_ = 1.0;
};

}  // namespace thermodisp
