#include "thermodisp/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace thermodisp {

ComplexPolynomial::ComplexPolynomial(std::vector<Complex> scaled_coeffs, double scale)
    : coeffs_(std::move(scaled_coeffs)), scale_(scale) {
  if (!(scale_ > 0.0) || !std::isfinite(scale_)) throw std::invalid_argument("ComplexPolynomial: scale must be positive");
  while (!coeffs_.empty() && coeffs_.back() == Complex{}) coeffs_.pop_back();
}

Complex ComplexPolynomial::coefficient(int j) const {
  if (j < 0 || j > degree()) return {};
  return coeffs_[j] / std::pow(scale_, j);
}

std::vector<Complex> ComplexPolynomial::coefficients() const {
  std::vector<Complex> out(coeffs_.size());
  for (int j = 0; j <= degree(); ++j) out[j] = coefficient(j);
  return out;
}

Complex ComplexPolynomial::evaluate_scaled(Complex x) const {
  Complex acc{};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::pair<Complex, Complex> ComplexPolynomial::evaluate_with_derivative_scaled(Complex x) const {
  Complex value{};
  Complex deriv{};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    deriv = deriv * x + value;
    value = value * x + *it;
  }
  return {value, deriv};
}

double ComplexPolynomial::max_abs_coefficient() const {
  double m = 0.0;
  for (const Complex& c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

ComplexPolynomial ComplexPolynomial::trimmed(double rel_tol) const {
  const double cut = rel_tol * max_abs_coefficient();
  std::vector<Complex> c = coeffs_;
  while (!c.empty() && std::abs(c.back()) <= cut) c.pop_back();
  return ComplexPolynomial(std::move(c), scale_);
}

ComplexPolynomial ComplexPolynomial::deflated(Complex scaled_root) const {
  if (degree() < 1) return ComplexPolynomial({}, scale_);
  std::vector<Complex> q(coeffs_.size() - 1);
  Complex carry{};
  for (int j = degree(); j >= 1; --j) {
    carry = carry * scaled_root + coeffs_[j];
    q[j - 1] = carry;
  }
  return ComplexPolynomial(std::move(q), scale_);
}

void ComplexPolynomial::check_scales(const ComplexPolynomial& a, const ComplexPolynomial& b) {
  if (a.scale_ != b.scale_) throw std::invalid_argument("ComplexPolynomial: mismatched variable scales");
}

ComplexPolynomial operator+(const ComplexPolynomial& a, const ComplexPolynomial& b) {
  ComplexPolynomial::check_scales(a, b);
  std::vector<Complex> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t j = 0; j < a.coeffs_.size(); ++j) c[j] += a.coeffs_[j];
  for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[j] += b.coeffs_[j];
  return ComplexPolynomial(std::move(c), a.scale_);
}

ComplexPolynomial operator-(const ComplexPolynomial& a, const ComplexPolynomial& b) {
  ComplexPolynomial::check_scales(a, b);
  std::vector<Complex> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t j = 0; j < a.coeffs_.size(); ++j) c[j] += a.coeffs_[j];
  for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[j] -= b.coeffs_[j];
  return ComplexPolynomial(std::move(c), a.scale_);
}

ComplexPolynomial operator*(const ComplexPolynomial& a, const ComplexPolynomial& b) {
  ComplexPolynomial::check_scales(a, b);
  if (a.coeffs_.empty() || b.coeffs_.empty()) return ComplexPolynomial({}, a.scale_);
  std::vector<Complex> c(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return ComplexPolynomial(std::move(c), a.scale_);
}

}  // namespace thermodisp
