#include "thermodisp/material.hpp"

#include <cctype>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace thermodisp {

std::string_view to_string(ModelId id) {
  switch (id) {
    case ModelId::I: return "I";
    case ModelId::II: return "II";
    case ModelId::III: return "III";
    case ModelId::IV: return "IV";
    case ModelId::V: return "V";
    case ModelId::VI: return "VI";
  }
  return "?";
}

std::optional<ModelId> parse_model_id(std::string_view text) {
  std::string upper(text);
  for (char& c : upper) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  for (ModelId id : kAllModels) {
    if (upper == to_string(id)) return id;
  }
  return std::nullopt;
}

CurvatureAlphas convert_curvature(const CurvatureModuli& a) {
  return {a.a3 - a.a1 / 3.0, (a.a1 + a.a2) / 2.0, (a.a1 - a.a2) / 2.0};
}

CurvatureModuli irreducible_curvature(const CurvatureAlphas& al) {
  return {al.alpha2_bar + al.alpha3_bar, al.alpha2_bar - al.alpha3_bar,
          (3.0 * al.alpha1_bar + al.alpha2_bar + al.alpha3_bar) / 3.0};
}

CurvatureModuli irreducible_curvature(const MaterialParams& p) {
  return irreducible_curvature(CurvatureAlphas{p.alpha1_bar, p.alpha2_bar, p.alpha3_bar});
}

bool ValidationReport::violates(std::string_view rule) const {
  return std::any_of(violations.begin(), violations.end(),
                     [&](const Violation& v) { return v.rule == rule; });
}

std::string ValidationReport::to_string() const {
  if (ok()) return "pass";
  std::ostringstream os;
  for (const auto& v : violations) os << "violation: " << v.rule << " (" << v.detail << ")\n";
  return os.str();
}

namespace {

std::string describe(std::string_view name, double value) {
  std::ostringstream os;
  os.precision(6);
  os << name << " = " << value;
  return os.str();
}

}  // namespace

ValidationReport validate(const MaterialParams& p) {
  ValidationReport report;
  auto require = [&](bool holds, std::string rule, std::string_view name, double value) {
    if (!holds || !std::isfinite(value)) report.violations.push_back({std::move(rule), describe(name, value)});
  };

  require(p.mu_e > 0.0, "mu_e > 0", "mu_e", p.mu_e);
  require(p.mu_micro > 0.0, "mu_micro > 0", "mu_micro", p.mu_micro);
  require(p.mu_c >= 0.0, "mu_c >= 0", "mu_c", p.mu_c);
  require(p.rho > 0.0, "rho > 0", "rho", p.rho);
  require(p.zeta0 > 0.0, "zeta0 > 0", "zeta0", p.zeta0);
  require(p.theta0 > 0.0, "theta0 > 0", "theta0", p.theta0);
  require(p.c0 > 0.0, "c0 > 0", "c0", p.c0);
  require(p.c4 >= 0.0, "c4 >= 0", "c4", p.c4);
  require(std::isfinite(p.c1), "c1 finite", "c1", p.c1);
  require(std::isfinite(p.c2), "c2 finite", "c2", p.c2);
  require(std::isfinite(p.c3), "c3 finite", "c3", p.c3);
  require(std::isfinite(p.lambda_e), "lambda_e finite", "lambda_e", p.lambda_e);
  require(std::isfinite(p.lambda_micro), "lambda_micro finite", "lambda_micro", p.lambda_micro);

  const double bulk_e = 3.0 * p.lambda_e + 2.0 * p.mu_e;
  const double bulk_micro = 3.0 * p.lambda_micro + 2.0 * p.mu_micro;
  require(bulk_e > 0.0, "3*lambda_e + 2*mu_e > 0", "3*lambda_e + 2*mu_e", bulk_e);
  require(bulk_micro > 0.0, "3*lambda_micro + 2*mu_micro > 0", "3*lambda_micro + 2*mu_micro", bulk_micro);

  // Rounding in the alpha <-> a map can leave an exact zero slightly negative.
  const CurvatureModuli a = irreducible_curvature(p);
  const double slack =
      1e-12 * std::max({std::abs(p.alpha1_bar), std::abs(p.alpha2_bar), std::abs(p.alpha3_bar)});
  require(a.a1 >= -slack, "a1 >= 0", "a1 = alpha2_bar + alpha3_bar", a.a1);
  require(a.a2 >= -slack, "a2 >= 0", "a2 = alpha2_bar - alpha3_bar", a.a2);
  require(a.a3 >= -slack, "a3 >= 0", "a3 = (3 alpha1_bar + alpha2_bar + alpha3_bar)/3", a.a3);
  return report;
}

WaveCoefficients wave_coefficients(const MaterialParams& p) {
  WaveCoefficients w;
  w.c_p2 = (p.lambda_e + 2.0 * p.mu_e) / p.rho;
  w.c_s2 = (p.mu_e + p.mu_c) / p.rho;
  w.c_m2 = (p.alpha2_bar + p.alpha3_bar) / p.zeta0;
  w.omega_s2 = 2.0 * (p.mu_e + p.mu_micro) / p.zeta0;
  w.omega_p2 = (2.0 * (p.mu_e + p.mu_micro) + 3.0 * (p.lambda_e + p.lambda_micro)) / p.zeta0;
  return w;
}

double frequency_scale(const MaterialParams& p) {
  const double w2 = wave_coefficients(p).omega_s2;
  return (std::isfinite(w2) && w2 > 0.0) ? std::sqrt(w2) : 1.0;
}

DerivedSpeeds derived_speeds(const MaterialParams& p) {
  const ValidationReport report = validate(p);
  if (!report.ok()) {
    throw std::invalid_argument("derived_speeds: parameters failed validation:\n" + report.to_string());
  }
  const WaveCoefficients w = wave_coefficients(p);
  return {std::sqrt(w.c_p2), std::sqrt(w.c_s2), std::sqrt(std::max(0.0, w.c_m2)), std::sqrt(w.omega_s2),
          std::sqrt(w.omega_p2)};
}

MaterialParams preset(ModelId id, const UnitConventions& units) {
  MaterialParams p;
  p.units = units;
  p.lambda_e = table::lambda_e_MPa * kMPa;
  p.mu_e = table::mu_e_MPa * kMPa;
  p.lambda_micro = table::lambda_micro_MPa * kMPa;
  p.mu_micro = table::mu_micro_MPa * kMPa;
  p.rho = table::rho;
  p.zeta0 = table::zeta0;
  p.c0 = table::c0_cal * units.calorie_in_joules;
  p.c1 = table::c1_cal * units.calorie_in_joules;
  p.c2 = table::c2_cal * units.calorie_in_joules;
  p.c3 = table::c3_cal * units.calorie_in_joules;
  p.c4 = table::c4_cal * units.calorie_in_joules;
  p.theta0 = table::theta0_celsius + (units.theta0_absolute ? kCelsiusToKelvin : 0.0);

  const double a1 = table::a1_MPa_m2 * kMPa;
  CurvatureModuli a;
  bool cosserat = false;
  switch (id) {
    case ModelId::I:
    case ModelId::II:
      a = {a1, a1, a1 / 3.0};
      cosserat = id == ModelId::I;
      break;
    case ModelId::III:
    case ModelId::IV:
      a = {a1, 0.0, a1 / 3.0};
      cosserat = id == ModelId::III;
      break;
    case ModelId::V:
    case ModelId::VI:
      a = {a1, a1, 0.0};
      cosserat = id == ModelId::V;
      break;
  }
  const CurvatureAlphas al = convert_curvature(a);
  p.alpha1_bar = al.alpha1_bar;
  p.alpha2_bar = al.alpha2_bar;
  p.alpha3_bar = al.alpha3_bar;
  p.mu_c = cosserat ? table::mu_c_MPa * kMPa : 0.0;
  return p;
}

MaterialParams thermal_off(MaterialParams p) {
  p.c1 = 0.0;
  p.c2 = 0.0;
  p.c3 = 0.0;
  p.c4 = 0.0;
  return p;
}

}  // namespace thermodisp
