#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace thermodisp {

/// The six named parameter sets (curvature pattern x Cosserat couple modulus).
enum class ModelId { I, II, III, IV, V, VI };

std::string_view to_string(ModelId id);
std::optional<ModelId> parse_model_id(std::string_view text);
inline constexpr ModelId kAllModels[] = {ModelId::I,   ModelId::II, ModelId::III,
                                         ModelId::IV,  ModelId::V,  ModelId::VI};

/// How the tabulated thermal constants were brought into SI.
struct UnitConventions {
  double calorie_in_joules = 4.184;
  /// If true a Celsius reference temperature is shifted by 273.15.
  bool theta0_absolute = false;

  friend bool operator==(const UnitConventions&, const UnitConventions&) = default;
};

/// Constitutive constants of the isotropic thermoelastic relaxed micromorphic
/// solid, all in SI. Curvature is stored in the (alpha1_bar, alpha2_bar,
/// alpha3_bar) parametrization used by the field equations.
struct MaterialParams {
  double lambda_e = 0.0;      // Pa
  double mu_e = 0.0;          // Pa
  double mu_c = 0.0;          // Pa, Cosserat couple modulus
  double lambda_micro = 0.0;  // Pa
  double mu_micro = 0.0;      // Pa
  double alpha1_bar = 0.0;    // Pa m^2
  double alpha2_bar = 0.0;    // Pa m^2
  double alpha3_bar = 0.0;    // Pa m^2
  double rho = 0.0;           // kg/m^3
  double zeta0 = 0.0;         // kg/m, micro-inertia density rho*zeta
  double c0 = 0.0;            // J/(kg K)
  double c1 = 0.0;            // J/(m^3 K)
  double c2 = 0.0;            // J/(m^3 K)
  double c3 = 0.0;            // J/(m^2 K)
  double c4 = 0.0;            // J/(m s)
  double theta0 = 0.0;        // reference temperature
  UnitConventions units{};

  friend bool operator==(const MaterialParams&, const MaterialParams&) = default;
};

/// Irreducible curvature moduli: a1 |dev sym alpha|^2 + a2 |skew alpha|^2 + a3 tr(alpha)^2.
struct CurvatureModuli {
  double a1 = 0.0;
  double a2 = 0.0;
  double a3 = 0.0;
};

struct CurvatureAlphas {
  double alpha1_bar = 0.0;
  double alpha2_bar = 0.0;
  double alpha3_bar = 0.0;
};

CurvatureAlphas convert_curvature(const CurvatureModuli& a);
CurvatureModuli irreducible_curvature(const CurvatureAlphas& alpha);
CurvatureModuli irreducible_curvature(const MaterialParams& p);

struct DerivedSpeeds {
  double c_p = 0.0;      // m/s
  double c_s = 0.0;      // m/s
  double c_m = 0.0;      // m/s
  double omega_s = 0.0;  // rad/s
  double omega_p = 0.0;  // rad/s
};

struct Violation {
  std::string rule;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  bool violates(std::string_view rule) const;
  std::string to_string() const;
};

/// Checks positivity and energy semi-definiteness. Never throws.
ValidationReport validate(const MaterialParams& p);

/// Throws std::invalid_argument if validate(p) reports any violation.
DerivedSpeeds derived_speeds(const MaterialParams& p);

/// Squared characteristic quantities without validation or square roots.
/// Used by the assemblers so that non-physical regions can still be explored.
struct WaveCoefficients {
  double c_p2 = 0.0;
  double c_s2 = 0.0;
  double c_m2 = 0.0;
  double omega_s2 = 0.0;
  double omega_p2 = 0.0;
};
WaveCoefficients wave_coefficients(const MaterialParams& p);

/// Frequency used to non-dimensionalize omega; omega_s when it is positive.
double frequency_scale(const MaterialParams& p);

/// Tabulated values in the units they are quoted in.
namespace table {
inline constexpr double lambda_e_MPa = 400.0;
inline constexpr double mu_e_MPa = 200.0;
inline constexpr double lambda_micro_MPa = 100.0;
inline constexpr double mu_micro_MPa = 100.0;
inline constexpr double mu_c_MPa = 440.0;
inline constexpr double rho = 2000.0;
inline constexpr double zeta0 = 0.01;
inline constexpr double c0_cal = 206.0;
inline constexpr double c1_cal = 84.0e3;
inline constexpr double c2_cal = 95.0e3;
inline constexpr double c3_cal = 152.0;
inline constexpr double c4_cal = 16.0;
inline constexpr double theta0_celsius = 20.0;
inline constexpr double a1_MPa_m2 = 2.0e-3;
}  // namespace table

inline constexpr double kMPa = 1.0e6;
inline constexpr double kCelsiusToKelvin = 273.15;

MaterialParams preset(ModelId id, const UnitConventions& units = {});

/// Copy of p with the thermoelastic couplings C1..C4 set to zero.
MaterialParams thermal_off(MaterialParams p);

}  // namespace thermodisp
