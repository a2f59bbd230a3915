#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "thermodisp/errors.hpp"
#include "thermodisp/material.hpp"

namespace thermodisp {

enum class Dimension {
  Pressure,        // Pa, kPa, MPa, GPa
  PressureArea,    // Pa*m^2, MPa*m^2, N
  Density,         // kg/m^3
  LineDensity,     // kg/m
  HeatCapacity,    // <energy>/(kg*K)
  CouplingVolume,  // <energy>/(m^3*K)
  CouplingArea,    // <energy>/(m^2*K)
  Conductivity,    // <energy>/(m*s)
  Temperature,     // C or K
};

/// Parses "<number> <unit>" into SI. Energies accept J, kJ, cal/Cal (one
/// calorie = units.calorie_in_joules) and kcal; C and K are interchangeable
/// in temperature-difference denominators.
double parse_quantity(std::string_view text, Dimension dim, const UnitConventions& units = {});

/// Flat `key = value unit` text, `#` comments. Keys: lambda_e, mu_e,
/// lambda_micro, mu_micro, mu_c, rho, zeta0, C0..C4, theta0, and either
/// a1..a3 or alpha1_bar..alpha3_bar. Optional: preset (base values for
/// omitted keys), calorie_in_joules, theta0_absolute.
MaterialParams parse_config(std::string_view text);

/// Reads a config file, or the parameter echo of a JSON sweep report.
MaterialParams load_config(const std::filesystem::path& path);

/// SI echo in config syntax; parse_config(dump_config(p)) == p bit for bit.
std::string dump_config(const MaterialParams& p);

}  // namespace thermodisp
