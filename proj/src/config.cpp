#include "thermodisp/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

#include "thermodisp/report.hpp"

namespace thermodisp {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

void replace_all(std::string& s, std::string_view from, std::string_view to) {
  for (std::size_t pos = 0; (pos = s.find(from, pos)) != std::string::npos; pos += to.size())
    s.replace(pos, from.size(), to);
}

// "MPa m^2" -> "MPa*m^2", "°C" -> "C", "m3" -> "m^3".
std::string normalize_unit(std::string_view unit) {
  std::string u(trim(unit));
  replace_all(u, "\xC2\xB0", "");  // degree sign
  replace_all(u, "\xC2\xB7", "*");  // middle dot
  replace_all(u, "degC", "C");
  std::string out;
  bool pending_space = false;
  for (char c : u) {
    if (c == ' ' || c == '\t') {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space && c != '*' && c != '/' && c != ')' && !out.empty() && out.back() != '*' && out.back() != '/' &&
        out.back() != '(')
      out += '*';
    pending_space = false;
    out += c;
  }
  replace_all(out, "m2", "m^2");
  replace_all(out, "m3", "m^3");
  replace_all(out, "^^", "^");
  return out;
}

std::optional<double> energy_factor(std::string_view e, const UnitConventions& units) {
  if (e == "J") return 1.0;
  if (e == "kJ") return 1.0e3;
  if (e == "Cal" || e == "cal") return units.calorie_in_joules;
  if (e == "kcal" || e == "kCal") return 1.0e3 * units.calorie_in_joules;
  return std::nullopt;
}

std::optional<double> pressure_factor(std::string_view u) {
  if (u == "Pa") return 1.0;
  if (u == "kPa") return 1.0e3;
  if (u == "MPa") return 1.0e6;
  if (u == "GPa") return 1.0e9;
  return std::nullopt;
}

std::vector<std::string> sorted_tokens(std::string_view denom) {
  std::string d(denom);
  if (d.size() >= 2 && d.front() == '(' && d.back() == ')') d = d.substr(1, d.size() - 2);
  std::vector<std::string> tokens;
  std::stringstream ss(d);
  for (std::string t; std::getline(ss, t, '*');) {
    if (t == "C") t = "K";
    tokens.push_back(t);
  }
  std::sort(tokens.begin(), tokens.end());
  return tokens;
}

std::optional<double> unit_factor(const std::string& u, Dimension dim, const UnitConventions& units) {
  switch (dim) {
    case Dimension::Pressure: return pressure_factor(u);
    case Dimension::PressureArea: {
      if (u == "N") return 1.0;
      const auto star = u.find('*');
      if (star == std::string::npos || u.substr(star + 1) != "m^2") return std::nullopt;
      return pressure_factor(u.substr(0, star));
    }
    case Dimension::Density:
      if (u == "kg/m^3") return 1.0;
      return std::nullopt;
    case Dimension::LineDensity:
      if (u == "kg/m") return 1.0;
      return std::nullopt;
    case Dimension::Temperature:
      if (u == "C" || u == "K") return 1.0;
      return std::nullopt;
    case Dimension::HeatCapacity:
    case Dimension::CouplingVolume:
    case Dimension::CouplingArea:
    case Dimension::Conductivity: {
      const auto slash = u.find('/');
      if (slash == std::string::npos) return std::nullopt;
      const auto energy = energy_factor(std::string_view(u).substr(0, slash), units);
      if (!energy) return std::nullopt;
      const std::vector<std::string> got = sorted_tokens(std::string_view(u).substr(slash + 1));
      std::vector<std::string> want;
      if (dim == Dimension::HeatCapacity) want = {"K", "kg"};
      if (dim == Dimension::CouplingVolume) want = {"K", "m^3"};
      if (dim == Dimension::CouplingArea) want = {"K", "m^2"};
      if (dim == Dimension::Conductivity) want = {"m", "s"};
      if (got != want) return std::nullopt;
      return energy;
    }
  }
  return std::nullopt;
}

std::string_view expected_units(Dimension dim) {
  switch (dim) {
    case Dimension::Pressure: return "Pa, kPa, MPa or GPa";
    case Dimension::PressureArea: return "Pa*m^2 or MPa*m^2";
    case Dimension::Density: return "kg/m^3";
    case Dimension::LineDensity: return "kg/m";
    case Dimension::HeatCapacity: return "J/(kg*K) or Cal/(kg*C)";
    case Dimension::CouplingVolume: return "J/(m^3*K) or Cal/(m^3*C)";
    case Dimension::CouplingArea: return "J/(m^2*K) or Cal/(m^2*C)";
    case Dimension::Conductivity: return "J/(m*s) or Cal/(m*s)";
    case Dimension::Temperature: return "C or K";
  }
  return "";
}

std::optional<double> parse_number(std::string_view s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

struct Entry {
  std::string value;
  int line = 0;
};

struct KeySpec {
  std::string_view key;
  Dimension dim;
  double MaterialParams::*field;
};

constexpr KeySpec kScalarKeys[] = {
    {"lambda_e", Dimension::Pressure, &MaterialParams::lambda_e},
    {"mu_e", Dimension::Pressure, &MaterialParams::mu_e},
    {"lambda_micro", Dimension::Pressure, &MaterialParams::lambda_micro},
    {"mu_micro", Dimension::Pressure, &MaterialParams::mu_micro},
    {"mu_c", Dimension::Pressure, &MaterialParams::mu_c},
    {"rho", Dimension::Density, &MaterialParams::rho},
    {"zeta0", Dimension::LineDensity, &MaterialParams::zeta0},
    {"C0", Dimension::HeatCapacity, &MaterialParams::c0},
    {"C1", Dimension::CouplingVolume, &MaterialParams::c1},
    {"C2", Dimension::CouplingVolume, &MaterialParams::c2},
    {"C3", Dimension::CouplingArea, &MaterialParams::c3},
    {"C4", Dimension::Conductivity, &MaterialParams::c4},
};

constexpr std::string_view kMetaKeys[] = {"preset", "calorie_in_joules", "theta0_absolute"};
constexpr std::string_view kCurvatureA[] = {"a1", "a2", "a3"};
constexpr std::string_view kCurvatureAlpha[] = {"alpha1_bar", "alpha2_bar", "alpha3_bar"};

bool known_key(std::string_view key) {
  if (key == "theta0") return true;
  for (const auto& s : kScalarKeys)
    if (s.key == key) return true;
  for (auto group : {std::span<const std::string_view>(kMetaKeys), std::span<const std::string_view>(kCurvatureA),
                     std::span<const std::string_view>(kCurvatureAlpha)})
    if (std::find(group.begin(), group.end(), key) != group.end()) return true;
  return false;
}

std::string canonical_key(std::string_view key) {
  // c0..c4 are accepted as aliases of C0..C4.
  if (key.size() == 2 && key[0] == 'c' && key[1] >= '0' && key[1] <= '4') return std::string("C") + key[1];
  return std::string(key);
}

std::string at_line(int line) { return line > 0 ? " (line " + std::to_string(line) + ")" : ""; }

double quantity_for(const std::map<std::string, Entry>& entries, const std::string& key, Dimension dim,
                    const UnitConventions& units) {
  const Entry& e = entries.at(key);
  try {
    return parse_quantity(e.value, dim, units);
  } catch (const ConfigError& err) {
    throw ConfigError(std::string("config key '") + key + "'" + at_line(e.line) + ": " + err.what(), key, e.line);
  }
}

}  // namespace

double parse_quantity(std::string_view text, Dimension dim, const UnitConventions& units) {
  text = trim(text);
  std::size_t split = 0;
  while (split < text.size() && (std::isdigit(static_cast<unsigned char>(text[split])) || text[split] == '.' ||
                                 text[split] == '-' || text[split] == '+' ||
                                 ((text[split] == 'e' || text[split] == 'E') && split > 0 &&
                                  split + 1 < text.size() &&
                                  (std::isdigit(static_cast<unsigned char>(text[split + 1])) ||
                                   text[split + 1] == '-' || text[split + 1] == '+'))))
    ++split;
  const auto number = parse_number(text.substr(0, split));
  if (!number) throw ConfigError("cannot parse a number from '" + std::string(text) + "'");
  const std::string unit = normalize_unit(text.substr(split));
  if (unit.empty()) throw ConfigError("missing unit; expected " + std::string(expected_units(dim)));
  const auto factor = unit_factor(unit, dim, units);
  if (!factor)
    throw ConfigError("unrecognized unit '" + unit + "'; expected " + std::string(expected_units(dim)));
  if (dim == Dimension::Temperature) {
    const bool celsius = unit == "C";
    return *number + (celsius && units.theta0_absolute ? kCelsiusToKelvin : 0.0);
  }
  return *number * *factor;
}

MaterialParams parse_config(std::string_view text) {
  std::map<std::string, Entry> entries;
  std::istringstream in{std::string(text)};
  int line_no = 0;
  for (std::string raw; std::getline(in, raw);) {
    ++line_no;
    std::string_view line(raw);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value unit'", "", line_no);
    const std::string key = canonical_key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (!known_key(key)) throw ConfigError("unknown config key '" + key + "'" + at_line(line_no), key, line_no);
    if (value.empty()) throw ConfigError("config key '" + key + "'" + at_line(line_no) + ": empty value", key, line_no);
    if (entries.count(key))
      throw ConfigError("duplicate config key '" + key + "'" + at_line(line_no), key, line_no);
    entries[key] = {value, line_no};
  }

  UnitConventions units;
  if (auto it = entries.find("calorie_in_joules"); it != entries.end()) {
    const auto v = parse_number(it->second.value);
    if (!v || !(*v > 0.0))
      throw ConfigError("config key 'calorie_in_joules'" + at_line(it->second.line) + ": expected a positive number",
                        "calorie_in_joules", it->second.line);
    units.calorie_in_joules = *v;
  }
  if (auto it = entries.find("theta0_absolute"); it != entries.end()) {
    if (it->second.value == "true")
      units.theta0_absolute = true;
    else if (it->second.value == "false")
      units.theta0_absolute = false;
    else
      throw ConfigError("config key 'theta0_absolute'" + at_line(it->second.line) + ": expected true or false",
                        "theta0_absolute", it->second.line);
  }

  std::optional<MaterialParams> base;
  if (auto it = entries.find("preset"); it != entries.end()) {
    const auto id = parse_model_id(it->second.value);
    if (!id)
      throw ConfigError("config key 'preset'" + at_line(it->second.line) + ": unknown model '" + it->second.value +
                            "' (expected I..VI)",
                        "preset", it->second.line);
    base = preset(*id, units);
  }

  MaterialParams p = base.value_or(MaterialParams{});
  p.units = units;
  auto missing = [](std::string_view key) {
    return ConfigError("missing config key '" + std::string(key) + "'", std::string(key), 0);
  };

  for (const KeySpec& spec : kScalarKeys) {
    if (entries.count(std::string(spec.key)))
      p.*spec.field = quantity_for(entries, std::string(spec.key), spec.dim, units);
    else if (!base)
      throw missing(spec.key);
  }
  if (entries.count("theta0"))
    p.theta0 = quantity_for(entries, "theta0", Dimension::Temperature, units);
  else if (!base)
    throw missing("theta0");

  auto count_of = [&](std::span<const std::string_view> keys) {
    return std::count_if(keys.begin(), keys.end(), [&](auto k) { return entries.count(std::string(k)) > 0; });
  };
  const auto n_a = count_of(kCurvatureA);
  const auto n_alpha = count_of(kCurvatureAlpha);
  if (n_a > 0 && n_alpha > 0) {
    const int line = entries.count("alpha1_bar") ? entries["alpha1_bar"].line : 0;
    throw ConfigError("config mixes a1..a3 with alpha1_bar..alpha3_bar; use one parametrization", "alpha1_bar", line);
  }
  if (n_alpha > 0) {
    double* fields[] = {&p.alpha1_bar, &p.alpha2_bar, &p.alpha3_bar};
    for (int i = 0; i < 3; ++i) {
      const std::string key(kCurvatureAlpha[i]);
      if (entries.count(key))
        *fields[i] = quantity_for(entries, key, Dimension::PressureArea, units);
      else if (!base)
        throw missing(key);
    }
  } else {
    if (n_a == 0 && !base) throw missing("a1");
    CurvatureModuli a = irreducible_curvature(p);
    double* fields[] = {&a.a1, &a.a2, &a.a3};
    for (int i = 0; i < 3; ++i) {
      const std::string key(kCurvatureA[i]);
      if (entries.count(key))
        *fields[i] = quantity_for(entries, key, Dimension::PressureArea, units);
      else if (!base)
        throw missing(key);
    }
    if (n_a > 0) {
      const CurvatureAlphas al = convert_curvature(a);
      p.alpha1_bar = al.alpha1_bar;
      p.alpha2_bar = al.alpha2_bar;
      p.alpha3_bar = al.alpha3_bar;
    }
  }
  return p;
}

MaterialParams load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return read_report_json(text).params;
  return parse_config(text);
}

std::string dump_config(const MaterialParams& p) {
  std::string out = "# material parameters in SI units\n";
  char buf[128];
  auto line = [&](std::string_view key, double v, std::string_view unit) {
    std::snprintf(buf, sizeof buf, "%-17s = %.17g %s\n", std::string(key).c_str(), v, std::string(unit).c_str());
    out += buf;
  };
  std::snprintf(buf, sizeof buf, "%-17s = %.17g\n", "calorie_in_joules", p.units.calorie_in_joules);
  out += buf;
  out += std::string("theta0_absolute   = ") + (p.units.theta0_absolute ? "true" : "false") + "\n";
  line("lambda_e", p.lambda_e, "Pa");
  line("mu_e", p.mu_e, "Pa");
  line("lambda_micro", p.lambda_micro, "Pa");
  line("mu_micro", p.mu_micro, "Pa");
  line("mu_c", p.mu_c, "Pa");
  line("rho", p.rho, "kg/m^3");
  line("zeta0", p.zeta0, "kg/m");
  line("C0", p.c0, "J/(kg*K)");
  line("C1", p.c1, "J/(m^3*K)");
  line("C2", p.c2, "J/(m^3*K)");
  line("C3", p.c3, "J/(m^2*K)");
  line("C4", p.c4, "J/(m*s)");
  line("theta0", p.theta0, p.units.theta0_absolute ? "K" : "C");
  line("alpha1_bar", p.alpha1_bar, "Pa*m^2");
  line("alpha2_bar", p.alpha2_bar, "Pa*m^2");
  line("alpha3_bar", p.alpha3_bar, "Pa*m^2");
  return out;
}

}  // namespace thermodisp
