#include "thermodisp/cli.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "thermodisp/bandgap.hpp"
#include "thermodisp/config.hpp"
#include "thermodisp/errors.hpp"
#include "thermodisp/report.hpp"

namespace thermodisp {

namespace {

struct ParamOptions {
  std::string preset;
  std::string config;
  bool thermal_off = false;
  std::string mu_c;
  bool strict = false;
};

void add_param_options(CLI::App* cmd, ParamOptions& o) {
  auto* p = cmd->add_option("--preset", o.preset, "Compiled-in model I..VI");
  auto* c = cmd->add_option("--config", o.config, "Config file (or JSON sweep report)");
  p->excludes(c);
  cmd->add_flag("--thermal-off", o.thermal_off, "Zero the thermoelastic couplings C1..C4");
  cmd->add_option("--mu-c", o.mu_c, "Override the Cosserat couple modulus (Pa, or '<value> <unit>')");
  cmd->add_flag("--strict-validate", o.strict, "Treat validation violations as errors");
}

MaterialParams resolve_params(const ParamOptions& o, std::ostream& err) {
  MaterialParams p;
  if (!o.preset.empty()) {
    const auto id = parse_model_id(o.preset);
    if (!id) throw ConfigError("unknown preset '" + o.preset + "' (expected I..VI)", "preset");
    p = preset(*id);
  } else if (!o.config.empty()) {
    p = load_config(o.config);
  } else {
    throw ConfigError("one of --preset or --config is required");
  }
  if (o.thermal_off) p = thermal_off(p);
  if (!o.mu_c.empty()) {
    std::string text = o.mu_c;
    if (text.find_first_of("aAP") == std::string::npos) text += " Pa";
    try {
      p.mu_c = parse_quantity(text, Dimension::Pressure, p.units);
    } catch (const ConfigError& e) {
      throw ConfigError(std::string("--mu-c: ") + e.what(), "mu_c");
    }
  }
  const ValidationReport report = validate(p);
  if (!report.ok()) {
    if (o.strict) throw ConfigError("parameters failed validation:\n" + report.to_string());
    err << "warning: " << report.to_string();
  }
  return p;
}

std::string fmt5(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4e", v);
  return buf;
}

std::vector<SystemKind> systems_for(const std::string& selector) {
  if (selector == "long") return {SystemKind::Longitudinal5};
  if (selector == "trans") return {SystemKind::Transverse3};
  if (selector == "uncoupled") return {SystemKind::Uncoupled1};
  if (selector == "all") return {SystemKind::Longitudinal5, SystemKind::Transverse3, SystemKind::Uncoupled1};
  throw ConfigError("unknown --system '" + selector + "' (expected long, trans, uncoupled or all)", "system");
}

std::vector<double> k_grid_for(double k_max, int points) {
  if (!(k_max > 0.0) || points < 2)
    throw PreconditionError("empty wavenumber range: need --kmax > 0 and --points >= 2");
  return default_k_grid(k_max, points);
}

void print_gaps(std::ostream& out, std::string_view title, const std::vector<BandGap>& gaps) {
  out << title << ":";
  if (gaps.empty()) {
    out << " no band gap\n";
    return;
  }
  out << '\n';
  for (const BandGap& g : gaps) out << "  " << fmt5(g.lo) << " .. " << fmt5(g.hi) << " rad/s\n";
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dispersion analysis for the thermoelastic relaxed micromorphic continuum", "thermodisp"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(version()));

  ParamOptions cut_opts, sweep_opts, gap_opts, val_opts;

  auto* presets_cmd = app.add_subcommand("presets", "List compiled-in models or dump one as a config file");
  std::string dump_id;
  presets_cmd->add_option("--dump", dump_id, "Model to print in config syntax");

  auto* validate_cmd = app.add_subcommand("validate", "Check parameter positivity conditions");
  add_param_options(validate_cmd, val_opts);

  auto* cutoffs_cmd = app.add_subcommand("cutoffs", "Print closed-form cut-off frequencies");
  add_param_options(cutoffs_cmd, cut_opts);

  auto* sweep_cmd = app.add_subcommand("sweep", "Sweep wavenumbers and write branch tables");
  add_param_options(sweep_cmd, sweep_opts);
  std::string system = "all";
  double k_max = 1.0e4;
  int points = 400;
  std::string out_path;
  std::string report_path;
  std::string format = "csv";
  double tol_damping = 1e-3;
  sweep_cmd->add_option("--system", system, "long, trans, uncoupled or all");
  sweep_cmd->add_option("--kmax", k_max, "Largest wavenumber (rad/m)");
  sweep_cmd->add_option("--points", points, "Number of wavenumbers");
  sweep_cmd->add_option("--out", out_path, "Output path, '-' for stdout")->required();
  sweep_cmd->add_option("--format", format, "csv or gnuplot");
  sweep_cmd->add_option("--report", report_path, "Also write a JSON report");
  sweep_cmd->add_option("--tol-damping", tol_damping, "Relative damping threshold for THERMAL branches");

  auto* gap_cmd = app.add_subcommand("bandgap", "Detect frequency band gaps");
  add_param_options(gap_cmd, gap_opts);
  double gap_kmax = 1.0e4;
  int gap_points = 400;
  int omega_cells = 2000;
  gap_cmd->add_option("--kmax", gap_kmax, "Largest wavenumber (rad/m)");
  gap_cmd->add_option("--points", gap_points, "Number of wavenumbers");
  gap_cmd->add_option("--omega-cells", omega_cells, "Frequency occupancy cells on [0, 2 x largest cutoff]");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitConfigError;
  }

  try {
    if (*presets_cmd) {
      if (!dump_id.empty()) {
        const auto id = parse_model_id(dump_id);
        if (!id) throw ConfigError("unknown preset '" + dump_id + "' (expected I..VI)", "preset");
        out << "# model " << dump_id << "\n" << dump_config(preset(*id));
        return kExitOk;
      }
      out << "model  a1 (Pa m^2)  a2 (Pa m^2)  a3 (Pa m^2)  mu_c (Pa)\n";
      for (ModelId id : kAllModels) {
        const MaterialParams p = preset(id);
        const CurvatureModuli a = irreducible_curvature(p);
        char buf[160];
        std::snprintf(buf, sizeof buf, "%-5s  %-11.4g  %-11.4g  %-11.4g  %.4g\n", std::string(to_string(id)).c_str(),
                      a.a1, a.a2, a.a3, p.mu_c);
        out << buf;
      }
      return kExitOk;
    }

    if (*validate_cmd) {
      ParamOptions o = val_opts;
      o.strict = false;
      std::ostringstream sink;
      const MaterialParams p = resolve_params(o, sink);
      const ValidationReport report = validate(p);
      out << report.to_string();
      if (report.ok()) out << '\n';
      return report.ok() ? kExitOk : kExitConfigError;
    }

    if (*cutoffs_cmd) {
      const MaterialParams p = resolve_params(cut_opts, err);
      if (!validate(p).ok()) throw ConfigError("cut-off frequencies require parameters that pass validation");
      out << "system        branch     omega (rad/s)  origin\n";
      for (const Cutoff& c : cutoffs(p)) {
        if (c.omega <= 0.0) continue;
        char buf[160];
        const std::string name = std::string(to_string(c.label)) + std::to_string(c.index);
        std::string origin = c.origin;
        if (c.omega == shifted_omega_p(p) && p.c2 != p.c1)
          origin += ", isothermal " + fmt5(derived_speeds(p).omega_p);
        std::snprintf(buf, sizeof buf, "%-13s %-10s %-14s %s\n", std::string(to_string(c.system)).c_str(),
                      name.c_str(), fmt5(c.omega).c_str(), origin.c_str());
        out << buf;
      }
      for (const Cutoff& c : cutoffs(p))
        if (c.omega <= 0.0)
          out << "# " << to_string(c.system) << ": " << c.origin << " = 0, branch is acoustic\n";
      return kExitOk;
    }

    if (*sweep_cmd) {
      const MaterialParams p = resolve_params(sweep_opts, err);
      const std::vector<SystemKind> kinds = systems_for(system);
      if (format != "csv" && format != "gnuplot") throw ConfigError("unknown --format '" + format + "'", "format");
      const std::vector<double> grid = k_grid_for(k_max, points);
      SweepOptions opts;
      opts.tol_damping = tol_damping;

      SweepReport report;
      report.params = p;
      report.system_selector = system;
      report.k_max = k_max;
      report.points = points;
      report.tol_damping = tol_damping;
      for (SystemKind kind : kinds) report.sets.push_back(sweep(p, kind, grid, opts));
      if (validate(p).ok()) report.cutoffs = cutoffs(p);
      for (const BranchSet& s : report.sets)
        for (const LinkAmbiguity& a : s.ambiguities)
          err << "note: " << to_string(s.system) << " linking ambiguity at k = " << a.k << ": " << a.detail << '\n';

      std::ostringstream body;
      if (format == "csv")
        write_csv(body, report.sets);
      else
        write_gnuplot(body, report.sets);

      if (out_path == "-") {
        out << body.str();
      } else {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) throw ConfigError("cannot write output file '" + out_path + "'", "out");
        f << body.str();
      }
      if (!report_path.empty()) {
        std::ofstream f(report_path, std::ios::binary);
        if (!f) throw ConfigError("cannot write report file '" + report_path + "'", "report");
        f << write_report_json(report) << '\n';
      }
      return kExitOk;
    }

    if (*gap_cmd) {
      const MaterialParams p = resolve_params(gap_opts, err);
      const std::vector<double> grid = k_grid_for(gap_kmax, gap_points);
      const std::vector<double> omega_grid = default_omega_grid(p, omega_cells);
      const BandGapAnalysis a = analyze_band_gaps(p, grid, omega_grid);
      for (const auto& [kind, gaps] : a.per_system) print_gaps(out, to_string(kind), gaps);
      print_gaps(out, "joint", a.joint);
      return kExitOk;
    }
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << '\n';
    return kExitPrecondition;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitPrecondition;
  }
  return kExitOk;
}

}  // namespace thermodisp
