#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "thermodisp/bandgap.hpp"
#include "thermodisp/config.hpp"
#include "thermodisp/polyeig.hpp"
#include "thermodisp/report.hpp"

namespace py = pybind11;
using namespace thermodisp;

namespace {

SystemKind system_from(const std::string& name) {
  if (name == "long" || name == "longitudinal") return SystemKind::Longitudinal5;
  if (name == "trans" || name == "transverse") return SystemKind::Transverse3;
  if (name == "uncoupled") return SystemKind::Uncoupled1;
  throw py::value_error("unknown system '" + name + "' (expected long, trans or uncoupled)");
}

ModelId model_from(const std::string& name) {
  const auto id = parse_model_id(name);
  if (!id) throw py::value_error("unknown model '" + name + "' (expected I..VI)");
  return *id;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Plane-wave dispersion of the thermoelastic relaxed micromorphic continuum";
  m.attr("__version__") = std::string(version());

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ArithmeticError);

  py::class_<UnitConventions>(m, "UnitConventions")
      .def(py::init<>())
      .def_readwrite("calorie_in_joules", &UnitConventions::calorie_in_joules)
      .def_readwrite("theta0_absolute", &UnitConventions::theta0_absolute);

  py::class_<MaterialParams>(m, "MaterialParams")
      .def(py::init<>())
      .def_readwrite("lambda_e", &MaterialParams::lambda_e)
      .def_readwrite("mu_e", &MaterialParams::mu_e)
      .def_readwrite("mu_c", &MaterialParams::mu_c)
      .def_readwrite("lambda_micro", &MaterialParams::lambda_micro)
      .def_readwrite("mu_micro", &MaterialParams::mu_micro)
      .def_readwrite("alpha1_bar", &MaterialParams::alpha1_bar)
      .def_readwrite("alpha2_bar", &MaterialParams::alpha2_bar)
      .def_readwrite("alpha3_bar", &MaterialParams::alpha3_bar)
      .def_readwrite("rho", &MaterialParams::rho)
      .def_readwrite("zeta0", &MaterialParams::zeta0)
      .def_readwrite("c0", &MaterialParams::c0)
      .def_readwrite("c1", &MaterialParams::c1)
      .def_readwrite("c2", &MaterialParams::c2)
      .def_readwrite("c3", &MaterialParams::c3)
      .def_readwrite("c4", &MaterialParams::c4)
      .def_readwrite("theta0", &MaterialParams::theta0)
      .def_readwrite("units", &MaterialParams::units)
      .def(py::self == py::self)
      .def("__repr__", [](const MaterialParams& p) { return "<MaterialParams\n" + dump_config(p) + ">"; });

  py::class_<DerivedSpeeds>(m, "DerivedSpeeds")
      .def_readonly("c_p", &DerivedSpeeds::c_p)
      .def_readonly("c_s", &DerivedSpeeds::c_s)
      .def_readonly("c_m", &DerivedSpeeds::c_m)
      .def_readonly("omega_s", &DerivedSpeeds::omega_s)
      .def_readonly("omega_p", &DerivedSpeeds::omega_p);

  m.def("preset", [](const std::string& id) { return preset(model_from(id)); }, py::arg("model"),
        "Compiled-in model I..VI in SI units");
  m.def("models", [] {
    std::vector<std::string> out;
    for (ModelId id : kAllModels) out.emplace_back(to_string(id));
    return out;
  });
  m.def("thermal_off", &thermal_off, py::arg("params"));
  m.def("derived_speeds", &derived_speeds, py::arg("params"));
  m.def("validate", [](const MaterialParams& p) {
    std::vector<std::string> rules;
    for (const Violation& v : validate(p).violations) rules.push_back(v.rule);
    return rules;
  }, py::arg("params"), "List of violated rules; empty when the parameters are admissible");
  m.def("convert_curvature", [](double a1, double a2, double a3) {
    const CurvatureAlphas a = convert_curvature({a1, a2, a3});
    return py::make_tuple(a.alpha1_bar, a.alpha2_bar, a.alpha3_bar);
  }, py::arg("a1"), py::arg("a2"), py::arg("a3"));

  m.def("parse_config", &parse_config, py::arg("text"));
  m.def("load_config", [](const std::string& path) { return load_config(path); }, py::arg("path"));
  m.def("dump_config", &dump_config, py::arg("params"));

  m.def("assemble", [](const MaterialParams& p, const std::string& system, double k, Complex omega) {
    return assemble(system_from(system), p, k, omega).entries;
  }, py::arg("params"), py::arg("system"), py::arg("k"), py::arg("omega"),
        "Wave-system matrix as a complex numpy array");
  m.def("det_coefficients", [](const MaterialParams& p, const std::string& system, double k) {
    return det_poly(system_from(system), p, k).coefficients();
  }, py::arg("params"), py::arg("system"), py::arg("k"), "det A as polynomial coefficients in omega, lowest first");
  m.def("roots", [](const MaterialParams& p, const std::string& system, double k) {
    return root_values(roots(det_poly(system_from(system), p, k)));
  }, py::arg("params"), py::arg("system"), py::arg("k"));
  m.def("residual", [](const MaterialParams& p, const std::string& system, double k, Complex omega) {
    return residual(system_from(system), p, k, omega);
  }, py::arg("params"), py::arg("system"), py::arg("k"), py::arg("omega"));
  m.def("uncoupled_omega", &uncoupled_omega, py::arg("params"), py::arg("k"));

  m.def("cutoffs", [](const MaterialParams& p) {
    py::list out;
    for (const Cutoff& c : cutoffs(p)) {
      py::dict d;
      d["system"] = std::string(to_string(c.system));
      d["label"] = std::string(to_string(c.label));
      d["index"] = c.index;
      d["omega"] = c.omega;
      d["origin"] = c.origin;
      out.append(d);
    }
    return out;
  }, py::arg("params"));

  m.def("default_k_grid", &default_k_grid, py::arg("k_max") = 1.0e4, py::arg("points") = 400);

  m.def("sweep", [](const MaterialParams& p, const std::string& system, std::vector<double> k_grid,
                    double tol_damping) {
    SweepOptions opts;
    opts.tol_damping = tol_damping;
    const SystemKind kind = system_from(system);
    BranchSet s;
    {
      py::gil_scoped_release release;
      s = sweep(p, kind, k_grid, opts);
    }
    py::list out;
    for (const Branch& b : s.branches) {
      py::dict d;
      d["label"] = std::string(to_string(b.label));
      d["index"] = b.index;
      d["name"] = b.name();
      d["cutoff"] = b.cutoff ? py::cast(*b.cutoff) : py::none();
      std::vector<double> k;
      std::vector<Complex> w;
      std::vector<double> r;
      for (const BranchPoint& pt : b.points) {
        k.push_back(pt.k);
        w.push_back(pt.omega);
        r.push_back(pt.residual);
      }
      d["k"] = k;
      d["omega"] = w;
      d["residual"] = r;
      out.append(d);
    }
    return out;
  }, py::arg("params"), py::arg("system"), py::arg("k_grid"), py::arg("tol_damping") = 1e-3,
        "Branches as dicts with label, index, cutoff and per-point k, omega, residual");

  m.def("sweep_csv", [](const MaterialParams& p, const std::vector<std::string>& systems, std::vector<double> k_grid) {
    std::vector<BranchSet> sets;
    for (const std::string& name : systems) sets.push_back(sweep(p, system_from(name), k_grid));
    std::ostringstream out;
    write_csv(out, sets);
    return out.str();
  }, py::arg("params"), py::arg("systems"), py::arg("k_grid"));

  m.def("band_gaps", [](const MaterialParams& p, double k_max, int points, int omega_cells) {
    BandGapAnalysis a;
    {
      py::gil_scoped_release release;
      a = analyze_band_gaps(p, default_k_grid(k_max, points), default_omega_grid(p, omega_cells));
    }
    auto pairs = [](const std::vector<BandGap>& gaps) {
      std::vector<std::pair<double, double>> out;
      for (const BandGap& g : gaps) out.emplace_back(g.lo, g.hi);
      return out;
    };
    py::dict d;
    d["joint"] = pairs(a.joint);
    for (const auto& [kind, gaps] : a.per_system) d[py::str(std::string(to_string(kind)))] = pairs(gaps);
    return d;
  }, py::arg("params"), py::arg("k_max") = 1.0e4, py::arg("points") = 400, py::arg("omega_cells") = 2000,
        "Joint and per-system gaps as lists of (lo, hi) in rad/s");
}
