#include "thermodisp/report.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <tuple>

#include "json.hpp"
#include "thermodisp/errors.hpp"
#include "thermodisp/polyeig.hpp"

#ifndef THERMODISP_VERSION
#define THERMODISP_VERSION "0.0.0"
#endif

namespace thermodisp {

using nlohmann::json;

std::string_view version() { return THERMODISP_VERSION; }

namespace {

struct Row {
  std::string label;
  int index;
  double k;
  Complex omega;
  double residual;
};

std::vector<Row> sorted_rows(std::span<const BranchSet> sets) {
  std::vector<Row> rows;
  for (const BranchSet& s : sets)
    for (const Branch& b : s.branches)
      for (const BranchPoint& pt : b.points)
        rows.push_back({std::string(to_string(b.label)), b.index, pt.k, pt.omega, pt.residual});
  std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    return std::tie(a.label, a.index, a.k) < std::tie(b.label, b.index, b.k);
  });
  return rows;
}

std::string sci(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17e", v);
  return buf;
}

json params_to_json(const MaterialParams& p) {
  return {{"lambda_e", p.lambda_e},     {"mu_e", p.mu_e},
          {"mu_c", p.mu_c},             {"lambda_micro", p.lambda_micro},
          {"mu_micro", p.mu_micro},     {"alpha1_bar", p.alpha1_bar},
          {"alpha2_bar", p.alpha2_bar}, {"alpha3_bar", p.alpha3_bar},
          {"rho", p.rho},               {"zeta0", p.zeta0},
          {"C0", p.c0},                 {"C1", p.c1},
          {"C2", p.c2},                 {"C3", p.c3},
          {"C4", p.c4},                 {"theta0", p.theta0},
          {"calorie_in_joules", p.units.calorie_in_joules},
          {"theta0_absolute", p.units.theta0_absolute}};
}

MaterialParams params_from_json(const json& j) {
  MaterialParams p;
  p.lambda_e = j.at("lambda_e").get<double>();
  p.mu_e = j.at("mu_e").get<double>();
  p.mu_c = j.at("mu_c").get<double>();
  p.lambda_micro = j.at("lambda_micro").get<double>();
  p.mu_micro = j.at("mu_micro").get<double>();
  p.alpha1_bar = j.at("alpha1_bar").get<double>();
  p.alpha2_bar = j.at("alpha2_bar").get<double>();
  p.alpha3_bar = j.at("alpha3_bar").get<double>();
  p.rho = j.at("rho").get<double>();
  p.zeta0 = j.at("zeta0").get<double>();
  p.c0 = j.at("C0").get<double>();
  p.c1 = j.at("C1").get<double>();
  p.c2 = j.at("C2").get<double>();
  p.c3 = j.at("C3").get<double>();
  p.c4 = j.at("C4").get<double>();
  p.theta0 = j.at("theta0").get<double>();
  p.units.calorie_in_joules = j.at("calorie_in_joules").get<double>();
  p.units.theta0_absolute = j.at("theta0_absolute").get<bool>();
  return p;
}

std::optional<SystemKind> system_from_string(std::string_view s) {
  for (SystemKind k : {SystemKind::Longitudinal5, SystemKind::Transverse3, SystemKind::Uncoupled1})
    if (to_string(k) == s) return k;
  return std::nullopt;
}

std::optional<BranchLabel> label_from_string(std::string_view s) {
  for (BranchLabel l : {BranchLabel::LA, BranchLabel::LO, BranchLabel::TA, BranchLabel::TO, BranchLabel::TSO_TCVO,
                        BranchLabel::THERMAL})
    if (to_string(l) == s) return l;
  return std::nullopt;
}

}  // namespace

void write_csv(std::ostream& out, std::span<const BranchSet> sets) {
  out << "k,branch_label,branch_index,re_omega,im_omega,residual\n";
  for (const Row& r : sorted_rows(sets)) {
    out << sci(r.k) << ',' << r.label << ',' << r.index << ',' << sci(r.omega.real()) << ',' << sci(r.omega.imag())
        << ',' << sci(r.residual) << '\n';
  }
}

void write_gnuplot(std::ostream& out, std::span<const BranchSet> sets) {
  bool first = true;
  for (const BranchSet& s : sets) {
    for (const Branch& b : s.branches) {
      if (!first) out << "\n\n";
      first = false;
      out << "# " << to_string(s.system) << ' ' << b.name() << "\n# k re_omega im_omega residual\n";
      for (const BranchPoint& pt : b.points)
        out << sci(pt.k) << ' ' << sci(pt.omega.real()) << ' ' << sci(pt.omega.imag()) << ' ' << sci(pt.residual)
            << '\n';
    }
  }
}

std::string write_report_json(const SweepReport& r) {
  json j;
  j["tool"] = "thermodisp";
  j["version"] = r.tool_version.empty() ? std::string(version()) : r.tool_version;
  j["params"] = params_to_json(r.params);
  j["grid"] = {{"system", r.system_selector}, {"k_max", r.k_max}, {"points", r.points}};
  j["tolerances"] = {{"tol_damping", r.tol_damping},
                     {"root_residual", kRootResidualTol},
                     {"point_residual", kPointResidualTol}};
  json cut = json::array();
  for (const Cutoff& c : r.cutoffs)
    cut.push_back({{"system", to_string(c.system)},
                   {"label", to_string(c.label)},
                   {"index", c.index},
                   {"omega", c.omega},
                   {"origin", c.origin}});
  j["cutoffs"] = cut;
  json sets = json::array();
  for (const BranchSet& s : r.sets) {
    json branches = json::array();
    for (const Branch& b : s.branches) {
      json pts = json::array();
      for (const BranchPoint& pt : b.points) pts.push_back({pt.k, pt.omega.real(), pt.omega.imag(), pt.residual});
      branches.push_back({{"label", to_string(b.label)},
                          {"index", b.index},
                          {"cutoff", b.cutoff ? json(*b.cutoff) : json(nullptr)},
                          {"points", pts}});
    }
    json amb = json::array();
    for (const LinkAmbiguity& a : s.ambiguities) amb.push_back({{"k", a.k}, {"detail", a.detail}});
    sets.push_back({{"system", to_string(s.system)}, {"branches", branches}, {"link_ambiguities", amb}});
  }
  j["branch_sets"] = sets;
  if (r.joint_gaps) {
    json gaps = json::array();
    for (const BandGap& g : *r.joint_gaps) gaps.push_back({{"lo", g.lo}, {"hi", g.hi}});
    j["band_gaps"] = gaps;
  }
  return j.dump(1);
}

SweepReport read_report_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("report is not valid JSON: ") + e.what());
  }
  try {
    SweepReport r;
    r.tool_version = j.at("version").get<std::string>();
    r.params = params_from_json(j.at("params"));
    const json& grid = j.at("grid");
    r.system_selector = grid.at("system").get<std::string>();
    r.k_max = grid.at("k_max").get<double>();
    r.points = grid.at("points").get<int>();
    r.tol_damping = j.at("tolerances").at("tol_damping").get<double>();
    for (const json& c : j.at("cutoffs")) {
      Cutoff cut;
      cut.system = system_from_string(c.at("system").get<std::string>()).value();
      cut.label = label_from_string(c.at("label").get<std::string>()).value();
      cut.index = c.at("index").get<int>();
      cut.omega = c.at("omega").get<double>();
      cut.origin = c.at("origin").get<std::string>();
      r.cutoffs.push_back(cut);
    }
    for (const json& s : j.at("branch_sets")) {
      BranchSet set;
      set.params = r.params;
      set.system = system_from_string(s.at("system").get<std::string>()).value();
      set.tol_damping = r.tol_damping;
      for (const json& b : s.at("branches")) {
        Branch br;
        br.system = set.system;
        br.label = label_from_string(b.at("label").get<std::string>()).value();
        br.index = b.at("index").get<int>();
        if (!b.at("cutoff").is_null()) br.cutoff = b.at("cutoff").get<double>();
        for (const json& pt : b.at("points"))
          br.points.push_back({pt.at(0).get<double>(), {pt.at(1).get<double>(), pt.at(2).get<double>()},
                               pt.at(3).get<double>()});
        set.branches.push_back(std::move(br));
      }
      if (!set.branches.empty())
        for (const BranchPoint& pt : set.branches.front().points) set.k_grid.push_back(pt.k);
      r.sets.push_back(std::move(set));
    }
    if (j.contains("band_gaps")) {
      std::vector<BandGap> gaps;
      for (const json& g : j.at("band_gaps")) gaps.push_back({g.at("lo").get<double>(), g.at("hi").get<double>(), {}, r.tol_damping});
      r.joint_gaps = std::move(gaps);
    }
    return r;
  } catch (const std::exception& e) {
    throw ConfigError(std::string("malformed report: ") + e.what());
  }
}

}  // namespace thermodisp
