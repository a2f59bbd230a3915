#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "thermodisp/bandgap.hpp"
#include "thermodisp/cli.hpp"
#include "thermodisp/polyeig.hpp"

using namespace thermodisp;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

int failures = 0;

void report(int id, bool ok, const std::string& detail) {
  std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", id, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

const std::vector<SystemKind> kAll = {SystemKind::Longitudinal5, SystemKind::Transverse3, SystemKind::Uncoupled1};

// 1: cutoff table from the CLI, model I
void cutoff_reproduction() {
  const char* argv[] = {"thermodisp", "cutoffs", "--preset", "I"};
  std::ostringstream out, err;
  const auto t0 = Clock::now();
  const int code = run_cli(4, argv, out, err);
  const double dt = seconds_since(t0);

  std::vector<double> lon, tra;
  std::istringstream in(out.str());
  for (std::string line; std::getline(in, line);) {
    std::istringstream ls(line);
    std::string system, branch, value;
    ls >> system >> branch >> value;
    if (system != "longitudinal" && system != "transverse") continue;
    (system == "longitudinal" ? lon : tra).push_back(std::stod(value));
  }
  const std::vector<double> want_l = {2.4495e5, 2.9665e5, 4.5826e5};
  const std::vector<double> want_t = {2.4495e5, 2.9665e5};
  double worst = 0.0;
  bool shape = lon.size() == want_l.size() && tra.size() == want_t.size();
  if (shape) {
    for (std::size_t i = 0; i < lon.size(); ++i) worst = std::max(worst, std::abs(lon[i] / want_l[i] - 1));
    for (std::size_t i = 0; i < tra.size(); ++i) worst = std::max(worst, std::abs(tra[i] / want_t[i] - 1));
  }
  report(1, code == 0 && shape && worst <= 1e-3 && dt < 1.0,
         fmt("max relative deviation %.2e (limit 1e-3), runtime %.3f s (limit 1 s)", worst, dt) +
             (shape ? "" : ", wrong number of cutoffs"));
}

// 2: branch counts at 400 points
void branch_counts() {
  const std::vector<double> grid = default_k_grid(1e4, 400);
  double slowest = 0.0;
  auto timed = [&](ModelId id, SystemKind kind) {
    const auto t0 = Clock::now();
    BranchSet s = sweep(preset(id), kind, grid);
    slowest = std::max(slowest, seconds_since(t0));
    return s;
  };
  const BranchSet l1 = timed(ModelId::I, SystemKind::Longitudinal5);
  const BranchSet t1 = timed(ModelId::I, SystemKind::Transverse3);
  const BranchSet l2 = timed(ModelId::II, SystemKind::Longitudinal5);
  const bool ok = l1.count(BranchLabel::LA) == 2 && l1.count(BranchLabel::LO) == 3 &&
                  t1.count(BranchLabel::TA) == 1 && t1.count(BranchLabel::TO) == 2 &&
                  l2.count(BranchLabel::LA) == 3 && l2.count(BranchLabel::LO) == 2 && slowest < 30.0;
  char buf[256];
  std::snprintf(buf, sizeof buf, "I: %d LA + %d LO, %d TA + %d TO; II: %d LA + %d LO; slowest sweep %.3f s (limit 30 s)",
                l1.count(BranchLabel::LA), l1.count(BranchLabel::LO), t1.count(BranchLabel::TA),
                t1.count(BranchLabel::TO), l2.count(BranchLabel::LA), l2.count(BranchLabel::LO), slowest);
  report(2, ok, buf);
}

// 3: band-gap pattern and thermal invariance of the gaps
void band_gap_pattern() {
  const std::vector<double> grid = default_k_grid(1e4, 400);
  bool ok = true;
  std::string detail;
  double worst_shift = 0.0;
  double worst_cells = 0.0;
  for (ModelId id : kAllModels) {
    const MaterialParams p = preset(id);
    const std::vector<double> wg = default_omega_grid(p);
    const double h = wg[1] - wg[0];
    const auto gaps = analyze_band_gaps(p, grid, wg).joint;
    const bool want = p.mu_c > 0.0;
    const bool has = !gaps.empty();
    ok = ok && want == has;
    detail += std::string(to_string(id)) + (has ? ":gap " : ":none ");
    if (want) {
      const auto off = analyze_band_gaps(thermal_off(p), grid, wg).joint;
      if (off.size() != gaps.size()) {
        ok = false;
        continue;
      }
      for (std::size_t i = 0; i < gaps.size(); ++i) {
        const double shift = std::max(std::abs(gaps[i].lo - off[i].lo), std::abs(gaps[i].hi - off[i].hi));
        worst_shift = std::max(worst_shift, shift);
        worst_cells = std::max(worst_cells, shift / h);
      }
    }
  }
  ok = ok && worst_cells <= 1.0 + 1e-9;

  // unquantized movement of the edge below the gap: top of the acoustic plateau
  auto plateau = [&](const MaterialParams& p) {
    double top = 0.0;
    for (const Branch& b : sweep(p, SystemKind::Longitudinal5, grid).branches)
      if (b.label == BranchLabel::LA)
        for (const BranchPoint& pt : b.points) top = std::max(top, pt.omega.real());
    return top;
  };
  const double lo_on = plateau(preset(ModelId::I));
  const double lo_off = plateau(thermal_off(preset(ModelId::I)));
  report(3, ok,
         detail + fmt("; thermal-off gap edges move by %.3g rad/s = %.2f cells (limit 1 cell)", worst_shift, worst_cells) +
             fmt("; model I acoustic plateau %.6g vs %.6g rad/s without coupling", lo_on, lo_off));
}

// 4: transverse waves ignore C0..C4 and theta0
void transverse_thermal_invariance() {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.1, 10.0);
  std::uniform_real_distribution<double> uk(0.0, 1e4);
  bool matrices = true;
  double worst = 0.0;
  const std::vector<double> grid = default_k_grid(1e4, 400);
  for (ModelId id : kAllModels) {
    const MaterialParams p = preset(id);
    const BranchSet ref = sweep(p, SystemKind::Transverse3, grid);
    for (int trial = 0; trial < 4; ++trial) {
      MaterialParams q = p;
      q.c0 *= u(rng);
      q.c1 *= trial == 0 ? 0.0 : u(rng);
      q.c2 *= trial == 0 ? 0.0 : u(rng);
      q.c3 *= trial == 0 ? 0.0 : u(rng);
      q.c4 *= trial == 0 ? 0.0 : u(rng);
      q.theta0 *= u(rng);
      for (int i = 0; i < 5; ++i) {
        const double k = uk(rng);
        const Complex w(1e5 * u(rng), 1e3 * (u(rng) - 5));
        matrices = matrices && transverse_pencil(p, k) == transverse_pencil(q, k) &&
                   assemble_transverse(p, k, w).entries == assemble_transverse(q, k, w).entries;
      }
      const BranchSet s = sweep(q, SystemKind::Transverse3, grid);
      if (s.branches.size() != ref.branches.size()) {
        matrices = false;
        continue;
      }
      for (std::size_t b = 0; b < s.branches.size(); ++b)
        for (std::size_t j = 0; j < grid.size(); ++j) {
          const Complex x = ref.branches[b].points[j].omega;
          const Complex y = s.branches[b].points[j].omega;
          worst = std::max(worst, std::abs(x - y) / std::max(std::abs(x), 1e-300));
        }
    }
  }
  report(4, matrices && worst <= 1e-12,
         std::string(matrices ? "matrices bitwise identical" : "matrices differ") +
             fmt("; branch points max relative difference %.2e (limit 1e-12)", worst));
}

// 5: solver properties
void solver_correctness() {
  const std::vector<double> grid = default_k_grid(1e4, 400);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> uk(0.0, 1e4);

  double worst_res = 0.0;
  for (ModelId id : kAllModels)
    for (SystemKind kind : kAll)
      for (const Branch& b : sweep(preset(id), kind, grid).branches)
        for (const BranchPoint& pt : b.points) worst_res = std::max(worst_res, pt.residual);
  const bool a = worst_res <= 1e-8;

  double worst_sym = 0.0;
  double worst_imag_w2 = 0.0;
  double worst_neg_w2 = 0.0;
  for (ModelId id : kAllModels) {
    const MaterialParams p = preset(id);
    const double ws = frequency_scale(p);
    for (int i = 0; i < 20; ++i) {
      const double k = uk(rng);
      const std::vector<Complex> rs = root_values(roots(det_poly(SystemKind::Longitudinal5, p, k)));
      for (Complex w : rs) {
        double best = 1e300;
        for (Complex v : rs) best = std::min(best, std::abs(w + std::conj(v)));
        worst_sym = std::max(worst_sym, best / std::max(std::abs(w), ws));
      }
      for (Complex w : root_values(roots(det_poly(SystemKind::Transverse3, p, k)))) {
        const Complex w2 = w * w;
        worst_imag_w2 = std::max(worst_imag_w2, std::abs(w2.imag()) / std::max(std::abs(w2), ws * ws));
        worst_neg_w2 = std::max(worst_neg_w2, -w2.real() / (ws * ws));
      }
    }
  }
  const bool b = worst_sym <= 1e-8;
  const bool c = worst_imag_w2 <= 1e-8 && worst_neg_w2 <= 1e-8;

  bool d = true;
  for (ModelId id : kAllModels)
    for (double k : {0.0, 1.0, 100.0, 1e4, uk(rng)})
      d = d && det_poly(SystemKind::Longitudinal5, preset(id), k).degree() == 9 &&
          det_poly(SystemKind::Transverse3, preset(id), k).degree() == 6;

  // scan oracle against companion roots on random (model, system, k)
  bool e = true;
  int crossings = 0;
  std::uniform_int_distribution<int> pick(0, 5);
  for (int trial = 0; trial < 10; ++trial) {
    const MaterialParams p = preset(kAllModels[pick(rng)]);
    const SystemKind kind = trial % 2 ? SystemKind::Longitudinal5 : SystemKind::Transverse3;
    const double k = uk(rng);
    const std::vector<Complex> rs = root_values(roots(det_poly(kind, p, k)));
    double top = 0.0;
    for (Complex w : rs) top = std::max(top, w.real());
    const int n = 40000;
    std::vector<double> wg;
    for (int i = 0; i <= n; ++i) wg.push_back(1.1 * top * i / n);
    const double h = wg[1] - wg[0];
    // roots within one grid step of the real axis and inside the scan window
    std::vector<double> real_roots;
    for (Complex w : rs)
      if (w.real() > h && std::abs(w.imag()) <= h) real_roots.push_back(w.real());
    const auto mins = scan_oracle(kind, p, k, wg);
    for (double w : real_roots) {
      bool found = false;
      for (const ScanMinimum& m : mins) found = found || std::abs(m.omega - w) <= h;
      e = e && found;
      ++crossings;
    }
    for (const ScanMinimum& m : mins) {
      bool found = false;
      for (double w : real_roots) found = found || std::abs(m.omega - w) <= h;
      e = e && found;
    }
  }

  char buf[512];
  std::snprintf(buf, sizeof buf,
                "(a) max residual %.2e [%s] (b) max -conj asymmetry %.2e [%s] (c) max |Im w^2| %.2e, max -Re w^2 %.2e "
                "[%s] (d) degrees 9/6 [%s] (e) %d real crossings matched by scan [%s]",
                worst_res, a ? "ok" : "bad", worst_sym, b ? "ok" : "bad", worst_imag_w2, worst_neg_w2,
                c ? "ok" : "bad", d ? "ok" : "bad", crossings, e ? "ok" : "bad");
  report(5, a && b && c && d && e, buf);
}

// 6: thermal_off reduces to the isothermal 4x4 system
void reduction_consistency() {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> uk(1.0, 1e4);
  bool factor = true;
  double worst = 0.0;
  for (ModelId id : kAllModels) {
    const MaterialParams p = thermal_off(preset(id));
    for (int i = 0; i < 10; ++i) {
      const double k = i == 0 ? 1.0 : uk(rng);
      const ComplexPolynomial q = det_poly(SystemKind::Longitudinal5, p, k);
      factor = factor && q.degree() == 9 && q.scaled_coefficients()[0] == Complex{};
      const ComplexPolynomial elastic = q.deflated(0.0);
      factor = factor && elastic.degree() == 8;
      const std::vector<Complex> rs = root_values(roots(elastic));
      const std::vector<Complex> want = oracle::no_thermal_roots(p, k);
      std::vector<bool> used(want.size(), false);
      for (Complex w : rs) {
        double best = 1e300;
        std::size_t at = 0;
        for (std::size_t j = 0; j < want.size(); ++j)
          if (!used[j] && std::abs(w - want[j]) < best) best = std::abs(w - want[j]), at = j;
        used[at] = true;
        worst = std::max(worst, best / std::abs(want[at]));
      }
    }
  }
  report(6, factor && worst <= 1e-9,
         std::string(factor ? "w = 0 factors out leaving degree 8" : "factorization failed") +
             fmt("; max relative root deviation from the 4x4 isothermal eigenproblem %.2e (limit 1e-9)", worst));
}

// 7: uncoupled closed form
void uncoupled_branch_check() {
  const std::vector<double> grid = default_k_grid(1e4, 400);
  double worst = 0.0;
  double slope_err = 0.0;
  bool cutoff = true;
  for (ModelId id : kAllModels) {
    const MaterialParams p = preset(id);
    const double cm2 = (p.alpha2_bar + p.alpha3_bar) / p.zeta0;
    const double ws2 = 2 * (p.mu_e + p.mu_micro) / p.zeta0;
    const BranchSet s = sweep(p, SystemKind::Uncoupled1, grid);
    const Branch& b = s.branches.at(0);
    for (const BranchPoint& pt : b.points) {
      const double want = std::sqrt(cm2 * pt.k * pt.k + ws2);
      worst = std::max(worst, std::abs(pt.omega - want) / want);
    }
    cutoff = cutoff && b.points.front().omega == std::sqrt(ws2) && b.label == BranchLabel::TSO_TCVO;
    const auto& last = b.points.back();
    const auto& prev = b.points[b.points.size() - 2];
    const double secant = (last.omega.real() - prev.omega.real()) / (last.k - prev.k);
    slope_err = std::max(slope_err, std::abs(secant / std::sqrt(cm2) - 1));
  }
  report(7, worst <= 4 * 2.220446049250313e-16 && cutoff && slope_err <= 0.01,
         fmt("max relative deviation %.2e (limit 4 ulp), secant slope error at k_max %.2e (limit 1e-2)", worst,
             slope_err) +
             (cutoff ? ", w(0) = w_s" : ", w(0) != w_s"));
}

}  // namespace

int main() {
  cutoff_reproduction();
  branch_counts();
  band_gap_pattern();
  transverse_thermal_invariance();
  solver_correctness();
  reduction_consistency();
  uncoupled_branch_check();
  std::printf("%d of 7 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
