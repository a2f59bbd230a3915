#include "thermodisp/branches.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "thermodisp/polyeig.hpp"

namespace thermodisp {

std::string_view to_string(BranchLabel label) {
  switch (label) {
    case BranchLabel::LA: return "LA";
    case BranchLabel::LO: return "LO";
    case BranchLabel::TA: return "TA";
    case BranchLabel::TO: return "TO";
    case BranchLabel::TSO_TCVO: return "TSO_TCVO";
    case BranchLabel::THERMAL: return "THERMAL";
  }
  return "?";
}

bool is_propagating_label(BranchLabel label) { return label != BranchLabel::THERMAL; }

int BranchSet::count(BranchLabel label) const {
  return static_cast<int>(
      std::count_if(branches.begin(), branches.end(), [&](const Branch& b) { return b.label == label; }));
}

std::vector<double> default_k_grid(double k_max, int points) {
  if (!(k_max > 0.0) || !std::isfinite(k_max)) throw std::invalid_argument("default_k_grid: k_max must be positive");
  if (points < 2) throw std::invalid_argument("default_k_grid: need at least 2 points");
  std::vector<double> k;
  k.reserve(points);
  if (points < 8) {
    for (int i = 0; i < points; ++i) k.push_back(k_max * i / (points - 1));
    return k;
  }
  const int n_log = points / 4;
  const int n_lin = points - 1 - n_log;
  const double k_lo = 1e-4 * k_max;
  const double k_mid = 5e-2 * k_max;
  k.push_back(0.0);
  const double ratio = std::pow(k_mid / k_lo, 1.0 / n_log);
  for (int j = 0; j < n_log; ++j) k.push_back(k_lo * std::pow(ratio, j));
  for (int j = 0; j < n_lin; ++j) k.push_back(k_mid + (k_max - k_mid) * j / (n_lin - 1));
  return k;
}

namespace {

bool near_imaginary(Complex w, double scale) { return std::abs(w.real()) <= 1e-7 * std::abs(w) + 1e-12 * scale; }

template <class Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
  unsigned workers = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, n));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::jthread> pool;
  for (unsigned t = 0; t < workers; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  pool.clear();
  if (error) std::rethrow_exception(error);
}

void check_k_grid(std::span<const double> k_grid) {
  if (k_grid.empty()) throw std::invalid_argument("sweep: empty wavenumber grid");
  if (k_grid.front() < 0.0) throw std::invalid_argument("sweep: wavenumbers must be non-negative");
  for (std::size_t i = 0; i < k_grid.size(); ++i) {
    if (!std::isfinite(k_grid[i])) throw std::invalid_argument("sweep: non-finite wavenumber");
    if (i > 0 && !(k_grid[i] > k_grid[i - 1]))
      throw std::invalid_argument("sweep: wavenumber grid must be strictly increasing");
  }
}

double extrapolated_cutoff(const std::vector<BranchPoint>& pts) {
  if (pts.front().k == 0.0 || pts.size() < 2) return pts.front().omega.real();
  const double slope = (pts[1].omega.real() - pts[0].omega.real()) / (pts[1].k - pts[0].k);
  return pts[0].omega.real() - slope * pts[0].k;
}

struct Assignment {
  std::vector<int> perm;
  double cost = 0.0;
  double secondary = 0.0;
  double tertiary = 0.0;
};

// Links the per-k representative lists into branches; returns value histories.
std::vector<std::vector<Complex>> link(std::span<const double> k, const std::vector<std::vector<Complex>>& reps,
                                       double scale, std::vector<LinkAmbiguity>& ambiguities) {
  const std::size_t nb = reps.front().size();
  std::vector<Complex> first = reps.front();
  std::sort(first.begin(), first.end(), [](Complex a, Complex b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  std::vector<std::vector<Complex>> hist(nb);
  for (std::size_t b = 0; b < nb; ++b) hist[b].push_back(first[b]);

  const double tie_tol = 1e-9 * scale;
  std::vector<Complex> pred(nb), last(nb);
  for (std::size_t i = 1; i < k.size(); ++i) {
    const auto& cand = reps[i];
    for (std::size_t b = 0; b < nb; ++b) {
      const auto& h = hist[b];
      last[b] = h.back();
      pred[b] = last[b];
      if (h.size() >= 2) pred[b] += (h[h.size() - 1] - h[h.size() - 2]) * ((k[i] - k[i - 1]) / (k[i - 1] - k[i - 2]));
    }

    std::vector<Assignment> all;
    std::vector<int> perm(nb);
    std::iota(perm.begin(), perm.end(), 0);
    do {
      Assignment a{perm, 0.0, 0.0, 0.0};
      for (std::size_t b = 0; b < nb; ++b) {
        const Complex c = cand[perm[b]];
        a.cost += std::abs(c - pred[b]);
        a.secondary += std::abs(c - last[b]);
        a.tertiary += std::abs((c - last[b]).imag());
      }
      all.push_back(std::move(a));
    } while (std::next_permutation(perm.begin(), perm.end()));

    const double best_cost =
        std::min_element(all.begin(), all.end(), [](const auto& x, const auto& y) { return x.cost < y.cost; })->cost;
    std::vector<const Assignment*> ties;
    for (const auto& a : all)
      if (a.cost <= best_cost + tie_tol) ties.push_back(&a);
    const Assignment* chosen = *std::min_element(ties.begin(), ties.end(), [](const auto* x, const auto* y) {
      if (x->secondary != y->secondary) return x->secondary < y->secondary;
      return x->tertiary < y->tertiary;
    });

    // A tie only matters when it swaps candidates between branches that are
    // distinguishable by their history.
    auto owner = [&](int c) {
      return static_cast<std::size_t>(std::find(chosen->perm.begin(), chosen->perm.end(), c) - chosen->perm.begin());
    };
    auto report_swap = [&](const Assignment& t) {
      for (std::size_t b = 0; b < nb; ++b) {
        if (t.perm[b] == chosen->perm[b]) continue;
        const std::size_t other = owner(t.perm[b]);
        if (std::abs(pred[b] - pred[other]) > tie_tol || std::abs(last[b] - last[other]) > tie_tol) {
          std::ostringstream os;
          os.precision(6);
          os << "branches " << std::min(b, other) << " and " << std::max(b, other) << " have tied candidates";
          const std::string detail = os.str();
          const bool seen = std::any_of(ambiguities.begin(), ambiguities.end(),
                                        [&](const LinkAmbiguity& a) { return a.k == k[i] && a.detail == detail; });
          if (!seen) ambiguities.push_back({k[i], detail});
          return;
        }
      }
    };
    for (const Assignment* t : ties)
      if (t != chosen) report_swap(*t);
    for (std::size_t b = 0; b < nb; ++b) hist[b].push_back(cand[chosen->perm[b]]);
  }
  return hist;
}

}  // namespace

std::vector<Complex> symmetric_representatives(std::span<const Complex> rs, double scale) {
  std::vector<Complex> out;
  std::vector<Complex> imag;
  for (const Complex& w : rs) {
    if (near_imaginary(w, scale))
      imag.push_back(w);
    else if (w.real() > 0.0)
      out.push_back(w);
  }
  std::sort(imag.begin(), imag.end(), [](Complex a, Complex b) { return a.imag() < b.imag(); });
  for (std::size_t i = 0; i < imag.size();) {
    const Complex w = imag[i];
    if (i + 1 < imag.size() && std::abs(imag[i + 1] - w) <= 1e-9 * (std::abs(w) + scale)) {
      out.push_back(0.5 * (w + imag[i + 1]));
      i += 2;
    } else {
      out.push_back(w);
      i += 1;
    }
  }
  return out;
}

BranchLabel classify(const Branch& b, double tol_damping, double omega_scale) {
  if (b.points.size() < 2) throw std::invalid_argument("classify: branch needs at least 2 points");
  const bool pinned = std::all_of(b.points.begin(), b.points.end(),
                                  [&](const BranchPoint& pt) { return std::abs(pt.omega) <= 1e-9 * omega_scale; });
  if (pinned) return BranchLabel::THERMAL;
  const auto damped = std::count_if(b.points.begin(), b.points.end(), [&](const BranchPoint& pt) {
    return std::abs(pt.omega.imag()) > tol_damping * std::max(std::abs(pt.omega.real()), omega_scale);
  });
  if (2 * static_cast<std::size_t>(damped) > b.points.size()) return BranchLabel::THERMAL;
  if (b.system == SystemKind::Uncoupled1) return BranchLabel::TSO_TCVO;

  const double cutoff = b.cutoff ? *b.cutoff : extrapolated_cutoff(b.points);
  const bool acoustic = std::abs(cutoff) <= 1e-6 * omega_scale;
  if (b.system == SystemKind::Longitudinal5) return acoustic ? BranchLabel::LA : BranchLabel::LO;
  return acoustic ? BranchLabel::TA : BranchLabel::TO;
}

BranchSet sweep(const MaterialParams& p, SystemKind kind, std::span<const double> k_grid, const SweepOptions& options) {
  check_k_grid(k_grid);
  const double scale = frequency_scale(p);

  BranchSet set;
  set.params = p;
  set.system = kind;
  set.k_grid.assign(k_grid.begin(), k_grid.end());
  set.tol_damping = options.tol_damping;

  std::vector<std::vector<Complex>> hist;
  if (kind == SystemKind::Uncoupled1) {
    hist.emplace_back();
    for (double k : k_grid) hist.back().push_back(Complex{uncoupled_omega(p, k), 0.0});
  } else {
    std::vector<std::vector<Complex>> reps(k_grid.size());
    parallel_for(k_grid.size(), options.threads, [&](std::size_t i) {
      const std::vector<Root> rs = roots(det_poly(kind, p, k_grid[i]));
      const std::vector<Complex> values = root_values(rs);
      reps[i] = symmetric_representatives(values, scale);
    });
    for (std::size_t i = 1; i < reps.size(); ++i) {
      if (reps[i].size() != reps.front().size()) {
        std::ostringstream os;
        os << "sweep: root count changed from " << reps.front().size() << " to " << reps[i].size()
           << " at k = " << k_grid[i];
        throw std::runtime_error(os.str());
      }
    }
    hist = link(k_grid, reps, scale, set.ambiguities);
  }

  for (auto& values : hist) {
    Branch b;
    b.system = kind;
    for (std::size_t i = 0; i < values.size(); ++i)
      b.points.push_back({k_grid[i], values[i], residual(kind, p, k_grid[i], values[i])});
    b.cutoff = extrapolated_cutoff(b.points);
    b.label = b.points.size() >= 2 ? classify(b, options.tol_damping, scale)
                                   : (kind == SystemKind::Uncoupled1 ? BranchLabel::TSO_TCVO : BranchLabel::THERMAL);
    set.branches.push_back(std::move(b));
  }

  std::sort(set.branches.begin(), set.branches.end(), [](const Branch& x, const Branch& y) {
    if (x.label != y.label) return x.label < y.label;
    if (*x.cutoff != *y.cutoff) return *x.cutoff < *y.cutoff;
    const Complex xl = x.points.back().omega;
    const Complex yl = y.points.back().omega;
    return xl.real() != yl.real() ? xl.real() < yl.real() : xl.imag() < yl.imag();
  });
  for (std::size_t i = 0; i < set.branches.size(); ++i) {
    set.branches[i].index = (i > 0 && set.branches[i - 1].label == set.branches[i].label)
                                ? set.branches[i - 1].index + 1
                                : 1;
  }
  return set;
}

double shifted_omega_p(const MaterialParams& p) {
  const WaveCoefficients w = wave_coefficients(p);
  const double dc = p.c2 - p.c1;
  return std::sqrt(w.omega_p2 + 3.0 * dc * dc * p.theta0 / (p.rho * p.c0 * p.zeta0));
}

std::vector<Cutoff> cutoffs(const MaterialParams& p) {
  const DerivedSpeeds s = derived_speeds(p);
  const double rot = std::sqrt(2.0 * p.mu_c / p.zeta0);

  std::vector<Cutoff> out;
  auto add_system = [&](SystemKind kind, std::vector<std::pair<double, std::string>> values) {
    const bool longitudinal = kind == SystemKind::Longitudinal5;
    std::stable_sort(values.begin(), values.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    int optic = 0;
    int acoustic = 0;
    for (auto& [w, origin] : values) {
      Cutoff c;
      c.system = kind;
      c.omega = w;
      c.origin = std::move(origin);
      if (w > 0.0) {
        c.label = longitudinal ? BranchLabel::LO : BranchLabel::TO;
        c.index = ++optic;
      } else {
        c.label = longitudinal ? BranchLabel::LA : BranchLabel::TA;
        c.index = ++acoustic;
      }
      out.push_back(std::move(c));
    }
  };
  add_system(SystemKind::Longitudinal5,
             {{s.omega_s, "omega_s"}, {rot, "sqrt(2 mu_c / zeta0)"}, {shifted_omega_p(p), "omega_p (thermally shifted)"}});
  add_system(SystemKind::Transverse3, {{s.omega_s, "omega_s"}, {rot, "sqrt(2 mu_c / zeta0)"}});
  out.push_back({SystemKind::Uncoupled1, BranchLabel::TSO_TCVO, 1, s.omega_s, "omega_s"});
  return out;
}

std::vector<std::size_t> continuity_violations(const Branch& b, double max_slope) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i + 1 < b.points.size(); ++i) {
    const double dk = b.points[i + 1].k - b.points[i].k;
    if (std::abs(b.points[i + 1].omega - b.points[i].omega) > max_slope * dk) out.push_back(i);
  }
  return out;
}

}  // namespace thermodisp
