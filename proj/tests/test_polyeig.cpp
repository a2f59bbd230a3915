#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "thermodisp/polyeig.hpp"

using namespace thermodisp;

namespace {

double max_rel_symmetry_gap(const std::vector<Complex>& rs, double scale) {
  std::vector<Complex> mirrored;
  for (Complex w : rs) mirrored.push_back(-std::conj(w));
  return oracle::set_distance(rs, mirrored, scale);
}

}  // namespace

TEST_SUITE("polyeig") {

TEST_CASE("degrees and leading coefficients") {
  for (ModelId id : kAllModels) {
    const MaterialParams p = preset(id);
    for (double k : {0.0, 1.0, 250.0, 1e4}) {
      const ComplexPolynomial L = det_poly(SystemKind::Longitudinal5, p, k);
      CHECK(L.degree() == 9);
      const Complex lead = L.leading_coefficient();
      CHECK(std::abs(lead - Complex(0, -p.rho * p.c0)) <= 1e-12 * p.rho * p.c0);

      const ComplexPolynomial T = det_poly(SystemKind::Transverse3, p, k);
      CHECK(T.degree() == 6);
      CHECK(std::abs(T.leading_coefficient() - Complex(-4.0)) < 1e-12);
      for (int j = 1; j <= 5; j += 2) CHECK(T.scaled_coefficients()[j] == Complex{});
    }
  }
}

TEST_CASE("determinant polynomial agrees with direct determinants") {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (ModelId id : kAllModels) {
    const MaterialParams p = preset(id);
    const double ws = frequency_scale(p);
    for (SystemKind kind : {SystemKind::Longitudinal5, SystemKind::Transverse3, SystemKind::Uncoupled1}) {
      const double k = 1e4 * std::abs(u(rng));
      const ComplexPolynomial q = det_poly(kind, p, k);
      for (int i = 0; i < 10; ++i) {
        const Complex w = 2.0 * ws * Complex(u(rng), u(rng));
        const Complex direct = assemble(kind, p, k, w).entries.determinant();
        CHECK(std::abs(q(w) - direct) <= 1e-10 * std::max(std::abs(direct), 1e-300) + 1e-12 * std::abs(direct) +
                                              1e-10 * std::abs(q.evaluate_scaled(w / ws)));
      }
    }
  }
}

TEST_CASE("direct determinant cross-check against the oracle symbol") {
  const MaterialParams p = preset(ModelId::III);
  for (double k : {10.0, 900.0}) {
    const Complex w(2.1e5, -40.0);
    const Complex a = det_poly(SystemKind::Longitudinal5, p, k)(w);
    const Complex b = oracle::longitudinal_symbol(p, k, w).determinant();
    CHECK(std::abs(a - b) <= 1e-10 * std::abs(b));
  }
}

TEST_CASE("thermal_off factors out the heat equation") {
  for (ModelId id : kAllModels) {
    const MaterialParams p = thermal_off(preset(id));
    for (double k : {0.0, 40.0, 3e3}) {
      const ComplexPolynomial L = det_poly(SystemKind::Longitudinal5, p, k);
      const double ws = L.scale();
      // (-i rho C0 w) * det4
      const ComplexPolynomial factor({Complex{}, Complex(0, -p.rho * p.c0) * ws}, ws);
      std::mt19937 rng(7);
      std::uniform_real_distribution<double> u(-2, 2);
      for (int i = 0; i < 5; ++i) {
        const Complex w = ws * Complex(u(rng), u(rng));
        const Complex det4 = oracle::longitudinal_symbol(p, k, w).topLeftCorner(4, 4).determinant();
        CHECK(std::abs(L(w) - factor(w) * det4) <= 1e-10 * std::abs(factor(w) * det4));
      }
      CHECK(std::abs(L.scaled_coefficients()[0]) == 0.0);
    }
  }
}

TEST_CASE("model I at k = 0 roots") {
  const MaterialParams p = preset(ModelId::I);
  std::vector<Complex> rs = root_values(roots(det_poly(SystemKind::Longitudinal5, p, 0.0)));
  REQUIRE(rs.size() == 9);
  const double ws = std::sqrt(6e10);
  const double rot = std::sqrt(2 * p.mu_c / p.zeta0);
  const double dc = p.c2 - p.c1;
  const double wp = std::sqrt(2.1e11 + 3 * dc * dc * p.theta0 / (p.rho * p.c0 * p.zeta0));
  const std::vector<Complex> expected = {0.0, 0.0, 0.0, ws, -ws, rot, -rot, wp, -wp};
  CHECK(oracle::set_distance(rs, expected, ws) < 1e-10);
  CHECK(wp / std::sqrt(2.1e11) - 1 == doctest::Approx(3.5e-5).epsilon(0.05));
}

TEST_CASE("simple polynomials") {
  const double ws = 2.4494897427831781e5;
  const ComplexPolynomial q({Complex(-1.0), 0.0, 1.0}, ws);  // x^2 - 1 with w = ws x
  std::vector<Complex> rs = root_values(roots(q));
  std::sort(rs.begin(), rs.end(), [](Complex a, Complex b) { return a.real() < b.real(); });
  CHECK(rs[0].real() == doctest::Approx(-2.4495e5).epsilon(1e-4));
  CHECK(rs[1].real() == doctest::Approx(2.4495e5).epsilon(1e-4));

  const ComplexPolynomial lin({0.0, 1.0}, 1.0);
  rs = root_values(roots(lin));
  REQUIRE(rs.size() == 1);
  CHECK(rs[0] == Complex{});

  CHECK_THROWS(roots(ComplexPolynomial({Complex(3.0)}, 1.0)));
}

TEST_CASE("random polynomial roots and clustering") {
  std::mt19937_64 rng(99);
  std::normal_distribution<double> n;
  for (int t = 0; t < 20; ++t) {
    std::vector<Complex> want;
    ComplexPolynomial q({1.0}, 1.0);
    for (int i = 0; i < 7; ++i) {
      want.emplace_back(n(rng), n(rng));
      q = q * ComplexPolynomial({-want.back(), 1.0}, 1.0);
    }
    const std::vector<Root> rs = roots(q);
    for (const Root& r : rs) CHECK(r.residual <= kRootResidualTol);
    CHECK(oracle::set_distance(root_values(rs), want, 1.0) < 1e-9);
  }
  const ComplexPolynomial dbl = ComplexPolynomial({-1.0, 1.0}, 1.0) * ComplexPolynomial({-1.0, 1.0}, 1.0) *
                                ComplexPolynomial({2.0, 1.0}, 1.0);
  const auto clusters = cluster_roots(roots(dbl), 1.0);
  REQUIRE(clusters.size() == 2);
  int total = 0;
  for (const RootCluster& c : clusters) total += c.multiplicity;
  CHECK(total == 3);
}

TEST_CASE("longitudinal roots are symmetric under w -> -conj(w)") {
  const MaterialParams p = preset(ModelId::I);
  const std::vector<Complex> rs = root_values(roots(det_poly(SystemKind::Longitudinal5, p, 100.0)));
  CHECK(rs.size() == 9);
  CHECK(max_rel_symmetry_gap(rs, frequency_scale(p)) < 1e-8);
}

TEST_CASE("residuals") {
  const MaterialParams p = preset(ModelId::I);
  for (SystemKind kind : {SystemKind::Longitudinal5, SystemKind::Transverse3}) {
    for (double k : {0.0, 100.0, 5e3}) {
      const Pencil a = wave_pencil(kind, p, k);
      for (Complex w : root_values(roots(det_poly(kind, p, k)))) {
        const double r = normalized_residual(a, w);
        CHECK(r <= kPointResidualTol);
        std::vector<Complex> f = {1e3, {0, -2}, 1e-4, 7, 0.3};
        f.resize(a.size());
        const double rs = normalized_residual(a.row_scaled(f), w);
        CHECK(std::abs(rs - r) <= 1e-12);
      }
    }
  }
  const double w_bad = 2 * std::sqrt(2.1e11);
  CHECK(residual(SystemKind::Longitudinal5, p, 0.0, w_bad) > 1e-4);
  CHECK(residual(SystemKind::Uncoupled1, p, 300.0, uncoupled_omega(p, 300.0)) < 1e-14);
}

TEST_CASE("scan oracle") {
  const MaterialParams p = preset(ModelId::I);
  const double k = 100.0;
  std::vector<double> grid;
  const int n = 8000;
  for (int i = 0; i <= n; ++i) grid.push_back(8e5 * i / n);
  const double h = grid[1] - grid[0];
  const auto mins = scan_oracle(SystemKind::Transverse3, p, k, grid);
  std::vector<double> real_roots;
  for (Complex w : root_values(roots(det_poly(SystemKind::Transverse3, p, k))))
    if (w.real() > 0 && w.real() < 8e5 && std::abs(w.imag()) < 1e-8 * std::abs(w)) real_roots.push_back(w.real());
  REQUIRE(mins.size() == real_roots.size());
  for (double w : real_roots) {
    bool found = false;
    for (const ScanMinimum& m : mins) found = found || std::abs(m.omega - w) <= h;
    CHECK(found);
  }

  std::vector<double> empty_grid = {5.0e5, 5.1e5, 5.2e5};
  CHECK(scan_oracle(SystemKind::Transverse3, p, 0.0, empty_grid).empty());
  CHECK_THROWS(scan_oracle(SystemKind::Transverse3, p, k, std::vector<double>{}));
  CHECK_THROWS(scan_oracle(SystemKind::Transverse3, p, k, std::vector<double>{2.0, 1.0}));

  std::vector<double> g2;
  for (int i = 0; i <= 2000; ++i) g2.push_back(2e5 + 3e5 * i / 2000.0);
  const auto um = scan_oracle(SystemKind::Uncoupled1, p, 500.0, g2);
  REQUIRE(um.size() == 1);
  CHECK(um[0].omega == doctest::Approx(uncoupled_omega(p, 500.0)).epsilon(1e-8));
}

}
