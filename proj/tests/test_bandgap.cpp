#include <cmath>

#include "doctest.h"
#include "thermodisp/bandgap.hpp"
#include "thermodisp/errors.hpp"

using namespace thermodisp;

namespace {

std::vector<BandGap> joint_gaps(const MaterialParams& p, int points = 400, int cells = 2000) {
  return analyze_band_gaps(p, default_k_grid(1e4, points), default_omega_grid(p, cells)).joint;
}

}  // namespace

TEST_SUITE("bandgap") {

TEST_CASE("gap pattern by model") {
  for (ModelId id : {ModelId::I, ModelId::III, ModelId::V}) {
    const auto gaps = joint_gaps(preset(id));
    REQUIRE_FALSE(gaps.empty());
    for (const BandGap& g : gaps) CHECK(g.hi < 4.5826e5);
  }
  for (ModelId id : {ModelId::II, ModelId::IV, ModelId::VI}) CHECK(joint_gaps(preset(id)).empty());
}

TEST_CASE("model I gap sits between the acoustic plateau and the first cutoff") {
  const auto gaps = joint_gaps(preset(ModelId::I));
  REQUIRE(gaps.size() == 1);
  const double h = 2 * 4.5826e5 / 2000;
  CHECK(gaps[0].hi <= std::sqrt(6e10) + h);
  CHECK(gaps[0].hi >= std::sqrt(6e10) - 2 * h);
  CHECK(gaps[0].lo > 1.5e5);
}

TEST_CASE("gap width shrinks with the couple modulus") {
  double previous = 1e300;
  for (double mu_c : {440e6, 220e6, 0.0}) {
    MaterialParams p = preset(ModelId::I);
    p.mu_c = mu_c;
    const double w = total_width(joint_gaps(p));
    CHECK(w <= previous);
    previous = w;
  }
  CHECK(previous == 0.0);
}

TEST_CASE("gaps converge under refinement") {
  const MaterialParams p = preset(ModelId::III);
  const auto coarse = joint_gaps(p, 400, 2000);
  const auto fine = joint_gaps(p, 800, 4000);
  REQUIRE(coarse.size() == fine.size());
  const double h = 2 * 4.5826e5 / 2000;
  for (std::size_t i = 0; i < coarse.size(); ++i) {
    CHECK(std::abs(coarse[i].lo - fine[i].lo) <= 2 * h);
    CHECK(std::abs(coarse[i].hi - fine[i].hi) <= 2 * h);
  }
}

TEST_CASE("thermal field does not move the gaps") {
  const double h = 2 * 4.5826e5 / 2000;
  for (ModelId id : {ModelId::I, ModelId::III, ModelId::V}) {
    const auto a = joint_gaps(preset(id));
    const auto b = joint_gaps(thermal_off(preset(id)));
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(std::abs(a[i].lo - b[i].lo) <= 2 * h);
      CHECK(std::abs(a[i].hi - b[i].hi) <= 2 * h);
    }
  }
}

TEST_CASE("per-system gaps are supersets of the joint gaps") {
  const MaterialParams p = preset(ModelId::I);
  const BandGapAnalysis a = analyze_band_gaps(p, default_k_grid(), default_omega_grid(p));
  REQUIRE(a.per_system.size() == 3);
  for (const BandGap& g : a.joint)
    for (const auto& [kind, gaps] : a.per_system) {
      bool covered = false;
      for (const BandGap& s : gaps) covered = covered || (s.lo <= g.lo + 1e-9 && s.hi >= g.hi - 1e-9);
      CHECK(covered);
    }
}

TEST_CASE("a short wavenumber range violates the precondition") {
  const MaterialParams p = preset(ModelId::I);
  CHECK_THROWS_AS(analyze_band_gaps(p, default_k_grid(10.0, 50), default_omega_grid(p)), PreconditionError);
}

TEST_CASE("omega grid") {
  const auto g = default_omega_grid(preset(ModelId::I), 2000);
  REQUIRE(g.size() == 2001);
  CHECK(g.front() == 0.0);
  CHECK(g.back() == doctest::Approx(2 * 4.5826e5).epsilon(1e-4));
}

}
