#include <doctest.h>

#include <cmath>

#include "xpr/errors.hpp"
#include "xpr/kronecker.hpp"
#include "xpr/rng.hpp"

using namespace xpr;

namespace {

/// Independent dense-scan oracle in plain doubles: first omega in [0, cap]
/// hitting every angle within eps, or -1.
double scan_oracle(const std::vector<double>& xs, const std::vector<double>& ts, double eps,
                   double cap, double step) {
  for (double w = 0; w <= cap; w += step) {
    bool ok = true;
    for (std::size_t k = 0; k < xs.size() && ok; ++k) {
      ok = std::fabs(std::remainder(w * xs[k] - ts[k], 2 * M_PI)) < eps;
    }
    if (ok) return w;
  }
  return -1;
}

}  // namespace

TEST_CASE("single point solves analytically") {
  DiophantineInstance inst;
  inst.points = {BigReal(1L)};
  inst.angles = {BigReal::pi(256) / BigReal(2L)};
  inst.eps = BigReal(1e-6);
  OrbitResult r = solve_orbit(inst);
  REQUIRE(r.found());
  CHECK(abs(r.solution->omega - BigReal::pi(256) / BigReal(2L)) < BigReal::pow2(-200));
  CHECK(r.solution->verified);
}

TEST_CASE("two rationally independent points") {
  DiophantineInstance inst;
  inst.points = {BigReal(1L), sqrt_big(BigReal(2L))};
  BigReal half_pi = BigReal::pi(256) / BigReal(2L);
  inst.angles = {half_pi, half_pi};
  inst.eps = BigReal(0.05);
  inst.omega_max = BigReal(1e8);
  OrbitResult r = solve_orbit(inst);
  REQUIRE(r.found());
  CHECK(r.solution->verified);
  for (const BigReal& resid : r.solution->residuals) CHECK(resid < inst.eps);
  // Independent oracle: a plain double scan at step 1e-3 also finds a
  // solution in a modest budget, confirming solvability.
  double w = scan_oracle({1.0, std::sqrt(2.0)}, {M_PI / 2, M_PI / 2}, 0.05, 1e4, 1e-3);
  CHECK(w >= 0);
  CHECK(abs(r.solution->omega) <= BigReal(1e4));
}

TEST_CASE("rationally dependent points give a subtorus witness") {
  DiophantineInstance inst;
  inst.points = {BigReal(0.25), BigReal(0.75)};
  BigReal half_pi = BigReal::pi(256) / BigReal(2L);
  inst.angles = {half_pi, half_pi + BigReal(1L)};
  inst.eps = BigReal(1e-3);
  OrbitResult r = solve_orbit(inst);
  REQUIRE(!r.found());
  CHECK(r.failure == OrbitFailure::subtorus);
  REQUIRE(r.witness.has_value());
  // The witness relation annihilates the points.
  BigReal combo(0L);
  for (std::size_t k = 0; k < inst.points.size(); ++k) {
    combo += BigReal(r.witness->relation[k]) * inst.points[k];
  }
  CHECK(abs(combo) < BigReal::pow2(-128));
  CHECK(abs(r.witness->offset) > r.witness->bound);

  // Exhaustive oracle over one fundamental period (8 pi): no omega works.
  double best = 1e9;
  for (double w = 0; w <= 8 * M_PI; w += 1e-4) {
    double worst = 0;
    worst = std::max(worst, std::fabs(std::remainder(w * 0.25 - M_PI / 2, 2 * M_PI)));
    worst = std::max(worst, std::fabs(std::remainder(w * 0.75 - (M_PI / 2 + 1), 2 * M_PI)));
    best = std::min(best, worst);
  }
  CHECK(best > 1e-3);
}

TEST_CASE("lattice and grid scan agree on solvability") {
  Rng rng(21);
  for (int t = 0; t < 3; ++t) {
    DiophantineInstance inst;
    inst.points = {BigReal(1L), sqrt_big(BigReal(2L))};
    inst.angles = {BigReal(rng.uniform(0.0, 6.28)), BigReal(rng.uniform(0.0, 6.28))};
    inst.eps = BigReal(0.1);
    inst.omega_max = BigReal(2e3);
    SolveOptions lattice_only;
    lattice_only.enable_scan = false;
    SolveOptions scan_only;
    scan_only.enable_lattice = false;
    OrbitResult a = solve_orbit(inst, lattice_only);
    OrbitResult b = solve_orbit(inst, scan_only);
    CHECK(a.found() == b.found());
    if (a.found() && b.found()) {
      CHECK(verify_orbit(inst, a.solution->omega, 512));
      CHECK(verify_orbit(inst, b.solution->omega, 512));
    }
  }
}

TEST_CASE("independence check finds integer relations") {
  IndependenceResult r = rational_independence_check({BigReal(1L), BigReal(2L)}, 10);
  REQUIRE(!r.independent);
  CHECK(r.relation == std::vector<long>{2, -1});

  IndependenceResult r3 =
      rational_independence_check({BigReal(0.3), BigReal(0.6), BigReal(0.9)}, 10);
  REQUIRE(!r3.independent);
  long linf = 0;
  BigReal combo(0L);
  std::vector<BigReal> pts{BigReal(0.3), BigReal(0.6), BigReal(0.9)};
  for (std::size_t k = 0; k < 3; ++k) {
    linf = std::max(linf, std::labs(r3.relation[k]));
    combo += BigReal(r3.relation[k]) * pts[k];
  }
  CHECK(linf <= 3);
  CHECK(abs(combo) < BigReal::pow2(-128));
}

TEST_CASE("independence certification for (1, sqrt 2)") {
  IndependenceResult r = rational_independence_check({BigReal(1L), sqrt_big(BigReal(2L))},
                                                     1'000'000);
  CHECK(r.independent);
  CHECK(r.certified);
  // Oracle: exhaustive search over small coefficients finds nothing.
  double s2 = std::sqrt(2.0);
  double best = 1e9;
  for (int a = -50; a <= 50; ++a) {
    for (int b = -50; b <= 50; ++b) {
      if (a == 0 && b == 0) continue;
      best = std::min(best, std::fabs(a + b * s2));
    }
  }
  CHECK(best > 1e-4);
}

TEST_CASE("single sine fit") {
  SUBCASE("all-zero targets take the trivial solution") {
    SineFitResult r = fit_single_sine({BigReal(0.3), BigReal(0.7)}, {BigReal(0L), BigReal(0L)},
                                      BigReal(1e-6));
    REQUIRE(r.found());
    CHECK(r.fit->c == BigReal(1L));
    CHECK(r.fit->omega.is_zero());
  }
  SUBCASE("independent points reach generic targets") {
    SineFitResult r = fit_single_sine({BigReal(1L), sqrt_big(BigReal(2L))},
                                      {BigReal(0.5), BigReal(-0.3)}, BigReal(0.05));
    REQUIRE(r.found());
    for (const BigReal& resid : r.fit->residuals) CHECK(resid < BigReal(0.05));
  }
  SUBCASE("dependent points at a tight tolerance fail with a witness") {
    SineFitResult r = fit_single_sine({BigReal(0.2), BigReal(0.4)},
                                      {BigReal(0.9), BigReal(0.1)}, BigReal(1e-4));
    CHECK(!r.found());
    CHECK(r.orbit.failure == OrbitFailure::subtorus);
  }
}

TEST_CASE("shatter basics") {
  SUBCASE("single point positive pattern") {
    ShatterInstance inst;
    inst.points = {BigReal(0.4)};
    inst.pattern = {1};
    inst.margin = BigReal(0.5);
    ShatterResult r = shatter(inst);
    REQUIRE(r.found());
    CHECK(r.params->c * sin_big(r.params->omega * inst.points[0]) > inst.margin);
  }
  SUBCASE("all-positive pattern on independent pair") {
    ShatterInstance inst;
    inst.points = {BigReal(1L), sqrt_big(BigReal(2L))};
    inst.pattern = {1, 1};
    inst.margin = BigReal(0.1);
    ShatterResult r = shatter(inst);
    REQUIRE(r.found());
    for (std::size_t k = 0; k < 2; ++k) {
      CHECK(r.params->c * sin_big(r.params->omega * inst.points[k]) > inst.margin);
    }
  }
}

TEST_CASE("three-term identity residual") {
  CHECK(three_term_identity_residual(Wave{BigReal(2L), BigReal(1L), BigReal(0L)}, BigReal(0.3),
                                     BigReal(0.5)) < BigReal::pow2(-250));
  CHECK(three_term_identity_residual(Wave{BigReal(1L), BigReal(10L), BigReal(1.2)}, BigReal(0L),
                                     BigReal(0.1)) < BigReal::pow2(-245));
  Rng rng(22);
  BigReal worst(0L);
  for (int t = 0; t < 100; ++t) {
    Wave w{BigReal(rng.uniform(-3.0, 3.0)), BigReal(rng.uniform(0.0, 40.0)),
           BigReal(rng.uniform(0.0, 6.28))};
    worst = max_big(worst,
                    three_term_identity_residual(w, BigReal(rng.uniform(0.0, 1.0)),
                                                 BigReal(rng.uniform(0.0, 1.0))));
  }
  CHECK(worst < BigReal::pow2(-240));
}

TEST_CASE("orbit input validation") {
  DiophantineInstance inst;
  inst.points = {BigReal(0.5), BigReal(0.5)};
  inst.angles = {BigReal(1L), BigReal(1L)};
  inst.eps = BigReal(0.1);
  CHECK_THROWS_AS(solve_orbit(inst), DegenerateInput);
  inst.points = {BigReal(0.5)};
  inst.angles = {BigReal(1L)};
  inst.eps = BigReal(0L);
  CHECK_THROWS_AS(solve_orbit(inst), DomainError);
}
