#include <doctest.h>

#include "xpr/errors.hpp"
#include "xpr/fitlab.hpp"
#include "xpr/rng.hpp"

using namespace xpr;

namespace {

FitInstance instance_from(const FamilyParams& truth, const FamilyParams& shape, int k,
                          Rng& rng, double eps) {
  FitInstance inst;
  inst.shape = shape;
  inst.eps = BigReal(eps);
  for (int i = 0; i < k; ++i) {
    BigReal x(rng.uniform(0.02, 0.98) + 1e-5 * i);
    inst.xs.push_back(x);
    inst.ys.push_back(evaluate(truth, x));
  }
  return inst;
}

}  // namespace

TEST_CASE("noiseless in-family data is recovered") {
  for (std::uint64_t seed : {1ULL, 2ULL}) {
    Rng rng(seed);
    SineSumParams truth;
    truth.waves.push_back(
        Wave{BigReal(rng.uniform(0.5, 1.5)), BigReal(rng.uniform(1.0, 8.0)),
             BigReal(rng.uniform(0.0, 6.28))});
    SineSumParams shape;
    shape.waves.push_back(Wave{BigReal(0L), BigReal(0L), BigReal(0L)});
    FitInstance inst = instance_from(truth, shape, 6, rng, 1e-6);
    inst.restarts = 64;
    FitReport r = fit_family(inst, seed);
    CHECK(r.verdict == FitVerdict::achieved);
    CHECK(r.max_residual < BigReal(1e-6, 128));
  }
}

TEST_CASE("two-wave recovery") {
  Rng rng(7);
  SineSumParams truth;
  truth.waves.push_back(Wave{BigReal(1.0), BigReal(3.0), BigReal(0.5)});
  truth.waves.push_back(Wave{BigReal(-0.6), BigReal(11.0), BigReal(2.0)});
  SineSumParams shape;
  shape.waves.assign(2, Wave{BigReal(0L), BigReal(0L), BigReal(0L)});
  FitInstance inst = instance_from(truth, shape, 12, rng, 1e-6);
  inst.restarts = 64;
  FitReport r = fit_family(inst, 99);
  CHECK(r.verdict == FitVerdict::achieved);
}

TEST_CASE("realizable targets are recovered across families") {
  // Noiseless data synthesized from random in-family members; the fitter
  // must reach 1e-6 within 64 restarts.
  auto run = [](const FamilyParams& truth, const FamilyParams& shape, int k,
                std::uint64_t seed) {
    Rng rng(seed * 97 + 3);
    FitInstance inst = instance_from(truth, shape, k, rng, 1e-6);
    inst.restarts = 64;
    FitReport r = fit_family(inst, seed);
    return r.verdict == FitVerdict::achieved;
  };

  SUBCASE("single frequency-amplitude members, 20 seeds") {
    int good = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      Rng rng(seed);
      SingleSineParams truth{BigReal(rng.uniform(0.4, 1.6)), BigReal(rng.uniform(0.5, 9.0))};
      if (run(truth, SingleSineParams{BigReal(0L), BigReal(0L)}, 4, seed)) ++good;
    }
    CHECK(good == 20);
  }
  SUBCASE("sigma-sine members") {
    int good = 0;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      Rng rng(seed + 50);
      SigmaSineParams truth;
      truth.sigma = SigmaKind::sigmoid;
      truth.c = BigReal(rng.uniform(0.5, 1.5));
      truth.omega = BigReal(rng.uniform(0.5, 20.0));
      truth.b = BigReal(rng.uniform(-0.9, 0.9));
      truth.h = BigReal(rng.uniform(0.0, 6.28));
      SigmaSineParams shape;
      shape.sigma = SigmaKind::sigmoid;
      if (run(truth, shape, 6, seed)) ++good;
    }
    CHECK(good == 5);
  }
  SUBCASE("sine-of-sine members") {
    int good = 0;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      Rng rng(seed + 80);
      SineOfSineParams truth;
      truth.outer_c = BigReal(rng.uniform(0.5, 1.5));
      truth.outer_h = BigReal(rng.uniform(-0.5, 0.5));
      truth.inner.waves.push_back(Wave{BigReal(rng.uniform(0.5, 1.5)),
                                       BigReal(rng.uniform(1.0, 9.0)),
                                       BigReal(rng.uniform(0.0, 6.28))});
      SineOfSineParams shape;
      shape.inner.waves.push_back(Wave{BigReal(0L), BigReal(0L), BigReal(0L)});
      if (run(truth, shape, 8, seed)) ++good;
    }
    CHECK(good == 5);
  }
}

TEST_CASE("identical seeds give identical reports") {
  Rng rng(8);
  SigmaSineParams shape;
  shape.sigma = SigmaKind::sigmoid;
  FitInstance inst;
  inst.shape = shape;
  inst.eps = BigReal(1e-3);
  inst.restarts = 8;
  inst.max_iterations = 40;
  for (int i = 0; i < 5; ++i) {
    inst.xs.push_back(BigReal(rng.uniform(0.05, 0.95) + 1e-4 * i));
    inst.ys.push_back(BigReal(rng.uniform(-1.0, 1.0)));
  }
  FitReport a = fit_family(inst, 4242);
  FitReport b = fit_family(inst, 4242);
  CHECK(a.max_residual == b.max_residual);
  CHECK(a.verdict == b.verdict);
  REQUIRE(a.residuals.size() == b.residuals.size());
  for (std::size_t i = 0; i < a.residuals.size(); ++i) CHECK(a.residuals[i] == b.residuals[i]);
}

TEST_CASE("forbidden sign pattern on a progression is obstructed") {
  BigReal u(0.125), v(0.125);
  std::vector<BigReal> targets{BigReal(0.5), BigReal(0.5), BigReal(0.5), BigReal(-0.5),
                               BigReal(0.5)};
  ObstructionReport r = progression_fit_obstruction(1, u, v, targets, BigReal(1e-3), 24, 5);
  CHECK(!r.target_certificate.pass);
  CHECK(r.fit.verdict == FitVerdict::floor_detected);
  CHECK(r.fit.max_residual > BigReal(1e-2, 128));
}

TEST_CASE("realizable progression targets are achieved") {
  BigReal u(0.1), v(0.15);
  SineSumParams truth;
  truth.waves.push_back(Wave{BigReal(0.8), BigReal(4.0), BigReal(1.0)});
  std::vector<BigReal> targets;
  for (int k = 0; k < 5; ++k) targets.push_back(evaluate(truth, u + BigReal(k) * v));
  ObstructionReport r = progression_fit_obstruction(1, u, v, targets, BigReal(1e-4), 32, 11);
  CHECK(r.target_certificate.pass);
  CHECK(r.fit.verdict == FitVerdict::achieved);
}

TEST_CASE("random targets on a two-wave grid fail the certificate and the fit floors") {
  Rng rng(9);
  BigReal u(0.05), v(0.1);
  std::vector<BigReal> targets;
  for (int k = 0; k < 9; ++k) targets.push_back(BigReal(rng.uniform(-1.0, 1.0)));
  ObstructionReport r = progression_fit_obstruction(2, u, v, targets, BigReal(1e-3), 24, 13);
  CHECK(!r.target_certificate.pass);
  CHECK(r.fit.verdict != FitVerdict::achieved);
}

TEST_CASE("fit input validation") {
  FitInstance inst;
  SingleSineParams shape;
  inst.shape = shape;
  inst.eps = BigReal(1e-3);
  inst.xs = {BigReal(0.5), BigReal(0.5)};
  inst.ys = {BigReal(0L), BigReal(0L)};
  CHECK_THROWS_AS(fit_family(inst, 1), DegenerateInput);
  CHECK_THROWS_AS(progression_fit_obstruction(1, BigReal(0L), BigReal(0.1),
                                              {BigReal(1L), BigReal(1L)}, BigReal(1e-3), 4, 1),
                  LengthError);
}
