#include <doctest.h>

#include "xpr/errors.hpp"
#include "xpr/families.hpp"
#include "xpr/rng.hpp"

using namespace xpr;

namespace {

SineSumParams waves1(double c, double w, double h) {
  SineSumParams p;
  p.waves.push_back(Wave{BigReal(c), BigReal(w), BigReal(h)});
  return p;
}

MultiPoly projection(unsigned nvars, unsigned var) {
  MultiPoly q;
  q.nvars = nvars;
  MultiTerm t;
  t.coeff = BigComplex(BigReal(1L));
  t.exps.assign(nvars, 0);
  t.exps[var] = 1;
  q.terms.push_back(t);
  return q;
}

MultiPoly constant_one(unsigned nvars) {
  MultiPoly q;
  q.nvars = nvars;
  MultiTerm t;
  t.coeff = BigComplex(BigReal(1L));
  t.exps.assign(nvars, 0);
  q.terms.push_back(t);
  return q;
}

}  // namespace

TEST_CASE("single wave at the quarter period") {
  FamilyParams p = waves1(1, 1, 0);
  BigReal v = evaluate(p, BigReal::pi(256) / BigReal(2L));
  CHECK(abs(v - BigReal(1L)) < BigReal::pow2(-250));
}

TEST_CASE("projection Q recovers the exponential") {
  PolyExpAlgParams p;
  p.polys.push_back({BigComplex(BigReal(0L)), BigComplex(BigReal(1L))});  // P1(x) = x
  p.q_num = projection(2, 1);
  p.q_den = constant_one(2);
  FamilyParams fam = p;
  BigReal v = evaluate(fam, BigReal(1L));
  CHECK(abs(v - exp_big(BigReal(1L))) < BigReal::pow2(-250));
}

TEST_CASE("sine of sine against a high-precision oracle") {
  SineOfSineParams p;
  p.outer_c = BigReal(1L);
  p.outer_h = BigReal(0L);
  p.inner = waves1(1, 1, 0);
  FamilyParams fam = p;
  BigReal v = evaluate(fam, BigReal::pi(256) / BigReal(2L));
  // Independent oracle at 512 bits: sin(sin(pi/2)) = sin(1).
  BigReal oracle = sin_big(BigReal(1L, 512));
  CHECK(abs(v - oracle) < BigReal::pow2(-240));
}

TEST_CASE("sampling the zeros of sin(2 pi x)") {
  FamilyParams p = waves1(1, 1, 0);
  std::get<SineSumParams>(p).waves[0].omega = BigReal::two_pi(256);
  SampleGrid g = sample(p, BigReal(0L), BigReal(0.5), 2);
  REQUIRE(g.values.size() == 3);
  for (long k = 0; k <= 2; ++k) CHECK(abs(g.real_value(k)) < BigReal::pow2(-200));
}

TEST_CASE("sampled grid matches pointwise evaluation at doubled precision") {
  Rng rng(11);
  SineSumParams p;
  for (int i = 0; i < 2; ++i) {
    p.waves.push_back(Wave{BigReal(rng.uniform(-1.0, 1.0)), BigReal(rng.uniform(0.5, 20.0)),
                           BigReal(rng.uniform(0.0, 6.28))});
  }
  FamilyParams fam = p;
  SampleGrid g = sample(fam, BigReal(0.1), BigReal(0.1), 8);
  for (long k = 0; k <= 8; ++k) {
    BigReal x = g.x_at(k).round_to(512);
    SineSumParams hi;
    for (const Wave& w : p.waves) {
      hi.waves.push_back(Wave{w.c.round_to(512), w.omega.round_to(512), w.h.round_to(512)});
    }
    BigReal oracle = evaluate(hi, x);
    CHECK(abs(g.real_value(k) - oracle) < BigReal::pow2(-240));
  }
}

TEST_CASE("sum structure and negation") {
  Rng rng(12);
  SineSumParams p;
  for (int i = 0; i < 3; ++i) {
    p.waves.push_back(Wave{BigReal(rng.uniform(-2.0, 2.0)), BigReal(rng.uniform(0.1, 30.0)),
                           BigReal(rng.uniform(0.0, 6.28))});
  }
  SineSumParams neg = p;
  for (Wave& w : neg.waves) w.c = -w.c;
  for (int t = 0; t < 20; ++t) {
    BigReal x(rng.uniform(0.0, 1.0));
    BigReal whole = evaluate(p, x);
    BigReal parts(0L);
    for (const Wave& w : p.waves) {
      SineSumParams one;
      one.waves.push_back(w);
      parts += evaluate(one, x);
    }
    CHECK(abs(whole - parts) < BigReal::pow2(-250));
    // Negating every amplitude negates the value exactly.
    CHECK(evaluate(neg, x) == -whole);
  }
}

TEST_CASE("phase periodicity") {
  Rng rng(13);
  SineSumParams p;
  p.waves.push_back(Wave{BigReal(0.7), BigReal(9.0), BigReal(0.4)});
  p.waves.push_back(Wave{BigReal(-1.1), BigReal(2.5), BigReal(1.9)});
  SineSumParams shifted = p;
  shifted.waves[1].h = shifted.waves[1].h + BigReal::two_pi(256 + 32);
  for (int t = 0; t < 100; ++t) {
    BigReal x(rng.uniform(0.0, 1.0));
    CHECK(abs(evaluate(p, x) - evaluate(shifted, x)) < BigReal::pow2(-240));
  }
}

TEST_CASE("vanishing Q denominator raises with the offending index") {
  PolyExpAlgParams p;
  p.polys.push_back({BigComplex(BigReal(0L)), BigComplex(BigReal(1L))});
  p.q_num = constant_one(2);
  // den = z0 - 0.5, zero at x = 0.5
  MultiPoly den;
  den.nvars = 2;
  MultiTerm t0;
  t0.coeff = BigComplex(BigReal(1L));
  t0.exps = {1, 0};
  MultiTerm t1;
  t1.coeff = BigComplex(BigReal(-0.5));
  t1.exps = {0, 0};
  den.terms = {t0, t1};
  p.q_den = den;
  FamilyParams fam = p;
  CHECK_THROWS_AS(evaluate(fam, BigReal(0.5)), DivisionByZero);
  try {
    sample(fam, BigReal(0.25), BigReal(0.25), 2);
    CHECK(false);
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("index 1") != std::string::npos);
  }
}

TEST_CASE("sigma parameter domain") {
  SigmaSineParams p;
  p.sigma = SigmaKind::sigmoid;
  p.c = BigReal(1L);
  p.omega = BigReal(2L);
  p.b = BigReal(1.5);
  p.h = BigReal(0L);
  FamilyParams fam = p;
  CHECK_THROWS_AS(evaluate(fam, BigReal(0.5)), DomainError);
  p.b = BigReal(0.5);
  fam = p;
  CHECK(evaluate(fam, BigReal(0.5)).is_finite());
}

TEST_CASE("domain-restricted evaluation") {
  FamilyParams p = waves1(1, 1, 0);
  EvalOptions opt;
  opt.domain_restricted = true;
  CHECK_THROWS_AS(evaluate(p, BigReal(1.5), opt), DomainError);
  CHECK_NOTHROW(evaluate(p, BigReal(0.5), opt));
}

TEST_CASE("sigma menu orders at zero") {
  CHECK(sigma_order_at_zero(SigmaKind::sigmoid, {}) == 1);
  CHECK(sigma_order_at_zero(SigmaKind::tanh, {}) == 1);
  CHECK(sigma_order_at_zero(SigmaKind::gaussian, {}) == 2);
  CHECK(sigma_order_at_zero(SigmaKind::sin, {}) == 1);
  CHECK(sigma_order_at_zero(SigmaKind::poly, {BigReal(1L), BigReal(0L), BigReal(3L)}) == 2);
  CHECK_THROWS_AS(sigma_order_at_zero(SigmaKind::poly, {BigReal(1L)}), DomainError);
}

TEST_CASE("complex intermediates stay real for conjugate wave pairs") {
  // g(x) = (e^{ix} - e^{-ix}) / (2i) realized as Q with two exponentials.
  PolyExpAlgParams p;
  BigComplex i_unit(BigReal(0L), BigReal(1L));
  p.polys.push_back({BigComplex(), i_unit});    // P1 = ix
  p.polys.push_back({BigComplex(), -i_unit});   // P2 = -ix
  MultiPoly num;
  num.nvars = 3;
  MultiTerm tp;
  tp.coeff = BigComplex(BigReal(1L));
  tp.exps = {0, 1, 0};
  MultiTerm tm;
  tm.coeff = BigComplex(BigReal(-1L));
  tm.exps = {0, 0, 1};
  num.terms = {tp, tm};
  p.q_num = num;
  MultiPoly den;
  den.nvars = 3;
  MultiTerm td;
  td.coeff = BigComplex(BigReal(0L), BigReal(2L));
  td.exps = {0, 0, 0};
  den.terms = {td};
  p.q_den = den;
  FamilyParams fam = p;
  for (double x : {0.0, 0.3, 0.7, 1.0}) {
    CHECK(abs(evaluate(fam, BigReal(x)) - sin_big(BigReal(x))) < BigReal::pow2(-240));
  }
}
