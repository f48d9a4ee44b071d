#include <doctest.h>

#include "xpr/bigcomplex.hpp"
#include "xpr/bigreal.hpp"
#include "xpr/errors.hpp"
#include "xpr/rng.hpp"

using namespace xpr;

namespace {
BigReal tol_pow2(long e) { return BigReal::pow2(e); }
}  // namespace

TEST_CASE("argument reduction basics") {
  // 2 pi reduces to 0 on the circle.
  BigReal two_pi = BigReal::two_pi(256);
  BigReal r = reduce_mod_2pi(two_pi);
  BigReal circ = min_big(r, abs(two_pi - r));
  CHECK(circ < tol_pow2(-250));

  // pi is its own reduction.
  BigReal pi = BigReal::pi(256);
  CHECK(abs(reduce_mod_2pi(pi) - pi) < tol_pow2(-250));

  // Range invariant on assorted values.
  Rng rng(1);
  for (int i = 0; i < 50; ++i) {
    BigReal x(rng.uniform(-1e6, 1e6));
    BigReal red = reduce_mod_2pi(x);
    CHECK(red >= BigReal(0L));
    CHECK(red < two_pi + tol_pow2(-250));
  }
}

TEST_CASE("argument reduction of a huge argument matches a 1024-bit recomputation") {
  // x = 1e40 * sqrt(2), reduced at 256 bits, against the same value reduced
  // with everything done at 1024 bits.
  BigReal x = BigReal::from_string("1e40") * sqrt_big(BigReal(2L, 256));
  BigReal r = reduce_mod_2pi(x);

  BigReal x_hi = x.round_to(1024);  // same dyadic value, wider precision
  BigReal two_pi_hi = BigReal::two_pi(1024);
  BigReal q = floor_big(x_hi / two_pi_hi);
  BigReal r_hi = x_hi - q * two_pi_hi;
  CHECK(abs(r - r_hi) < tol_pow2(-200));
}

TEST_CASE("reduction is 2-pi periodic") {
  Rng rng(2);
  for (int i = 0; i < 20; ++i) {
    BigReal x(rng.uniform(0.0, 6.0));
    long k = static_cast<long>(rng.below(1000)) - 500;
    BigReal shifted = x + BigReal(k) * BigReal::two_pi(256 + 32);
    CHECK(abs(reduce_mod_2pi(x) - reduce_mod_2pi(shifted)) < tol_pow2(-240));
  }
  // A huge shift still lands on the same residue thanks to guard digits.
  BigReal x(1.25, 256);
  BigReal k = BigReal::pow2(100, 512);
  BigReal shifted = (x.round_to(512) + k * BigReal::two_pi(512)).round_to(256 + 110);
  CHECK(abs(reduce_mod_2pi(x) - reduce_mod_2pi(shifted)) < tol_pow2(-230));
}

TEST_CASE("guard ceiling raises instead of losing accuracy") {
  mpfr_prec_t old = precision::guard_ceiling();
  precision::set_guard_ceiling(512);
  BigReal huge = BigReal::from_string("1e200");
  CHECK_THROWS_AS(reduce_mod_2pi(huge), PrecisionExhausted);
  precision::set_guard_ceiling(old);
  CHECK_NOTHROW(reduce_mod_2pi(huge));
}

TEST_CASE("trigonometric values") {
  CHECK(sin_big(BigReal(0L)).is_zero());
  CHECK(abs(sin_big(BigReal::pi(256) / BigReal(2L)) - BigReal(1L)) < tol_pow2(-250));
  // Euler identity: exp(i pi) = -1.
  BigComplex ipi(BigReal(0L), BigReal::pi(256));
  BigComplex e = exp_big(ipi);
  CHECK(abs(e.re + BigReal(1L)) < tol_pow2(-250));
  CHECK(abs(e.im) < tol_pow2(-250));
}

TEST_CASE("monotone precision: doubling bits moves results by < 2^(-bits+4) relative") {
  Rng rng(3);
  for (int i = 0; i < 20; ++i) {
    double xv = rng.uniform(0.1, 50.0);
    BigReal x128(xv, 128);
    BigReal lo = sin_big(exp_big(BigReal(1L, 128) / x128));
    BigReal x256(xv, 256);
    BigReal hi = sin_big(exp_big(BigReal(1L, 256) / x256));
    if (hi.is_zero()) continue;
    CHECK(abs(lo - hi) / abs(hi) < BigReal::pow2(-128 + 4, 256));
  }
}

TEST_CASE("mixed-precision arithmetic keeps the larger precision") {
  BigReal a(1.5, 128), b(2.5, 320);
  CHECK((a + b).bits() == 320);
  CHECK((a * b).bits() == 320);
}

TEST_CASE("string round trip with precision annotation") {
  BigReal x = sqrt_big(BigReal(2L, 192));
  std::string s = x.to_string();
  CHECK(s.find("@192") != std::string::npos);
  BigReal y = BigReal::from_string(s);
  CHECK(y.bits() == 192);
  CHECK(abs(x - y) < BigReal::pow2(-185, 192));

  CHECK(BigReal::from_string("0.5").to_double() == 0.5);
  CHECK_THROWS_AS(BigReal::from_string("zzz"), UsageError);
  CHECK_THROWS_AS(BigReal::from_string("1.0@4"), UsageError);
}

TEST_CASE("complex helpers") {
  BigComplex z(3.0, 4.0);
  CHECK(abs(z.abs() - BigReal(5L)) < tol_pow2(-200));
  BigComplex lg = log_big(z);
  BigComplex back = exp_big(lg);
  CHECK((back - z).abs() < tol_pow2(-200));
  CHECK(pow_big(z, 0UL).re == BigReal(1L));
  CHECK(((pow_big(z, 3UL)) - (z * z * z)).abs() < tol_pow2(-180));
}

TEST_CASE("circle distance") {
  BigReal two_pi = BigReal::two_pi(256);
  BigReal a(0.1), b = two_pi - BigReal(0.1);
  CHECK(abs(circle_distance(a, b) - BigReal(0.2)) < tol_pow2(-200));
  CHECK(circle_distance(a, a).is_zero());
}
