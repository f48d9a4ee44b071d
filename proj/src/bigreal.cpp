#include "xpr/bigreal.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <vector>

#include "xpr/errors.hpp"

namespace xpr {

namespace precision {
namespace {
std::atomic<mpfr_prec_t> g_default_bits{256};
std::atomic<mpfr_prec_t> g_guard_ceiling{1 << 20};
}  // namespace

mpfr_prec_t default_bits() { return g_default_bits.load(); }

void set_default_bits(mpfr_prec_t bits) {
  if (bits < kMinBits) throw DomainError("precision must be at least 16 bits");
  g_default_bits.store(bits);
}

mpfr_prec_t guard_ceiling() { return g_guard_ceiling.load(); }

void set_guard_ceiling(mpfr_prec_t bits) { g_guard_ceiling.store(bits); }
}  // namespace precision

BigReal::BigReal(AllocTag, mpfr_prec_t bits) {
  mpfr_init2(v_, std::max<mpfr_prec_t>(bits, precision::kMinBits));
  mpfr_set_zero(v_, 1);
}

BigReal BigReal::zero(mpfr_prec_t bits) { return BigReal(AllocTag{}, bits); }

BigReal::BigReal(double v, mpfr_prec_t bits) : BigReal(AllocTag{}, bits) {
  mpfr_set_d(v_, v, MPFR_RNDN);
}

BigReal::BigReal(long v, mpfr_prec_t bits) : BigReal(AllocTag{}, bits) {
  mpfr_set_si(v_, v, MPFR_RNDN);
}

BigReal::BigReal(const BigReal& other) {
  mpfr_init2(v_, other.bits());
  mpfr_set(v_, other.v_, MPFR_RNDN);
}

BigReal::BigReal(BigReal&& other) noexcept {
  mpfr_init2(v_, other.bits());
  mpfr_swap(v_, other.v_);
}

BigReal& BigReal::operator=(const BigReal& other) {
  if (this != &other) {
    mpfr_set_prec(v_, other.bits());
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }
  return *this;
}

BigReal& BigReal::operator=(BigReal&& other) noexcept {
  if (this != &other) mpfr_swap(v_, other.v_);
  return *this;
}

BigReal::~BigReal() { mpfr_clear(v_); }

BigReal BigReal::from_string(std::string_view text, mpfr_prec_t default_bits) {
  mpfr_prec_t bits = default_bits;
  std::string_view body = text;
  if (auto at = text.rfind('@'); at != std::string_view::npos) {
    body = text.substr(0, at);
    std::string bits_str(text.substr(at + 1));
    try {
      bits = static_cast<mpfr_prec_t>(std::stol(bits_str));
    } catch (const std::exception&) {
      throw UsageError("bad precision annotation: " + std::string(text));
    }
    if (bits < precision::kMinBits) throw UsageError("precision too small: " + bits_str);
  }
  BigReal out = BigReal::zero(bits);
  std::string s(body);
  char* end = nullptr;
  int rc = mpfr_strtofr(out.v_, s.c_str(), &end, 10, MPFR_RNDN);
  (void)rc;
  if (end == s.c_str() || (end && *end != '\0')) {
    throw UsageError("unparsable number: " + std::string(text));
  }
  return out;
}

BigReal BigReal::pi(mpfr_prec_t bits) {
  BigReal out = BigReal::zero(bits);
  mpfr_const_pi(out.v_, MPFR_RNDN);
  return out;
}

BigReal BigReal::two_pi(mpfr_prec_t bits) {
  BigReal out = pi(bits);
  mpfr_mul_2si(out.v_, out.v_, 1, MPFR_RNDN);  // exact
  return out;
}

BigReal BigReal::pow2(long e, mpfr_prec_t bits) {
  BigReal out = BigReal::zero(bits);
  mpfr_set_si(out.v_, 1, MPFR_RNDN);
  mpfr_mul_2si(out.v_, out.v_, e, MPFR_RNDN);
  return out;
}

BigReal BigReal::round_to(mpfr_prec_t bits) const {
  BigReal out = BigReal::zero(bits);
  mpfr_set(out.v_, v_, MPFR_RNDN);
  return out;
}

std::string BigReal::to_string() const { return decimal() + "@" + std::to_string(bits()); }

std::string BigReal::decimal(int digits) const {
  if (digits <= 0) {
    // Enough digits to recover the value exactly on re-parse.
    digits = static_cast<int>(static_cast<double>(bits()) * 0.30103) + 3;
  }
  if (mpfr_nan_p(v_)) return "nan";
  if (mpfr_inf_p(v_)) return mpfr_sgn(v_) > 0 ? "inf" : "-inf";
  char* s = nullptr;
  if (mpfr_asprintf(&s, "%.*Rg", digits, v_) < 0) throw InternalError("mpfr_asprintf failed");
  std::string out(s);
  mpfr_free_str(s);
  return out;
}

BigReal BigReal::operator-() const {
  BigReal out = BigReal::zero(bits());
  mpfr_neg(out.v_, v_, MPFR_RNDN);
  return out;
}

namespace {
mpfr_prec_t join(const BigReal& a, const BigReal& b) { return std::max(a.bits(), b.bits()); }
}  // namespace

BigReal& BigReal::operator+=(const BigReal& rhs) { return *this = *this + rhs; }
BigReal& BigReal::operator-=(const BigReal& rhs) { return *this = *this - rhs; }
BigReal& BigReal::operator*=(const BigReal& rhs) { return *this = *this * rhs; }
BigReal& BigReal::operator/=(const BigReal& rhs) { return *this = *this / rhs; }

BigReal operator+(const BigReal& a, const BigReal& b) {
  BigReal out = BigReal::zero(join(a, b));
  mpfr_add(out.v_, a.v_, b.v_, MPFR_RNDN);
  return out;
}

BigReal operator-(const BigReal& a, const BigReal& b) {
  BigReal out = BigReal::zero(join(a, b));
  mpfr_sub(out.v_, a.v_, b.v_, MPFR_RNDN);
  return out;
}

BigReal operator*(const BigReal& a, const BigReal& b) {
  BigReal out = BigReal::zero(join(a, b));
  mpfr_mul(out.v_, a.v_, b.v_, MPFR_RNDN);
  return out;
}

BigReal operator/(const BigReal& a, const BigReal& b) {
  BigReal out = BigReal::zero(join(a, b));
  mpfr_div(out.v_, a.v_, b.v_, MPFR_RNDN);
  return out;
}

BigReal abs(const BigReal& x) {
  BigReal out = BigReal::zero(x.bits());
  mpfr_abs(out.raw(), x.raw(), MPFR_RNDN);
  return out;
}

BigReal sqrt_big(const BigReal& x) {
  if (x.sign() < 0) throw DomainError("sqrt of negative value");
  BigReal out = BigReal::zero(x.bits());
  mpfr_sqrt(out.raw(), x.raw(), MPFR_RNDN);
  return out;
}

BigReal floor_big(const BigReal& x) {
  BigReal out = BigReal::zero(x.bits());
  mpfr_floor(out.raw(), x.raw());
  return out;
}

BigReal ceil_big(const BigReal& x) {
  BigReal out = BigReal::zero(x.bits());
  mpfr_ceil(out.raw(), x.raw());
  return out;
}

BigReal round_big(const BigReal& x) {
  BigReal out = BigReal::zero(x.bits());
  mpfr_round(out.raw(), x.raw());
  return out;
}

BigReal min_big(const BigReal& a, const BigReal& b) { return a <= b ? a : b; }
BigReal max_big(const BigReal& a, const BigReal& b) { return a >= b ? a : b; }

BigReal pow_big(const BigReal& x, long n) {
  BigReal out = BigReal::zero(x.bits());
  mpfr_pow_si(out.raw(), x.raw(), n, MPFR_RNDN);
  return out;
}

namespace {

/// Reduction carried out at guard precision; the caller rounds down.
BigReal reduce_mod_2pi_guarded(const BigReal& x) {
  if (!x.is_finite()) throw DomainError("reduce_mod_2pi: non-finite argument");
  const mpfr_prec_t bits = x.bits();
  const long ex = std::max<long>(0, x.exponent());
  const mpfr_prec_t guard = bits + static_cast<mpfr_prec_t>(ex) + 32;
  if (guard > precision::guard_ceiling()) {
    throw PrecisionExhausted("reduce_mod_2pi: |x| ~ 2^" + std::to_string(ex) + " needs " +
                             std::to_string(guard) + " guard bits, ceiling is " +
                             std::to_string(precision::guard_ceiling()));
  }
  BigReal two_pi = BigReal::two_pi(guard);
  BigReal q = floor_big(x.round_to(guard) / two_pi);
  BigReal r = x.round_to(guard) - q * two_pi;
  // Rounding in the division can leave r one period off.
  while (r.sign() < 0) r += two_pi;
  while (r >= two_pi) r -= two_pi;
  return r;
}

}  // namespace

BigReal reduce_mod_2pi(const BigReal& x) {
  const mpfr_prec_t bits = x.bits();
  BigReal r = reduce_mod_2pi_guarded(x);
  BigReal out = r.round_to(bits);
  // Rounding down in precision may bump the result up to (or past) 2pi;
  // on the circle that is 0.
  if (out >= BigReal::two_pi(bits + 32)) return BigReal(0L, bits);
  if (out.sign() < 0) return BigReal(0L, bits);
  return out;
}

BigReal reduce_mod_2pi_centered(const BigReal& x) {
  const mpfr_prec_t bits = x.bits();
  BigReal r = reduce_mod_2pi_guarded(x);
  BigReal two_pi = BigReal::two_pi(r.bits());
  if (r > BigReal::pi(r.bits())) r -= two_pi;
  return r.round_to(bits);
}

BigReal circle_distance(const BigReal& a, const BigReal& b) {
  BigReal d = reduce_mod_2pi(a - b);
  BigReal two_pi = BigReal::two_pi(d.bits() + 32);
  return min_big(d, two_pi - d);
}

BigReal sin_big(const BigReal& x) {
  BigReal r = reduce_mod_2pi_guarded(x);
  BigReal out = BigReal::zero(x.bits());
  mpfr_sin(out.raw(), r.raw(), MPFR_RNDN);
  return out;
}

BigReal cos_big(const BigReal& x) {
  BigReal r = reduce_mod_2pi_guarded(x);
  BigReal out = BigReal::zero(x.bits());
  mpfr_cos(out.raw(), r.raw(), MPFR_RNDN);
  return out;
}

BigReal asin_big(const BigReal& x) {
  if (abs(x) > BigReal(1L, x.bits())) throw DomainError("asin outside [-1, 1]");
  BigReal out = BigReal::zero(x.bits());
  mpfr_asin(out.raw(), x.raw(), MPFR_RNDN);
  return out;
}

BigReal acos_big(const BigReal& x) {
  if (abs(x) > BigReal(1L, x.bits())) throw DomainError("acos outside [-1, 1]");
  BigReal out = BigReal::zero(x.bits());
  mpfr_acos(out.raw(), x.raw(), MPFR_RNDN);
  return out;
}

BigReal atan2_big(const BigReal& y, const BigReal& x) {
  BigReal out = BigReal::zero(std::max(x.bits(), y.bits()));
  mpfr_atan2(out.raw(), y.raw(), x.raw(), MPFR_RNDN);
  return out;
}

BigReal tanh_big(const BigReal& x) {
  BigReal out = BigReal::zero(x.bits());
  mpfr_tanh(out.raw(), x.raw(), MPFR_RNDN);
  return out;
}

BigReal exp_big(const BigReal& x) {
  BigReal out = BigReal::zero(x.bits());
  mpfr_exp(out.raw(), x.raw(), MPFR_RNDN);
  return out;
}

BigReal log_big(const BigReal& x) {
  if (x.sign() <= 0) throw DomainError("log of non-positive value");
  BigReal out = BigReal::zero(x.bits());
  mpfr_log(out.raw(), x.raw(), MPFR_RNDN);
  return out;
}

BigReal log2_big(const BigReal& x) {
  if (x.sign() <= 0) throw DomainError("log2 of non-positive value");
  BigReal out = BigReal::zero(x.bits());
  mpfr_log2(out.raw(), x.raw(), MPFR_RNDN);
  return out;
}

}  // namespace xpr
