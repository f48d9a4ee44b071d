#pragma once

#include <mpfr.h>

#include <string>
#include <string_view>

#include "xpr/precision.hpp"

namespace xpr {

/// Arbitrary-precision real number with an explicit precision in bits.
///
/// Values are immutable in spirit: every operation returns a fresh value and
/// never touches its operands, so BigReals can be shared freely between
/// threads. Arithmetic between operands of different precision is carried out
/// at the larger of the two precisions (precision is never silently
/// downgraded). Backed by MPFR, so each primitive operation is correctly
/// rounded to the active precision.
class BigReal {
 public:
  BigReal() : BigReal(0L, precision::default_bits()) {}
  // Implicit conversions from machine scalars are exact (the value is stored
  // exactly whenever it fits; doubles always fit).
  BigReal(double v, mpfr_prec_t bits = precision::default_bits());
  BigReal(long v, mpfr_prec_t bits = precision::default_bits());
  BigReal(int v, mpfr_prec_t bits = precision::default_bits())
      : BigReal(static_cast<long>(v), bits) {}

  /// Zero allocated at an explicit precision (mpfr_prec_t is a plain integer
  /// type, so this cannot be an overloaded constructor).
  static BigReal zero(mpfr_prec_t bits);

  BigReal(const BigReal& other);
  BigReal(BigReal&& other) noexcept;
  BigReal& operator=(const BigReal& other);
  BigReal& operator=(BigReal&& other) noexcept;
  ~BigReal();

  /// Parses "<decimal>" or "<decimal>@<bits>".
  static BigReal from_string(std::string_view text,
                             mpfr_prec_t default_bits = precision::default_bits());
  /// pi rounded to `bits` precision.
  static BigReal pi(mpfr_prec_t bits = precision::default_bits());
  static BigReal two_pi(mpfr_prec_t bits = precision::default_bits());
  /// 2^e as an exact value.
  static BigReal pow2(long e, mpfr_prec_t bits = precision::default_bits());

  mpfr_prec_t bits() const { return mpfr_get_prec(v_); }
  /// Same value re-rounded to a different precision.
  BigReal round_to(mpfr_prec_t bits) const;

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  long to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  bool is_nan() const { return mpfr_nan_p(v_) != 0; }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  /// Exponent e with |x| in [2^(e-1), 2^e); 0 for zero.
  long exponent() const { return is_zero() ? 0 : mpfr_get_exp(v_); }

  /// Serializes as "<decimal>@<bits>" with enough digits to round-trip.
  std::string to_string() const;
  /// Bare decimal with the given significant digits (default: round-trip).
  std::string decimal(int digits = 0) const;

  BigReal operator-() const;
  BigReal& operator+=(const BigReal& rhs);
  BigReal& operator-=(const BigReal& rhs);
  BigReal& operator*=(const BigReal& rhs);
  BigReal& operator/=(const BigReal& rhs);

  friend BigReal operator+(const BigReal& a, const BigReal& b);
  friend BigReal operator-(const BigReal& a, const BigReal& b);
  friend BigReal operator*(const BigReal& a, const BigReal& b);
  friend BigReal operator/(const BigReal& a, const BigReal& b);

  friend bool operator==(const BigReal& a, const BigReal& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend bool operator!=(const BigReal& a, const BigReal& b) { return !(a == b); }
  friend bool operator<(const BigReal& a, const BigReal& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
  friend bool operator<=(const BigReal& a, const BigReal& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
  friend bool operator>(const BigReal& a, const BigReal& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
  friend bool operator>=(const BigReal& a, const BigReal& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }

  mpfr_srcptr raw() const { return v_; }
  mpfr_ptr raw() { return v_; }

 private:
  struct AllocTag {};
  BigReal(AllocTag, mpfr_prec_t bits);

  mpfr_t v_;
};

BigReal abs(const BigReal& x);
BigReal sqrt_big(const BigReal& x);
BigReal floor_big(const BigReal& x);
BigReal ceil_big(const BigReal& x);
BigReal round_big(const BigReal& x);
BigReal min_big(const BigReal& a, const BigReal& b);
BigReal max_big(const BigReal& a, const BigReal& b);
/// x^n for machine-integer n.
BigReal pow_big(const BigReal& x, long n);

/// Reduces x into [0, 2pi). pi is evaluated with bits + max(0, exponent) + 32
/// guard bits so reduction of huge arguments stays accurate; raises
/// PrecisionExhausted if the guard requirement exceeds the configured ceiling.
BigReal reduce_mod_2pi(const BigReal& x);

/// Reduces x into (-pi, pi] (same guard policy).
BigReal reduce_mod_2pi_centered(const BigReal& x);

/// Distance between angles a and b on the circle of circumference 2pi.
BigReal circle_distance(const BigReal& a, const BigReal& b);

/// Trigonometric and exponential functions at the operand's precision.
/// sin_big/cos_big reduce the argument modulo 2pi first.
BigReal sin_big(const BigReal& x);
BigReal cos_big(const BigReal& x);
BigReal asin_big(const BigReal& x);
BigReal acos_big(const BigReal& x);
BigReal atan2_big(const BigReal& y, const BigReal& x);
BigReal tanh_big(const BigReal& x);
BigReal exp_big(const BigReal& x);
BigReal log_big(const BigReal& x);
BigReal log2_big(const BigReal& x);

}  // namespace xpr
