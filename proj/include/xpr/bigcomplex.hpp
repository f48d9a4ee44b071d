#pragma once

#include "xpr/bigreal.hpp"

namespace xpr {

/// Complex number over BigReal, stored rectangular; modulus and argument are
/// computed on demand at the working precision.
struct BigComplex {
  BigReal re;
  BigReal im;

  BigComplex() : re(0L), im(0L) {}
  BigComplex(BigReal r, BigReal i) : re(std::move(r)), im(std::move(i)) {}
  explicit BigComplex(BigReal r) : re(std::move(r)), im(BigReal(0L, re.bits())) {}
  BigComplex(double r, double i, mpfr_prec_t bits = precision::default_bits())
      : re(r, bits), im(i, bits) {}

  mpfr_prec_t bits() const { return std::max(re.bits(), im.bits()); }
  bool is_finite() const { return re.is_finite() && im.is_finite(); }
  bool is_zero() const { return re.is_zero() && im.is_zero(); }

  BigComplex conj() const { return {re, -im}; }
  BigReal abs2() const { return re * re + im * im; }
  BigReal abs() const { return sqrt_big(abs2()); }
  BigReal arg() const { return atan2_big(im, re); }

  BigComplex operator-() const { return {-re, -im}; }

  friend BigComplex operator+(const BigComplex& a, const BigComplex& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend BigComplex operator-(const BigComplex& a, const BigComplex& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend BigComplex operator*(const BigComplex& a, const BigComplex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend BigComplex operator*(const BigReal& s, const BigComplex& a) {
    return {s * a.re, s * a.im};
  }
  friend BigComplex operator/(const BigComplex& a, const BigComplex& b);

  BigComplex& operator+=(const BigComplex& rhs) { return *this = *this + rhs; }
  BigComplex& operator-=(const BigComplex& rhs) { return *this = *this - rhs; }
  BigComplex& operator*=(const BigComplex& rhs) { return *this = *this * rhs; }

  std::string to_string() const;
};

/// exp(z) = e^Re(z) (cos Im(z) + i sin Im(z)); the imaginary part goes
/// through reduce_mod_2pi, so huge imaginary parts stay accurate.
BigComplex exp_big(const BigComplex& z);

/// Principal logarithm: log|z| + i arg(z), arg in (-pi, pi].
BigComplex log_big(const BigComplex& z);

/// z^n for machine-integer n >= 0.
BigComplex pow_big(const BigComplex& z, unsigned long n);

/// Unit-modulus value e^(i*theta).
BigComplex unit_circle(const BigReal& theta);

}  // namespace xpr
