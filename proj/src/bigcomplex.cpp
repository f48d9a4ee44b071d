#include "xpr/bigcomplex.hpp"

#include "xpr/errors.hpp"

namespace xpr {

BigComplex operator/(const BigComplex& a, const BigComplex& b) {
  BigReal d = b.abs2();
  if (d.is_zero()) throw DivisionByZero("complex division by zero");
  return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}

std::string BigComplex::to_string() const {
  return re.to_string() + (im.sign() < 0 ? " - " : " + ") + xpr::abs(im).to_string() + "i";
}

BigComplex exp_big(const BigComplex& z) {
  BigReal mag = exp_big(z.re);
  return {mag * cos_big(z.im), mag * sin_big(z.im)};
}

BigComplex log_big(const BigComplex& z) {
  if (z.is_zero()) throw DomainError("log of complex zero");
  return {log_big(z.abs()), z.arg()};
}

BigComplex pow_big(const BigComplex& z, unsigned long n) {
  BigComplex acc(BigReal(1L, z.bits()));
  BigComplex base = z;
  while (n > 0) {
    if (n & 1UL) acc *= base;
    base *= base;
    n >>= 1UL;
  }
  return acc;
}

BigComplex unit_circle(const BigReal& theta) { return {cos_big(theta), sin_big(theta)}; }

}  // namespace xpr
