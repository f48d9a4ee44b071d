#include "xpr/linalg.hpp"

#include "xpr/errors.hpp"

namespace xpr {

BigReal determinant(Mat a) {
  if (a.rows() != a.cols()) throw InternalError("determinant of non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return BigReal(1L);
  const mpfr_prec_t bits = a.at(0, 0).bits();
  BigReal det(1L, bits);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    for (std::size_t r = k + 1; r < n; ++r) {
      if (abs(a.at(r, k)) > abs(a.at(pivot, k))) pivot = r;
    }
    if (a.at(pivot, k).is_zero()) return BigReal(0L, bits);
    if (pivot != k) {
      for (std::size_t c = k; c < n; ++c) std::swap(a.at(pivot, c), a.at(k, c));
      det = -det;
    }
    det *= a.at(k, k);
    for (std::size_t r = k + 1; r < n; ++r) {
      BigReal f = a.at(r, k) / a.at(k, k);
      for (std::size_t c = k + 1; c < n; ++c) a.at(r, c) -= f * a.at(k, c);
    }
  }
  return det;
}

BigReal hadamard_bound(const Mat& a) {
  if (a.rows() == 0) return BigReal(1L);
  const mpfr_prec_t bits = a.at(0, 0).bits();
  BigReal prod(1L, bits);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    BigReal s(0L, bits);
    for (std::size_t c = 0; c < a.cols(); ++c) s += a.at(r, c) * a.at(r, c);
    prod *= sqrt_big(s);
  }
  return prod;
}

bool solve_linear(Mat a, std::vector<BigReal> b, std::vector<BigReal>& x) {
  const std::size_t n = a.rows();
  if (a.cols() != n || b.size() != n) throw InternalError("solve_linear: shape mismatch");
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    for (std::size_t r = k + 1; r < n; ++r) {
      if (abs(a.at(r, k)) > abs(a.at(pivot, k))) pivot = r;
    }
    if (a.at(pivot, k).is_zero()) return false;
    if (pivot != k) {
      for (std::size_t c = k; c < n; ++c) std::swap(a.at(pivot, c), a.at(k, c));
      std::swap(b[pivot], b[k]);
    }
    for (std::size_t r = k + 1; r < n; ++r) {
      BigReal f = a.at(r, k) / a.at(k, k);
      for (std::size_t c = k + 1; c < n; ++c) a.at(r, c) -= f * a.at(k, c);
      b[r] -= f * b[k];
    }
  }
  x.assign(n, BigReal(0L, b.empty() ? precision::default_bits() : b[0].bits()));
  for (std::size_t ri = n; ri-- > 0;) {
    BigReal s = b[ri];
    for (std::size_t c = ri + 1; c < n; ++c) s -= a.at(ri, c) * x[c];
    x[ri] = s / a.at(ri, ri);
  }
  return true;
}

BigReal condition_estimate(const Mat& a) {
  const std::size_t n = a.rows();
  if (n == 0) return BigReal(1L);
  const mpfr_prec_t bits = a.at(0, 0).bits();
  BigReal norm_a(0L, bits);
  for (std::size_t c = 0; c < n; ++c) {
    BigReal s(0L, bits);
    for (std::size_t r = 0; r < n; ++r) s += abs(a.at(r, c));
    norm_a = max_big(norm_a, s);
  }
  BigReal norm_inv(0L, bits);
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<BigReal> e(n, BigReal(0L, bits)), col;
    e[c] = BigReal(1L, bits);
    if (!solve_linear(a, e, col)) return BigReal::pow2(static_cast<long>(bits), bits);
    BigReal s(0L, bits);
    for (const BigReal& v : col) s += abs(v);
    norm_inv = max_big(norm_inv, s);
  }
  return norm_a * norm_inv;
}

}  // namespace xpr
