#include "xpr/lattice.hpp"

#include "xpr/errors.hpp"

namespace xpr::lattice {

mpz_class round_nearest(const mpq_class& q) {
  // floor(q + 1/2)
  mpz_class num = 2 * q.get_num() + q.get_den();
  mpz_class den = 2 * q.get_den();
  mpz_class out;
  mpz_fdiv_q(out.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return out;
}

mpq_class to_rational(const BigReal& x) {
  if (!x.is_finite()) throw DomainError("to_rational: non-finite value");
  mpq_class q;
  mpfr_get_q(q.get_mpq_t(), x.raw());
  return q;
}

namespace {

struct Gso {
  std::vector<QVec> bstar;       // orthogonalized rows
  std::vector<QVec> mu;          // lower-triangular coefficients
  QVec norm2;                    // squared norms of bstar rows

  void compute(const ZMat& b) {
    const std::size_t n = b.size();
    const std::size_t d = b.empty() ? 0 : b[0].size();
    bstar.assign(n, QVec(d, 0));
    mu.assign(n, QVec(n, 0));
    norm2.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t c = 0; c < d; ++c) bstar[i][c] = mpq_class(b[i][c]);
      for (std::size_t j = 0; j < i; ++j) {
        if (norm2[j] == 0) throw InternalError("LLL: linearly dependent basis rows");
        mpq_class dot = 0;
        for (std::size_t c = 0; c < d; ++c) dot += mpq_class(b[i][c]) * bstar[j][c];
        mu[i][j] = dot / norm2[j];
        for (std::size_t c = 0; c < d; ++c) bstar[i][c] -= mu[i][j] * bstar[j][c];
      }
      mpq_class s = 0;
      for (std::size_t c = 0; c < d; ++c) s += bstar[i][c] * bstar[i][c];
      norm2[i] = s;
    }
  }
};

void sub_mul(ZVec& a, const mpz_class& q, const ZVec& b) {
  for (std::size_t c = 0; c < a.size(); ++c) a[c] -= q * b[c];
}

}  // namespace

void lll_reduce(ZMat& basis, const mpq_class& delta) {
  const std::size_t n = basis.size();
  if (n <= 1) return;
  Gso g;
  g.compute(basis);
  std::size_t k = 1;
  long steps = 0;
  while (k < n) {
    if (++steps > 2'000'000) throw InternalError("LLL failed to converge");
    for (std::size_t j = k; j-- > 0;) {
      mpz_class q = round_nearest(g.mu[k][j]);
      if (q != 0) {
        sub_mul(basis[k], q, basis[j]);
        mpq_class qq(q);
        for (std::size_t l = 0; l < j; ++l) g.mu[k][l] -= qq * g.mu[j][l];
        g.mu[k][j] -= qq;
      }
    }
    mpq_class lhs = g.norm2[k];
    mpq_class rhs = (delta - g.mu[k][k - 1] * g.mu[k][k - 1]) * g.norm2[k - 1];
    if (lhs >= rhs) {
      ++k;
    } else {
      std::swap(basis[k], basis[k - 1]);
      g.compute(basis);
      if (k > 1) --k;
    }
  }
}

ZVec babai_nearest_plane(const ZMat& basis, const QVec& target) {
  const std::size_t n = basis.size();
  const std::size_t d = basis.empty() ? 0 : basis[0].size();
  if (target.size() != d) throw InternalError("babai: dimension mismatch");
  Gso g;
  g.compute(basis);
  QVec w = target;
  ZVec out(d, 0);
  for (std::size_t i = n; i-- > 0;) {
    mpq_class dot = 0;
    for (std::size_t c = 0; c < d; ++c) dot += w[c] * g.bstar[i][c];
    mpz_class ci = round_nearest(dot / g.norm2[i]);
    for (std::size_t c = 0; c < d; ++c) {
      w[c] -= mpq_class(ci * basis[i][c]);
      out[c] += ci * basis[i][c];
    }
  }
  return out;
}

std::vector<std::vector<long>> offset_box(std::size_t dim, long radius) {
  std::vector<std::vector<long>> out;
  std::vector<long> cur(dim, -radius);
  while (true) {
    out.push_back(cur);
    std::size_t i = 0;
    while (i < dim && cur[i] == radius) {
      cur[i] = -radius;
      ++i;
    }
    if (i == dim) break;
    ++cur[i];
  }
  return out;
}

}  // namespace xpr::lattice
