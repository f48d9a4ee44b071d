#include "xpr/certify.hpp"

#include <gmpxx.h>

#include <limits>

#include "xpr/errors.hpp"
#include "xpr/linalg.hpp"

namespace xpr {

const char* certificate_kind_name(CertificateKind k) {
  switch (k) {
    case CertificateKind::det: return "det";
    case CertificateKind::exp_poly: return "exp_poly";
    case CertificateKind::vdw_composite: return "vdw_composite";
    case CertificateKind::derivative_bound: return "derivative_bound";
  }
  return "?";
}

Certificate Certificate::make(CertificateKind kind, BigReal residual, BigReal tolerance,
                              std::string metadata) {
  Certificate c;
  c.kind = kind;
  c.residual = std::move(residual);
  c.tolerance = std::move(tolerance);
  c.pass = c.residual <= c.tolerance;
  c.metadata = std::move(metadata);
  return c;
}

BigReal default_tolerance(mpfr_prec_t bits) {
  return BigReal::pow2(-static_cast<long>(bits) / 2, bits);
}

namespace {

BigReal binomial_big(int n, int k, mpfr_prec_t bits) {
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  BigReal out = BigReal::zero(bits);
  mpfr_set_z(out.raw(), b.get_mpz_t(), MPFR_RNDN);
  return out;
}

void require_distinct(const std::vector<BigReal>& v, const char* label) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = i + 1; j < v.size(); ++j) {
      if (v[i] == v[j]) {
        throw DegenerateInput(std::string(label) + " values repeat; the determinant is "
                              "identically zero and certifies nothing");
      }
    }
  }
}

}  // namespace

Certificate det_certificate(const RealSampler& g, const BigReal& x0,
                            const std::vector<BigReal>& alphas, const std::vector<BigReal>& betas,
                            int n_waves, std::optional<BigReal> tolerance) {
  if (n_waves < 1) throw DomainError("det_certificate: N must be >= 1");
  const std::size_t dim = 2 * static_cast<std::size_t>(n_waves) + 1;
  if (alphas.size() != dim || betas.size() != dim) {
    throw DomainError("det_certificate: need 2N+1 alphas and betas");
  }
  require_distinct(alphas, "alpha");
  require_distinct(betas, "beta");

  const mpfr_prec_t bits = x0.bits();
  Mat a(dim, dim, bits);
  for (std::size_t k = 0; k < dim; ++k) {
    for (std::size_t m = 0; m < dim; ++m) {
      a.at(k, m) = g(x0 + alphas[k] + betas[m]);
    }
  }
  BigReal det = abs(determinant(a));
  BigReal scale = hadamard_bound(a);
  BigReal residual = scale.is_zero() ? BigReal(0L, bits) : det / scale;
  BigReal tol = tolerance.value_or(default_tolerance(bits));
  return Certificate::make(CertificateKind::det, residual, tol,
                           "dim=" + std::to_string(dim) + " N=" + std::to_string(n_waves));
}

SampleGrid discrete_derivative(const SampleGrid& grid, int s) {
  if (s < 0) throw DomainError("discrete_derivative: order must be >= 0");
  if (s > grid.m) {
    throw LengthError("discrete_derivative: order " + std::to_string(s) +
                      " exceeds grid length m = " + std::to_string(grid.m));
  }
  const mpfr_prec_t bits = grid.h.bits();
  SampleGrid out;
  out.a = grid.a;
  out.h = grid.h;
  out.m = grid.m - s;
  out.real_valued = grid.real_valued;
  BigReal hpow = pow_big(grid.h, s);
  for (long j = 0; j + s <= grid.m; ++j) {
    BigComplex acc;
    for (int k = 0; k <= s; ++k) {
      BigReal coeff = binomial_big(s, k, bits);
      if ((s - k) % 2 == 1) coeff = -coeff;
      acc += coeff * grid.value(j + k);
    }
    out.values.push_back(BigComplex(acc.re / hpow, acc.im / hpow));
  }
  return out;
}

Certificate exp_poly_certificate(const SampleGrid& grid, int d,
                                 std::optional<BigReal> tolerance) {
  if (d < 0) throw DomainError("exp_poly_certificate: degree must be >= 0");
  if (grid.m < d + 1) {
    throw LengthError("exp_poly_certificate: need m >= d+1 = " + std::to_string(d + 1) +
                      ", grid has m = " + std::to_string(grid.m));
  }
  const mpfr_prec_t bits = grid.h.bits();
  const BigReal floor = BigReal::pow2(-static_cast<long>(bits) / 2, bits);

  // Log with the branch chosen by continuation: each point's imaginary part
  // is placed within pi of its neighbor's.
  std::vector<BigComplex> logs;
  logs.reserve(grid.values.size());
  const BigReal two_pi = BigReal::two_pi(bits + 32);
  for (long j = 0; j <= grid.m; ++j) {
    const BigComplex& v = grid.value(j);
    if (v.abs() < floor) {
      throw ZeroSample("exp_poly_certificate: |g| below 2^(-bits/2) at grid index " +
                       std::to_string(j));
    }
    BigComplex lg = log_big(v);
    if (!logs.empty()) {
      BigReal delta = lg.im - logs.back().im;
      BigReal shift = round_big(delta / two_pi);
      lg.im -= shift * two_pi;
    }
    logs.push_back(lg);
  }

  BigReal worst(0L, bits);
  for (long j = 0; j + d + 1 <= grid.m; ++j) {
    BigComplex acc;
    for (int k = 0; k <= d + 1; ++k) {
      BigReal coeff = binomial_big(d + 1, k, bits);
      if ((d + 1 - k) % 2 == 1) coeff = -coeff;
      acc += coeff * logs[static_cast<std::size_t>(j + k)];
    }
    // Branch mismatches can only contribute whole turns; fold them away.
    acc.im = reduce_mod_2pi_centered(acc.im);
    worst = max_big(worst, acc.abs());
  }
  BigReal tol = tolerance.value_or(default_tolerance(bits));
  return Certificate::make(CertificateKind::exp_poly, worst, tol,
                           "d=" + std::to_string(d) + " windows=" + std::to_string(grid.m - d));
}

long long constraint_grid_size(int n_exponentials, int q, int r, int d) {
  if (n_exponentials < 1) throw DomainError("constraint_grid_size: N must be >= 1");
  if (q < 1) throw DomainError("constraint_grid_size: q must be >= 1");
  if (r < 0 || d < 0) throw DomainError("constraint_grid_size: r, d must be >= 0");
  mpz_class bin;
  mpz_bin_uiui(bin.get_mpz_t(), static_cast<unsigned long>(n_exponentials + r + 1),
               static_cast<unsigned long>(n_exponentials + 1));
  mpz_class m = mpz_class(q + 1) * bin +
                mpz_class(std::max(1, d) + 1) * mpz_class(n_exponentials + 1);
  if (!m.fits_slong_p()) throw DomainError("constraint_grid_size: result overflows");
  return m.get_si();
}

std::optional<Progression> find_monochromatic_ap(const Coloring& coloring, int s) {
  if (s < 2) throw DomainError("find_monochromatic_ap: s must be >= 2");
  const int n = static_cast<int>(coloring.size());
  for (int start = 1; start <= n; ++start) {
    for (int step = 1; start + (s - 1) * step <= n; ++step) {
      const int c = coloring.colors[static_cast<std::size_t>(start - 1)];
      bool mono = true;
      for (int i = 1; i < s && mono; ++i) {
        mono = coloring.colors[static_cast<std::size_t>(start + i * step - 1)] == c;
      }
      if (mono) return Progression{start, step};
    }
  }
  return std::nullopt;
}

long n_vdw_bound(int s, int p) {
  if (s < 1 || p < 1) throw DomainError("n_vdw_bound: s, p must be >= 1");
  if (s == 1) return 1;
  if (p == 1) return s;
  if (s == 2) return p + 1;
  if (s == 3 && p == 2) return 9;
  if (s == 3 && p == 3) return 27;
  if (s == 4 && p == 2) return 35;
  throw BudgetError("van der Waerden number for (s=" + std::to_string(s) +
                    ", p=" + std::to_string(p) + ") is outside the stored exact table");
}

Certificate vdw_composite_certificate(const RealSampler& g, const BigReal& a, const BigReal& b,
                                      const BranchColorer& colorer, const SubCertifier& sub,
                                      int s_tilde, int p) {
  if (!(b > a)) throw DomainError("vdw_composite_certificate: need b > a");
  const long m = n_vdw_bound(s_tilde, p) - 1;
  const mpfr_prec_t bits = a.bits();
  const BigReal h = (b - a) / BigReal(m, bits);

  SampleGrid grid = sample_fn(g, a, h, m);
  Coloring coloring;
  int max_color = -1;
  for (long j = 0; j <= m; ++j) {
    int c = colorer(grid.x_at(j));
    coloring.colors.push_back(c);
    max_color = std::max(max_color, c);
  }
  if (max_color >= p) {
    throw DomainError("vdw_composite_certificate: colorer produced " +
                      std::to_string(max_color + 1) + " colors, promised at most " +
                      std::to_string(p));
  }

  auto ap = find_monochromatic_ap(coloring, s_tilde);
  if (!ap) {
    throw InternalError("no monochromatic progression in a grid of van der Waerden size; "
                        "this contradicts the theorem and indicates a bug");
  }

  SampleGrid subgrid;
  subgrid.a = grid.x_at(ap->start - 1);
  subgrid.h = h * BigReal(static_cast<long>(ap->step), bits);
  subgrid.m = s_tilde - 1;
  subgrid.real_valued = grid.real_valued;
  for (int i = 0; i < s_tilde; ++i) {
    subgrid.values.push_back(grid.value(ap->start - 1 + static_cast<long>(i) * ap->step));
  }
  const int color = coloring.colors[static_cast<std::size_t>(ap->start - 1)];

  Certificate inner = sub(subgrid, color);
  Certificate out = Certificate::make(
      CertificateKind::vdw_composite, inner.residual, inner.tolerance,
      "grid_points=" + std::to_string(m + 1) + " sub_start=" + std::to_string(ap->start) +
          " sub_step=" + std::to_string(ap->step) + " color=" + std::to_string(color) +
          " inner=" + certificate_kind_name(inner.kind) + "; " + inner.metadata);
  return out;
}

EntropyBound entropy_bound(int p_params, int bits_each, const BigReal& amplitude_bound,
                           const BigReal& eps) {
  if (p_params < 1 || bits_each < 1) throw DomainError("entropy_bound: p, B must be >= 1");
  if (!(eps.sign() > 0)) throw DomainError("entropy_bound: eps must be positive");
  if (!(amplitude_bound > eps)) throw DomainError("entropy_bound: need M > eps");
  const mpfr_prec_t bits = std::max(amplitude_bound.bits(), eps.bits());
  BigReal denom = log2_big(amplitude_bound.round_to(bits) / eps.round_to(bits));
  BigReal budget(static_cast<long>(p_params) * static_cast<long>(bits_each), bits);
  EntropyBound out;
  BigReal limit = BigReal::pow2(62, bits);
  if (denom * limit < budget) {
    out.overflow = true;
    out.max_n = std::numeric_limits<long long>::max();
    return out;
  }
  out.max_n = floor_big(budget / denom).to_long();
  return out;
}

}  // namespace xpr
