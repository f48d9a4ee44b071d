#include "xpr/limits.hpp"

#include <gmpxx.h>

#include "xpr/errors.hpp"
#include "xpr/linalg.hpp"
#include "xpr/parallel.hpp"

namespace xpr {

namespace {

BigReal binomial_big(int n, int k, mpfr_prec_t bits) {
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  BigReal out = BigReal::zero(bits);
  mpfr_set_z(out.raw(), b.get_mpz_t(), MPFR_RNDN);
  return out;
}

}  // namespace

ResonanceCombo resonance_combo(const BigReal& omega, const BigReal& h, int m, const BigReal& dw) {
  if (m < 0) throw DomainError("resonance_combo: degree must be >= 0");
  if (!(dw.sign() > 0)) throw DomainError("resonance_combo: dw must be positive");
  const mpfr_prec_t bits = omega.bits();
  ResonanceCombo out;
  BigReal scale = pow_big(dw, -m);
  out.overflow_warning = scale > BigReal::pow2(static_cast<long>(bits) / 2, bits);
  BigReal phase = h - BigReal(m, bits) * BigReal::pi(bits) / BigReal(2L, bits);
  for (int n = 0; n <= m; ++n) {
    BigReal c = scale * binomial_big(m, n, bits);
    if ((m - n) % 2 == 1) c = -c;
    out.waves.waves.push_back(Wave{c, omega + BigReal(n, bits) * dw, phase});
  }
  return out;
}

ResonanceCombo polynomial_combo(int m0, const std::vector<BigReal>& poly_coeffs,
                                const BigReal& dw) {
  if (m0 < 1) throw DomainError("polynomial_combo: M0 must be >= 1");
  if (!(dw.sign() > 0)) throw DomainError("polynomial_combo: dw must be positive");
  const int deg = 2 * m0 - 1;
  if (static_cast<int>(poly_coeffs.size()) > deg + 1) {
    throw DomainError("polynomial_combo: target degree exceeds 2 M0 - 1");
  }
  const mpfr_prec_t bits = dw.bits();
  const mpfr_prec_t work = bits * 2;

  // Solve for the shifted-monomial expansion: target(x) = sum_i a_i (x - x_i)^deg
  // over deg+1 equispaced shifts. The matrix holds the monomial coefficients
  // of each (x - x_i)^deg.
  const int count = deg + 1;
  std::vector<BigReal> shifts;
  for (int i = 0; i < count; ++i) {
    shifts.push_back(BigReal(i, work) / BigReal(count, work));
  }
  Mat mat(static_cast<std::size_t>(count), static_cast<std::size_t>(count), work);
  for (int j = 0; j <= deg; ++j) {      // row: coefficient of x^j
    for (int i = 0; i < count; ++i) {   // column: shift index
      BigReal coeff = binomial_big(deg, j, work) * pow_big(-shifts[static_cast<std::size_t>(i)], deg - j);
      mat.at(static_cast<std::size_t>(j), static_cast<std::size_t>(i)) = coeff;
    }
  }
  BigReal cond = condition_estimate(mat);
  if (cond > BigReal::pow2(static_cast<long>(bits) / 4, work)) {
    throw IllConditioned("polynomial_combo: shifted-monomial solve condition " + cond.decimal(4));
  }
  std::vector<BigReal> rhs(static_cast<std::size_t>(count), BigReal(0L, work));
  for (std::size_t j = 0; j < poly_coeffs.size(); ++j) rhs[j] = poly_coeffs[j].round_to(work);
  std::vector<BigReal> a;
  if (!solve_linear(mat, rhs, a)) {
    throw IllConditioned("polynomial_combo: singular shifted-monomial system");
  }

  // sin^(2k+1)(u) = 4^-k sum_j (-1)^j C(2k+1, k-j) sin((2j+1) u), so each
  // shifted monomial contributes the same M0 frequencies (2j+1) dw with
  // shift-dependent phases; per frequency the shifts collapse into a single
  // wave by phasor addition.
  const int k = m0 - 1;
  ResonanceCombo out;
  BigReal scale = pow_big(dw, -deg) / BigReal::pow2(2L * k, work);
  out.overflow_warning = scale > BigReal::pow2(static_cast<long>(bits) / 2, work);
  for (int j = 0; j <= k; ++j) {
    BigReal freq = BigReal(2 * j + 1, work) * dw;
    BigReal kj = scale * binomial_big(deg, k - j, work);
    if (j % 2 == 1) kj = -kj;
    BigComplex phasor;
    for (int i = 0; i < count; ++i) {
      BigReal phi = -freq * shifts[static_cast<std::size_t>(i)];
      phasor += a[static_cast<std::size_t>(i)] * unit_circle(phi);
    }
    BigReal amp = kj * phasor.abs();
    BigReal phase = phasor.is_zero() ? BigReal(0L, work) : phasor.arg();
    out.waves.waves.push_back(
        Wave{amp.round_to(bits), freq.round_to(bits), phase.round_to(bits)});
  }
  return out;
}

BigReal sup_distance(const RealSampler& f, const RealSampler& g, long n_points) {
  if (n_points < 2) throw DomainError("sup_distance: need at least 2 points");
  const mpfr_prec_t bits = precision::default_bits();
  BigReal denom(n_points - 1, bits);
  auto chunk_max = par::chunked<BigReal>(
      static_cast<std::size_t>(n_points), static_cast<std::size_t>(par::worker_count()) * 4,
      [&](std::size_t, std::size_t cb, std::size_t ce) {
        BigReal worst(0L, bits);
        for (std::size_t i = cb; i < ce; ++i) {
          BigReal x = BigReal(static_cast<long>(i), bits) / denom;
          worst = max_big(worst, abs(f(x) - g(x)));
        }
        return worst;
      });
  BigReal out(0L, bits);
  for (const BigReal& w : chunk_max) out = max_big(out, w);
  return out;
}

namespace {

struct RootPlan {
  BigComplex z;
  int effective_multiplicity;  // exponent of (T - z) in the operator
  bool real_root;
};

std::vector<BigComplex> poly_mul_linear(const std::vector<BigComplex>& p, const BigComplex& root) {
  // p(T) * (T - root)
  std::vector<BigComplex> out(p.size() + 1);
  for (std::size_t i = 0; i < p.size(); ++i) {
    out[i + 1] += p[i];
    out[i] -= root * p[i];
  }
  return out;
}

std::vector<BigComplex> poly_div_linear(const std::vector<BigComplex>& p, const BigComplex& root) {
  // exact quotient p(T) / (T - root); remainder discarded (zero by construction)
  const std::size_t n = p.size() - 1;
  std::vector<BigComplex> q(n);
  BigComplex carry = p[n];
  for (std::size_t j = n; j-- > 0;) {
    q[j] = carry;
    carry = p[j] + root * carry;
  }
  return q;
}

BigComplex apply_at_zero(const std::vector<BigComplex>& p, const std::vector<BigReal>& u) {
  BigComplex acc;
  for (std::size_t j = 0; j < p.size(); ++j) acc += p[j] * BigComplex(u[j]);
  return acc;
}

BigComplex apply_to_power_sequence(const std::vector<BigComplex>& p, const BigComplex& z,
                                   int deg, mpfr_prec_t bits) {
  // (P(T) v)_0 with v_s = s^deg z^s
  BigComplex acc;
  for (std::size_t j = 0; j < p.size(); ++j) {
    BigReal sj(static_cast<long>(j), bits);
    BigReal spow = deg == 0 ? BigReal(1L, bits) : pow_big(sj, deg);
    acc += p[j] * (spow * pow_big(z, static_cast<unsigned long>(j)));
  }
  return acc;
}

}  // namespace

RecoveryResult recover_coefficients(const RecoveryInstance& inst) {
  if (inst.roots.empty()) throw DomainError("recover_coefficients: no roots given");
  mpfr_prec_t bits = precision::kMinBits;
  for (const BigReal& u : inst.samples) bits = std::max(bits, u.bits());
  const BigReal one(1L, bits);
  const BigReal snap = BigReal::pow2(-static_cast<long>(bits) / 4, bits);

  // Classify roots, expand real +-1 to doubled degree budgets.
  std::vector<RootPlan> plans;
  int n_budget = 0;
  for (const RootSpec& r : inst.roots) {
    if (r.multiplicity < 1) throw DomainError("recover_coefficients: multiplicity must be >= 1");
    n_budget += r.multiplicity;
    BigComplex z = r.z;
    if (abs(z.abs() - one) > snap) {
      throw DomainError("recover_coefficients: root off the unit circle: " + z.to_string());
    }
    if (abs(z.im) <= snap) {
      const bool plus = z.re.sign() > 0;
      plans.push_back(RootPlan{BigComplex(BigReal(plus ? 1L : -1L, bits), BigReal(0L, bits)),
                               2 * r.multiplicity, true});
    } else if (z.im.sign() < 0) {
      throw DomainError("recover_coefficients: list nonreal roots with Im z > 0; conjugates "
                        "are implied");
    } else {
      plans.push_back(RootPlan{z, r.multiplicity, false});
    }
  }
  const long need = 2L * n_budget;
  if (static_cast<long>(inst.samples.size()) < need) {
    throw LengthError("recover_coefficients: need at least 2N = " + std::to_string(need) +
                      " samples, got " + std::to_string(inst.samples.size()));
  }
  // Pairwise separation (including against implied conjugates).
  std::vector<BigComplex> all;
  for (const RootPlan& p : plans) {
    all.push_back(p.z);
    if (!p.real_root) all.push_back(p.z.conj());
  }
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (std::size_t j = i + 1; j < all.size(); ++j) {
      if ((all[i] - all[j]).abs() < snap) {
        throw RankError("recover_coefficients: roots nearly collide");
      }
    }
  }

  // Full annihilating operator D(T) = prod (T - z)^mult (T - conj z)^mult.
  std::vector<BigComplex> op{BigComplex(one)};
  for (const RootPlan& p : plans) {
    for (int q = 0; q < p.effective_multiplicity; ++q) {
      op = poly_mul_linear(op, p.z);
      if (!p.real_root) op = poly_mul_linear(op, p.z.conj());
    }
  }

  std::vector<BigReal> u;
  u.reserve(inst.samples.size());
  for (const BigReal& s : inst.samples) u.push_back(s.round_to(bits));

  RecoveryResult out;
  for (const RootPlan& p : plans) {
    std::vector<BigComplex> deflated = op;
    for (int q = 1; q <= p.effective_multiplicity; ++q) {
      deflated = poly_div_linear(deflated, p.z);
      const int deg = p.effective_multiplicity - q;
      BigComplex gain = apply_to_power_sequence(deflated, p.z, deg, bits);
      if (gain.abs() < snap) {
        throw RankError("recover_coefficients: vanishing deflation gain");
      }
      BigComplex b = apply_at_zero(deflated, u) / gain;
      if (p.real_root) b.im = BigReal(0L, bits);
      // Subtract the recovered component (plus its conjugate for nonreal z).
      for (std::size_t s = 0; s < u.size(); ++s) {
        BigReal spow = deg == 0 ? one : pow_big(BigReal(static_cast<long>(s), bits), deg);
        BigComplex zs = pow_big(p.z, static_cast<unsigned long>(s));
        BigComplex term = b * (spow * zs);
        u[s] -= p.real_root ? term.re : BigReal(2L, bits) * term.re;
      }
      out.components.push_back(RecoveredComponent{p.z, deg, b, p.real_root});
    }
  }

  BigReal resid(0L, bits);
  for (const BigReal& v : u) resid = max_big(resid, abs(v));
  out.roundtrip_residual = resid;
  return out;
}

std::vector<BigReal> synthesize_samples(const std::vector<RecoveredComponent>& components,
                                        long len) {
  mpfr_prec_t bits = precision::default_bits();
  for (const RecoveredComponent& c : components) bits = std::max(bits, c.coeff.bits());
  std::vector<BigReal> out;
  out.reserve(static_cast<std::size_t>(len));
  for (long s = 0; s < len; ++s) {
    BigReal acc(0L, bits);
    for (const RecoveredComponent& c : components) {
      BigReal spow = c.degree == 0 ? BigReal(1L, bits) : pow_big(BigReal(s, bits), c.degree);
      BigComplex term = c.coeff * (spow * pow_big(c.z, static_cast<unsigned long>(s)));
      acc += c.real_root ? term.re : BigReal(2L, bits) * term.re;
    }
    out.push_back(acc);
  }
  return out;
}

Certificate derivative_bound_check(const SineSumParams& params, int n, const BigReal& omega_cap,
                                   long n_points) {
  if (n < 1) throw DomainError("derivative_bound_check: order must be >= 1");
  const mpfr_prec_t bits = omega_cap.bits();
  for (const Wave& w : params.waves) {
    if (abs(w.omega) > omega_cap) {
      throw DomainError("derivative_bound_check: frequency exceeds the stated band");
    }
  }
  // M counts complex exponentials: two per real wave.
  const int m_count = 2 * static_cast<int>(params.waves.size());
  const long outer = static_cast<long>(m_count) * (m_count + 1);
  const long inner = static_cast<long>(m_count) * std::max<long>(n, m_count - 1);
  BigReal bound = BigReal::pow2(outer, bits) * pow_big(BigReal(1L, bits) + omega_cap, inner);

  BigReal denom(n_points - 1, bits);
  struct Pair {
    BigReal max_f{0L}, max_fn{0L};
  };
  auto chunks = par::chunked<Pair>(
      static_cast<std::size_t>(n_points), static_cast<std::size_t>(par::worker_count()) * 4,
      [&](std::size_t, std::size_t cb, std::size_t ce) {
        Pair p;
        for (std::size_t i = cb; i < ce; ++i) {
          BigReal x = BigReal(static_cast<long>(i), bits) / denom;
          p.max_f = max_big(p.max_f, abs(sine_sum_derivative(params, x, 0)));
          p.max_fn = max_big(p.max_fn, abs(sine_sum_derivative(params, x, n)));
        }
        return p;
      });
  BigReal max_f(0L, bits), max_fn(0L, bits);
  for (const Pair& p : chunks) {
    max_f = max_big(max_f, p.max_f);
    max_fn = max_big(max_fn, p.max_fn);
  }
  BigReal ratio = max_f.is_zero() ? BigReal(0L, bits) : max_fn / max_f;
  return Certificate::make(CertificateKind::derivative_bound, ratio / bound, BigReal(1L, bits),
                           "M=" + std::to_string(m_count) + " n=" + std::to_string(n) +
                               " ratio=" + ratio.decimal(6) + " bound=" + bound.decimal(6));
}

LimitPathKind limit_path_kind_from_name(const std::string& name) {
  if (name == "affine-sigma") return LimitPathKind::affine_sigma;
  if (name == "monomial") return LimitPathKind::monomial;
  if (name == "sine-of-monomial") return LimitPathKind::sine_of_monomial;
  throw UsageError("unknown limit path kind: " + name);
}

const char* limit_path_kind_name(LimitPathKind k) {
  switch (k) {
    case LimitPathKind::affine_sigma: return "affine-sigma";
    case LimitPathKind::monomial: return "monomial";
    case LimitPathKind::sine_of_monomial: return "sine-of-monomial";
  }
  return "?";
}

SigmaSineParams sigma_limit_path(LimitPathKind kind, SigmaKind sigma,
                                 const std::vector<BigReal>& sigma_poly_coeffs,
                                 const LimitPathTarget& target, const BigReal& t) {
  const mpfr_prec_t bits = t.bits();
  if (!(t.sign() > 0) || t > BigReal(1L, bits)) {
    throw DomainError("sigma_limit_path: t must lie in (0, 1]");
  }
  SigmaSineParams out;
  out.sigma = sigma;
  out.poly_coeffs = sigma_poly_coeffs;

  switch (kind) {
    case LimitPathKind::affine_sigma: {
      if (target.a.is_zero()) throw DomainError("sigma_limit_path: target a must be nonzero");
      if (abs(target.b) > BigReal(1L, bits)) {
        throw DomainError("sigma_limit_path: target b must lie in [-1, 1]");
      }
      out.c = target.a / t;
      out.omega = t;
      out.b = target.b;
      out.h = target.c * t / target.a;
      return out;
    }
    case LimitPathKind::monomial: {
      const int r = sigma_order_at_zero(sigma, sigma_poly_coeffs);
      if (r != target.r) {
        throw DomainError("sigma_limit_path: target exponent r=" + std::to_string(target.r) +
                          " does not match sigma's order at 0 (r=" + std::to_string(r) + ")");
      }
      if (target.ar.is_zero()) throw DomainError("sigma_limit_path: target ar must be nonzero");
      BigReal fact(1L, bits);
      for (int i = 2; i <= r; ++i) fact *= BigReal(i, bits);
      BigReal sr = sigma_derivative_at_zero(sigma, sigma_poly_coeffs, r).round_to(bits) / fact;
      out.b = t;
      out.omega = t;
      out.c = target.ar / (sr * pow_big(t, r + 1));
      out.h = target.a0 / out.c - out.omega * sigma_value_at_zero(sigma, sigma_poly_coeffs).round_to(bits);
      return out;
    }
    case LimitPathKind::sine_of_monomial: {
      const int r = sigma_order_at_zero(sigma, sigma_poly_coeffs);
      if (r != target.r) {
        throw DomainError("sigma_limit_path: target exponent r=" + std::to_string(target.r) +
                          " does not match sigma's order at 0 (r=" + std::to_string(r) + ")");
      }
      if (target.ar.is_zero()) throw DomainError("sigma_limit_path: target ar must be nonzero");
      BigReal fact(1L, bits);
      for (int i = 2; i <= r; ++i) fact *= BigReal(i, bits);
      BigReal sr = sigma_derivative_at_zero(sigma, sigma_poly_coeffs, r).round_to(bits) / fact;
      out.c = target.c;
      out.b = t;
      out.omega = target.ar / (sr * pow_big(t, r));
      out.h = target.a0 - out.omega * sigma_value_at_zero(sigma, sigma_poly_coeffs).round_to(bits);
      return out;
    }
  }
  throw InternalError("sigma_limit_path: bad kind");
}

RealSampler limit_path_target_fn(LimitPathKind kind, SigmaKind sigma,
                                 const std::vector<BigReal>& sigma_poly_coeffs,
                                 const LimitPathTarget& target) {
  switch (kind) {
    case LimitPathKind::affine_sigma:
      return [=](const BigReal& x) {
        return target.a * sigma_eval(sigma, sigma_poly_coeffs, target.b * x) + target.c;
      };
    case LimitPathKind::monomial:
      return [=](const BigReal& x) { return target.a0 + target.ar * pow_big(x, target.r); };
    case LimitPathKind::sine_of_monomial:
      return [=](const BigReal& x) {
        return target.c * sin_big(target.a0 + target.ar * pow_big(x, target.r));
      };
  }
  throw InternalError("limit_path_target_fn: bad kind");
}

}  // namespace xpr
