#include "xpr/families.hpp"

#include <optional>

#include "xpr/errors.hpp"
#include "xpr/parallel.hpp"

namespace xpr {

BigComplex MultiPoly::eval(const std::vector<BigComplex>& z) const {
  if (z.size() != nvars) throw InternalError("MultiPoly: variable count mismatch");
  BigComplex acc;
  for (const MultiTerm& t : terms) {
    BigComplex mono = t.coeff;
    for (unsigned i = 0; i < nvars; ++i) {
      if (t.exps.size() > i && t.exps[i] > 0) mono *= pow_big(z[i], t.exps[i]);
    }
    acc += mono;
  }
  return acc;
}

unsigned MultiPoly::total_degree() const {
  unsigned d = 0;
  for (const MultiTerm& t : terms) {
    unsigned s = 0;
    for (unsigned e : t.exps) s += e;
    d = std::max(d, s);
  }
  return d;
}

const char* family_name(const FamilyParams& p) {
  switch (p.index()) {
    case 0: return "H1";
    case 1: return "H2";
    case 2: return "H3";
    case 3: return "Hsigma";
    case 4: return "H5";
  }
  return "?";
}

std::size_t parameter_count(const FamilyParams& p) {
  return std::visit(
      [](const auto& v) -> std::size_t {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, SingleSineParams>) {
          return 2;
        } else if constexpr (std::is_same_v<T, SineSumParams>) {
          return 3 * v.waves.size();
        } else if constexpr (std::is_same_v<T, PolyExpAlgParams>) {
          std::size_t n = 0;
          for (const auto& poly : v.polys) n += 2 * poly.size();
          return n;
        } else if constexpr (std::is_same_v<T, SigmaSineParams>) {
          return 4;
        } else {
          return 2 + 3 * v.inner.waves.size();
        }
      },
      p);
}

BigReal sigma_eval(SigmaKind kind, const std::vector<BigReal>& poly_coeffs, const BigReal& u) {
  switch (kind) {
    case SigmaKind::sigmoid: {
      BigReal one(1L, u.bits());
      return one / (one + exp_big(-u));
    }
    case SigmaKind::tanh:
      return tanh_big(u);
    case SigmaKind::gaussian:
      return exp_big(-(u * u));
    case SigmaKind::sin:
      return sin_big(u);
    case SigmaKind::poly: {
      BigReal acc(0L, u.bits());
      for (std::size_t i = poly_coeffs.size(); i-- > 0;) acc = acc * u + poly_coeffs[i];
      return acc;
    }
  }
  throw InternalError("sigma_eval: bad kind");
}

BigReal sigma_value_at_zero(SigmaKind kind, const std::vector<BigReal>& poly_coeffs) {
  return sigma_eval(kind, poly_coeffs, BigReal(0L));
}

int sigma_order_at_zero(SigmaKind kind, const std::vector<BigReal>& poly_coeffs) {
  switch (kind) {
    case SigmaKind::sigmoid: return 1;  // sigma'(0) = 1/4
    case SigmaKind::tanh: return 1;
    case SigmaKind::gaussian: return 2;  // sigma''(0) = -2
    case SigmaKind::sin: return 1;
    case SigmaKind::poly:
      for (std::size_t m = 1; m < poly_coeffs.size(); ++m) {
        if (!poly_coeffs[m].is_zero()) return static_cast<int>(m);
      }
      throw DomainError("sigma is constant: no nonzero derivative at 0");
  }
  throw InternalError("sigma_order_at_zero: bad kind");
}

BigReal sigma_derivative_at_zero(SigmaKind kind, const std::vector<BigReal>& poly_coeffs, int m) {
  const mpfr_prec_t bits = precision::default_bits();
  switch (kind) {
    case SigmaKind::sigmoid:
      if (m == 0) return BigReal(0.5, bits);
      if (m == 1) return BigReal(0.25, bits);
      if (m == 2) return BigReal(0L, bits);
      break;
    case SigmaKind::tanh:
      if (m == 0) return BigReal(0L, bits);
      if (m == 1) return BigReal(1L, bits);
      break;
    case SigmaKind::gaussian:
      if (m == 0) return BigReal(1L, bits);
      if (m == 1) return BigReal(0L, bits);
      if (m == 2) return BigReal(-2L, bits);
      break;
    case SigmaKind::sin:
      if (m == 0) return BigReal(0L, bits);
      if (m == 1) return BigReal(1L, bits);
      break;
    case SigmaKind::poly: {
      if (m < static_cast<int>(poly_coeffs.size())) {
        BigReal fact(1L, bits);
        for (int i = 2; i <= m; ++i) fact *= BigReal(static_cast<long>(i), bits);
        return fact * poly_coeffs[static_cast<std::size_t>(m)];
      }
      return BigReal(0L, bits);
    }
  }
  throw DomainError("sigma derivative at 0 not tabulated for this order");
}

SigmaKind sigma_kind_from_name(const std::string& name) {
  if (name == "sigmoid") return SigmaKind::sigmoid;
  if (name == "tanh") return SigmaKind::tanh;
  if (name == "gaussian") return SigmaKind::gaussian;
  if (name == "sin") return SigmaKind::sin;
  if (name == "poly") return SigmaKind::poly;
  throw UsageError("unknown sigma kind: " + name);
}

const char* sigma_name(SigmaKind kind) {
  switch (kind) {
    case SigmaKind::sigmoid: return "sigmoid";
    case SigmaKind::tanh: return "tanh";
    case SigmaKind::gaussian: return "gaussian";
    case SigmaKind::sin: return "sin";
    case SigmaKind::poly: return "poly";
  }
  return "?";
}

BigReal evaluate(const SingleSineParams& p, const BigReal& x) {
  return p.c * sin_big(p.omega * x);
}

BigReal evaluate(const SineSumParams& p, const BigReal& x) {
  if (p.waves.empty()) throw DomainError("sine sum needs at least one wave");
  BigReal acc(0L, std::max(x.bits(), p.waves[0].c.bits()));
  for (const Wave& w : p.waves) acc += w.c * sin_big(w.omega * x + w.h);
  return acc;
}

BigComplex evaluate_complex(const PolyExpAlgParams& p, const BigReal& x) {
  const std::size_t n = p.polys.size();
  if (p.q_num.nvars != n + 1 || p.q_den.nvars != n + 1) {
    throw DomainError("Q must have N+1 variables");
  }
  std::vector<BigComplex> z;
  z.reserve(n + 1);
  z.emplace_back(x);
  for (const auto& poly : p.polys) {
    BigComplex acc;
    for (std::size_t i = poly.size(); i-- > 0;) acc = acc * BigComplex(x) + poly[i];
    z.push_back(exp_big(acc));
  }
  BigComplex den = p.q_den.eval(z);
  if (den.abs() < BigReal::pow2(-static_cast<long>(x.bits()) / 2, x.bits())) {
    throw DivisionByZero("Q denominator vanishes at x = " + x.decimal(8));
  }
  return p.q_num.eval(z) / den;
}

BigReal evaluate(const PolyExpAlgParams& p, const BigReal& x) {
  BigComplex v = evaluate_complex(p, x);
  BigReal scale = max_big(BigReal(1L, x.bits()), abs(v.re));
  if (abs(v.im) > BigReal::pow2(-64, x.bits()) * scale) {
    throw DomainError("H3 value has non-negligible imaginary part at x = " + x.decimal(8) +
                      " (im = " + v.im.decimal(6) + ")");
  }
  return v.re;
}

BigReal evaluate(const SigmaSineParams& p, const BigReal& x) {
  BigReal one(1L, p.b.bits());
  if (p.b < -one || p.b > one) throw DomainError("sigma-sine parameter b outside [-1, 1]");
  return p.c * sin_big(p.omega * sigma_eval(p.sigma, p.poly_coeffs, p.b * x) + p.h);
}

BigReal evaluate(const SineOfSineParams& p, const BigReal& x) {
  return p.outer_c * sin_big(evaluate(p.inner, x)) + p.outer_h;
}

BigReal evaluate(const FamilyParams& p, const BigReal& x, const EvalOptions& opt) {
  BigReal xv = opt.bits > 0 ? x.round_to(opt.bits) : x;
  if (opt.domain_restricted) {
    if (xv.sign() < 0 || xv > BigReal(1L, xv.bits())) {
      throw DomainError("x outside [0, 1] under domain-restricted evaluation");
    }
  }
  return std::visit([&](const auto& v) { return evaluate(v, xv); }, p);
}

BigReal sine_sum_derivative(const SineSumParams& p, const BigReal& x, int n) {
  if (n < 0) throw DomainError("derivative order must be >= 0");
  BigReal acc(0L, x.bits());
  BigReal half_pi = BigReal::pi(x.bits() + 32) / BigReal(2L);
  for (const Wave& w : p.waves) {
    // d^n/dx^n sin(wx + h) = w^n sin(wx + h + n pi/2)
    acc += w.c * pow_big(w.omega, n) * sin_big(w.omega * x + w.h + BigReal(static_cast<long>(n)) * half_pi);
  }
  return acc;
}

namespace {

SampleGrid sample_impl(const std::function<BigComplex(long)>& value_at, const BigReal& a,
                       const BigReal& h, long m, bool real_valued) {
  if (m < 0) throw LengthError("sample: m must be >= 0");
  if (m > 0 && !(h.sign() > 0)) throw DomainError("sample: step h must be positive");
  SampleGrid grid;
  grid.a = a;
  grid.h = h;
  grid.m = m;
  grid.real_valued = real_valued;
  grid.values.assign(static_cast<std::size_t>(m) + 1, BigComplex());

  struct ChunkError {
    std::optional<std::string> message;
  };
  auto errors = par::chunked<ChunkError>(
      static_cast<std::size_t>(m) + 1, static_cast<std::size_t>(par::worker_count()) * 4,
      [&](std::size_t, std::size_t begin, std::size_t end) {
        ChunkError err;
        for (std::size_t k = begin; k < end; ++k) {
          try {
            grid.values[k] = value_at(static_cast<long>(k));
          } catch (const Error& e) {
            if (!err.message) {
              err.message = "at grid index " + std::to_string(k) + ": " + e.what();
            }
          }
        }
        return err;
      });
  for (const auto& err : errors) {
    if (err.message) throw DomainError(*err.message);
  }
  return grid;
}

}  // namespace

SampleGrid sample(const FamilyParams& p, const BigReal& a, const BigReal& h, long m,
                  const EvalOptions& opt) {
  if (m < 1) throw LengthError("sample: m must be >= 1");
  const bool is_h3 = std::holds_alternative<PolyExpAlgParams>(p);
  return sample_impl(
      [&](long k) -> BigComplex {
        BigReal x = a + BigReal(k) * h;
        if (is_h3) {
          // Keep the complex value; realness is validated by evaluate() but
          // certificates may want the full complex sample.
          BigReal r = evaluate(p, x, opt);
          return BigComplex(r);
        }
        return BigComplex(evaluate(p, x, opt));
      },
      a, h, m, true);
}

SampleGrid sample_fn(const RealSampler& f, const BigReal& a, const BigReal& h, long m) {
  return sample_impl([&](long k) { return BigComplex(f(a + BigReal(k) * h)); }, a, h, m, true);
}

}  // namespace xpr
