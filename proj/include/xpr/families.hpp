#pragma once

#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "xpr/bigcomplex.hpp"
#include "xpr/bigreal.hpp"

namespace xpr {

/// One sine wave c * sin(omega * x + h).
struct Wave {
  BigReal c, omega, h;
};

/// Fixed-size linear combination of sine waves (single hidden sin layer).
struct SineSumParams {
  std::vector<Wave> waves;
};

/// c * sin(omega * x), without phase.
struct SingleSineParams {
  BigReal c, omega;
};

/// Term of a multivariate polynomial: coeff * prod_i z_i^exps[i].
struct MultiTerm {
  BigComplex coeff;
  std::vector<unsigned> exps;
};

struct MultiPoly {
  unsigned nvars = 0;
  std::vector<MultiTerm> terms;

  BigComplex eval(const std::vector<BigComplex>& z) const;
  unsigned total_degree() const;
};

/// g(x) = Q(x, e^{P_1(x)}, ..., e^{P_N(x)}) with complex polynomials P_n and
/// Q restricted to an explicit rational expression num/den in N+1 variables.
struct PolyExpAlgParams {
  std::vector<std::vector<BigComplex>> polys;  // P_n coefficients, ascending degree
  MultiPoly q_num, q_den;
};

enum class SigmaKind { sigmoid, tanh, gaussian, sin, poly };

/// f(x) = c * sin(omega * sigma(b * x) + h), b in [-1, 1].
struct SigmaSineParams {
  SigmaKind sigma = SigmaKind::sigmoid;
  std::vector<BigReal> poly_coeffs;  // only for SigmaKind::poly, ascending degree
  BigReal c, omega, b, h;
};

/// f(x) = c * sin(g(x)) + h with g a sine sum (two hidden sin layers, one
/// neuron in the second layer).
struct SineOfSineParams {
  BigReal outer_c, outer_h;
  SineSumParams inner;
};

using FamilyParams =
    std::variant<SingleSineParams, SineSumParams, PolyExpAlgParams, SigmaSineParams,
                 SineOfSineParams>;

const char* family_name(const FamilyParams& p);

/// Number of free real parameters of a family member.
std::size_t parameter_count(const FamilyParams& p);

BigReal sigma_eval(SigmaKind kind, const std::vector<BigReal>& poly_coeffs, const BigReal& u);
/// Least m > 0 with sigma^(m)(0) != 0 (throws DomainError if sigma is constant).
int sigma_order_at_zero(SigmaKind kind, const std::vector<BigReal>& poly_coeffs);
/// sigma^(m)(0).
BigReal sigma_derivative_at_zero(SigmaKind kind, const std::vector<BigReal>& poly_coeffs, int m);
BigReal sigma_value_at_zero(SigmaKind kind, const std::vector<BigReal>& poly_coeffs);
SigmaKind sigma_kind_from_name(const std::string& name);
const char* sigma_name(SigmaKind kind);

struct EvalOptions {
  bool domain_restricted = false;  // require x in [0, 1]
  mpfr_prec_t bits = 0;            // 0: inherit from x
};

/// Value of the family member at x. Raises DivisionByZero when Q's
/// denominator vanishes, DomainError for b outside [-1,1] or for
/// domain-restricted x outside [0,1].
BigReal evaluate(const FamilyParams& p, const BigReal& x, const EvalOptions& opt = {});

BigReal evaluate(const SingleSineParams& p, const BigReal& x);
BigReal evaluate(const SineSumParams& p, const BigReal& x);
BigReal evaluate(const PolyExpAlgParams& p, const BigReal& x);
BigReal evaluate(const SigmaSineParams& p, const BigReal& x);
BigReal evaluate(const SineOfSineParams& p, const BigReal& x);

/// Complex value of Q(x, e^{P_1(x)}, ...) before the realness validation.
BigComplex evaluate_complex(const PolyExpAlgParams& p, const BigReal& x);

/// n-th derivative of a sine sum (closed form; used by the derivative-bound
/// check and the fit oracles).
BigReal sine_sum_derivative(const SineSumParams& p, const BigReal& x, int n);

/// Uniform samples of a function on the progression a, a+h, ..., a+m*h.
struct SampleGrid {
  BigReal a, h;
  long m = 0;  // values.size() == m + 1
  std::vector<BigComplex> values;
  bool real_valued = true;

  BigReal x_at(long k) const { return a + BigReal(k) * h; }
  const BigComplex& value(long k) const { return values.at(static_cast<std::size_t>(k)); }
  BigReal real_value(long k) const { return values.at(static_cast<std::size_t>(k)).re; }
};

using RealSampler = std::function<BigReal(const BigReal&)>;

/// Samples a family member; evaluation errors are rethrown with the offending
/// index attached. Grid points are computed in parallel with deterministic
/// output ordering.
SampleGrid sample(const FamilyParams& p, const BigReal& a, const BigReal& h, long m,
                  const EvalOptions& opt = {});

/// Same for an arbitrary real-valued sampler.
SampleGrid sample_fn(const RealSampler& f, const BigReal& a, const BigReal& h, long m);

}  // namespace xpr
