#pragma once

#include <optional>
#include <vector>

#include "xpr/bigcomplex.hpp"
#include "xpr/certify.hpp"
#include "xpr/families.hpp"

namespace xpr {

struct ResonanceCombo {
  SineSumParams waves;     // m+1 waves approximating x^m sin(omega x + h)
  bool overflow_warning = false;  // (dw)^-m pushed past the precision budget
};

/// Finite-difference-in-frequency combination: m+1 waves at frequencies
/// omega + n*dw, amplitudes (dw)^-m (-1)^(m-n) C(m,n), phase h - pi m/2.
/// Sup-distance to x^m sin(omega x + h) on [0,1] is O(dw).
ResonanceCombo resonance_combo(const BigReal& omega, const BigReal& h, int m, const BigReal& dw);

/// M0 waves at frequencies (2s-1)*dw approximating a polynomial of degree
/// <= 2 M0 - 1 on [0,1] with O(dw) error. Coefficients are found by solving
/// in a basis of shifted odd monomials (x - x_i)^(2M0-1) at extended
/// precision; raises IllConditioned when that solve is too ill-posed.
ResonanceCombo polynomial_combo(int m0, const std::vector<BigReal>& poly_coeffs,
                                const BigReal& dw);

/// Max of |f - g| over a uniform n-point grid on [0,1]; a lower bound on the
/// true sup-norm. Grid chunks evaluate in parallel.
BigReal sup_distance(const RealSampler& f, const RealSampler& g, long n_points);

/// Root of the sample expansion: either z = +-1 (real, coefficients of
/// degrees 0..2*multiplicity-1) or a nonreal unit-circle z with Im z > 0
/// (complex coefficients of degrees 0..multiplicity-1; the conjugate root is
/// implied).
struct RootSpec {
  BigComplex z;
  int multiplicity = 1;
};

struct RecoveryInstance {
  std::vector<BigReal> samples;  // u_s, s = 0..len-1, len >= 2N
  std::vector<RootSpec> roots;
};

struct RecoveredComponent {
  BigComplex z;
  int degree = 0;              // power of s
  BigComplex coeff;            // b; real for z = +-1
  bool real_root = false;
};

struct RecoveryResult {
  std::vector<RecoveredComponent> components;
  BigReal roundtrip_residual;  // max |synthesized - input|
};

/// Coefficient recovery by deflated difference operators D/(T-z)^q applied
/// top degree first, subtracting each recovered component before the next.
RecoveryResult recover_coefficients(const RecoveryInstance& inst);

/// Synthesizes u_s = sum over components of b s^deg z^s (+ conjugate for
/// nonreal roots) for s = 0..len-1.
std::vector<BigReal> synthesize_samples(const std::vector<RecoveredComponent>& components,
                                        long len);

/// Checks max |f^(n)| <= 2^(M(M+1)) (1+Omega)^(M max(n, M-1)) max |f| for a
/// band-limited sine sum, with M = 2 * wave count (the complex-exponential
/// count). Ratio and bound are measured on a dense grid; the certificate's
/// residual is ratio/bound with tolerance 1.
Certificate derivative_bound_check(const SineSumParams& params, int n, const BigReal& omega_cap,
                                   long n_points = 2000);

enum class LimitPathKind { affine_sigma, monomial, sine_of_monomial };

LimitPathKind limit_path_kind_from_name(const std::string& name);
const char* limit_path_kind_name(LimitPathKind k);

/// Target of a limit path; which fields matter depends on the kind:
///   affine_sigma:      a * sigma(b x) + c
///   monomial:          a0 + ar x^r      (r must equal sigma's order at 0)
///   sine_of_monomial:  c * sin(a0 + ar x^r)
struct LimitPathTarget {
  BigReal a, b, c;    // affine_sigma
  BigReal a0, ar;     // monomial / sine_of_monomial
  int r = 1;
};

/// Family member at path parameter t in (0, 1] whose sup-distance to the
/// target decreases to 0 as t -> 0 (O(t)).
SigmaSineParams sigma_limit_path(LimitPathKind kind, SigmaKind sigma,
                                 const std::vector<BigReal>& sigma_poly_coeffs,
                                 const LimitPathTarget& target, const BigReal& t);

/// The target function itself, for measuring path distances.
RealSampler limit_path_target_fn(LimitPathKind kind, SigmaKind sigma,
                                 const std::vector<BigReal>& sigma_poly_coeffs,
                                 const LimitPathTarget& target);

}  // namespace xpr
