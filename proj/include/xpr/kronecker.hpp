#pragma once

#include <optional>
#include <string>
#include <vector>

#include "xpr/bigreal.hpp"
#include "xpr/families.hpp"

namespace xpr {

/// Simultaneous inhomogeneous approximation instance: find a frequency omega
/// with omega * x_k close to theta_k on the circle, for all k.
struct DiophantineInstance {
  std::vector<BigReal> points;  // x_k in [0, 1], pairwise distinct
  std::vector<BigReal> angles;  // theta_k in [0, 2pi)
  BigReal eps;                  // circle-distance tolerance, > 0
  BigReal omega_max = BigReal(1e8);
};

/// Integer relation sum lambda_k x_k ~ 0 proving the orbit is confined to a
/// subtorus; `offset` is the (centered) value of sum lambda_k theta_k, which
/// must be near 0 mod 2pi for the target to be reachable.
struct SubtorusWitness {
  std::vector<long> relation;
  BigReal offset;
  BigReal bound;  // reachability requires |offset| <= bound
};

enum class OrbitFailure { budget_exhausted, subtorus, period_exhausted };

const char* orbit_failure_name(OrbitFailure f);

struct OrbitSolution {
  BigReal omega;
  std::vector<BigReal> residuals;  // circle distances at omega
  bool verified = false;           // re-verified at 2x precision
  std::string method;              // "analytic" | "lattice" | "grid"
};

struct OrbitResult {
  std::optional<OrbitSolution> solution;
  OrbitFailure failure = OrbitFailure::budget_exhausted;
  std::optional<SubtorusWitness> witness;
  std::optional<BigReal> scanned_period;  // set when a full period was ruled out

  bool found() const { return solution.has_value(); }
};

struct SolveOptions {
  bool enable_lattice = true;
  bool enable_scan = true;
  long long max_scan_steps = 50'000'000;
  long relation_bound = 1000;  // L used by the automatic dependence pre-check
};

/// Best-effort orbit solver: lattice reduction (basis reduction on the
/// embedding lattice with delta = 99/100, nearest-plane rounding) with a
/// dense grid scan at step eps/(2pi max x_k) as fallback. Smallest |omega|
/// satisfying the post-condition wins; ties prefer the positive sign.
OrbitResult solve_orbit(const DiophantineInstance& inst, const SolveOptions& opts = {});

/// Circle-distance residuals of a candidate omega at the given precision.
std::vector<BigReal> orbit_residuals(const std::vector<BigReal>& points,
                                     const std::vector<BigReal>& angles, const BigReal& omega,
                                     mpfr_prec_t bits);

/// True when all residuals at `bits` precision are strictly below eps.
bool verify_orbit(const DiophantineInstance& inst, const BigReal& omega, mpfr_prec_t bits);

struct IndependenceResult {
  bool independent = false;    // no relation with |lambda| <= bound found
  bool certified = false;      // lattice gap proves there is none
  std::vector<long> relation;  // a witness when !independent
  BigReal residual;            // |sum lambda x| of the witness
};

/// Tests sum lambda_k x_k = 0 within 2^(-bits/2) over integer |lambda_k| <=
/// bound, by integer-relation lattice search.
IndependenceResult rational_independence_check(const std::vector<BigReal>& points, long bound);

struct SineFit {
  BigReal c, omega;
  std::vector<BigReal> residuals;  // |c sin(omega x_k) - y_k|
  bool verified = false;
  std::string method;
};

struct SineFitResult {
  std::optional<SineFit> fit;
  OrbitResult orbit;  // failure details when !fit

  bool found() const { return fit.has_value(); }
};

/// Fits c*sin(omega x) through (x_k, y_k) within eps: c = max|y_k| + 1,
/// targets converted to angles via arcsin, then solve_orbit.
SineFitResult fit_single_sine(const std::vector<BigReal>& points,
                              const std::vector<BigReal>& targets, const BigReal& eps,
                              const SolveOptions& opts = {});

struct ShatterInstance {
  std::vector<BigReal> points;
  std::vector<int> pattern;  // +1 / -1 per point
  BigReal margin;            // delta > 0
};

struct ShatterResult {
  std::optional<SingleSineParams> params;  // c sin(omega x) realizing the signs
  OrbitResult detail;

  bool found() const { return params.has_value(); }
};

/// Realizes a sign pattern with margins: c sin(omega x_k) > delta where the
/// pattern is +, < -delta where -.
ShatterResult shatter(const ShatterInstance& inst, const SolveOptions& opts = {});

/// |g(u) + g(u+2v) - 2 g(u+v) cos(omega v)| for g(x) = c sin(omega x + h);
/// identically zero for exact arithmetic.
BigReal three_term_identity_residual(const Wave& w, const BigReal& u, const BigReal& v);

}  // namespace xpr
