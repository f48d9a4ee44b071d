#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "xpr/bigreal.hpp"
#include "xpr/certify.hpp"
#include "xpr/families.hpp"

namespace xpr {

enum class FitVerdict { achieved, floor_detected, budget_exhausted };

const char* fit_verdict_name(FitVerdict v);

struct FitInstance {
  FamilyParams shape;          // family kind and structural sizes; values ignored
  std::vector<BigReal> xs;     // in [0,1], pairwise distinct
  std::vector<BigReal> ys;
  BigReal eps;                 // target max residual
  int restarts = 64;
  int max_iterations = 200;    // damped Gauss-Newton steps per restart
};

struct FitReport {
  FamilyParams best;
  std::vector<BigReal> residuals;   // per point, |g(x_k) - y_k|
  BigReal max_residual;
  int restarts_used = 0;
  FitVerdict verdict = FitVerdict::budget_exhausted;
  std::vector<BigReal> restart_best;  // best max-residual per restart, sorted ascending
};

/// Multi-start damped Gauss-Newton at fixed 128-bit precision (certificates
/// re-verify at full precision elsewhere). Deterministic given the seed;
/// restarts run concurrently and reduce by (residual, restart index).
FitReport fit_family(const FitInstance& inst, std::uint64_t seed);

struct ObstructionReport {
  FitReport fit;
  Certificate target_certificate;  // det certificate of the target values themselves
};

/// Fits an N-wave sine sum to targets on the progression u, u+v, ..., and
/// cross-checks the targets against the determinant certificate (alphas =
/// betas = (0, v, ..., 2N v)), which certifies infeasibility independently of
/// optimizer quality. Targets must have at least 4N+1 entries.
ObstructionReport progression_fit_obstruction(int n_waves, const BigReal& u, const BigReal& v,
                                              const std::vector<BigReal>& targets,
                                              const BigReal& eps, int restarts,
                                              std::uint64_t seed);

}  // namespace xpr
