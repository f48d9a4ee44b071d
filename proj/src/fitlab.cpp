#include "xpr/fitlab.hpp"

#include <algorithm>
#include <cmath>

#include "xpr/errors.hpp"
#include "xpr/kronecker.hpp"
#include "xpr/linalg.hpp"
#include "xpr/parallel.hpp"
#include "xpr/rng.hpp"

namespace xpr {

const char* fit_verdict_name(FitVerdict v) {
  switch (v) {
    case FitVerdict::achieved: return "achieved";
    case FitVerdict::floor_detected: return "floor-detected";
    case FitVerdict::budget_exhausted: return "budget-exhausted";
  }
  return "?";
}

namespace {

constexpr mpfr_prec_t kFitBits = 128;

/// Flat real parameter vector <-> family params. The optimizer only sees the
/// flat vector; pack/unpack encode the family structure.
struct Packing {
  FamilyParams shape;

  std::size_t size() const {
    return std::visit(
        [](const auto& v) -> std::size_t {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, SingleSineParams>) {
            return 2;
          } else if constexpr (std::is_same_v<T, SineSumParams>) {
            return 3 * v.waves.size();
          } else if constexpr (std::is_same_v<T, SigmaSineParams>) {
            return 4;
          } else if constexpr (std::is_same_v<T, SineOfSineParams>) {
            return 2 + 3 * v.inner.waves.size();
          } else {
            // H3: real/imaginary parts of every P_n coefficient; Q stays fixed.
            std::size_t n = 0;
            for (const auto& p : v.polys) n += 2 * p.size();
            return n;
          }
        },
        shape);
  }

  FamilyParams unpack(const std::vector<BigReal>& p) const {
    FamilyParams out = shape;
    std::size_t i = 0;
    auto next = [&]() { return p.at(i++); };
    std::visit(
        [&](auto& v) {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, SingleSineParams>) {
            v.c = next();
            v.omega = next();
          } else if constexpr (std::is_same_v<T, SineSumParams>) {
            for (Wave& w : v.waves) {
              w.c = next();
              w.omega = next();
              w.h = next();
            }
          } else if constexpr (std::is_same_v<T, SigmaSineParams>) {
            v.c = next();
            v.omega = next();
            v.b = next();
            v.h = next();
            // Keep b feasible: the family requires b in [-1, 1].
            BigReal one(1L, kFitBits);
            v.b = min_big(one, max_big(-one, v.b));
          } else if constexpr (std::is_same_v<T, SineOfSineParams>) {
            v.outer_c = next();
            v.outer_h = next();
            for (Wave& w : v.inner.waves) {
              w.c = next();
              w.omega = next();
              w.h = next();
            }
          } else {
            for (auto& poly : v.polys) {
              for (auto& coeff : poly) {
                coeff.re = next();
                coeff.im = next();
              }
            }
          }
        },
        out);
    return out;
  }

  std::vector<BigReal> random_init(Rng& rng) const {
    std::vector<BigReal> p;
    auto amp = [&]() { return BigReal(rng.uniform(-2.0, 2.0), kFitBits); };
    auto freq = [&]() {
      return BigReal(rng.sign() > 0 ? rng.log_uniform(1e-2, 1e3) : rng.log_uniform(1e-2, 1e3),
                     kFitBits);
    };
    auto phase = [&]() { return BigReal(rng.uniform(0.0, 6.283185307179586), kFitBits); };
    std::visit(
        [&](const auto& v) {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, SingleSineParams>) {
            p = {amp(), freq()};
          } else if constexpr (std::is_same_v<T, SineSumParams>) {
            for (std::size_t k = 0; k < v.waves.size(); ++k) {
              p.push_back(amp());
              p.push_back(freq());
              p.push_back(phase());
            }
          } else if constexpr (std::is_same_v<T, SigmaSineParams>) {
            p = {amp(), freq(), BigReal(rng.uniform(-1.0, 1.0), kFitBits), phase()};
          } else if constexpr (std::is_same_v<T, SineOfSineParams>) {
            p.push_back(amp());
            p.push_back(phase());
            for (std::size_t k = 0; k < v.inner.waves.size(); ++k) {
              p.push_back(amp());
              p.push_back(freq());
              p.push_back(phase());
            }
          } else {
            for (const auto& poly : v.polys) {
              for (std::size_t k = 0; k < poly.size(); ++k) {
                p.push_back(amp());
                p.push_back(amp());
              }
            }
          }
        },
        shape);
    return p;
  }
};

/// Residual vector at 128-bit precision; evaluation failures (H3 poles, ...)
/// turn into a large penalty instead of aborting the restart.
std::vector<BigReal> residual_vector(const Packing& packing, const std::vector<BigReal>& p,
                                     const std::vector<BigReal>& xs,
                                     const std::vector<BigReal>& ys) {
  FamilyParams fam = packing.unpack(p);
  std::vector<BigReal> r;
  r.reserve(xs.size());
  for (std::size_t k = 0; k < xs.size(); ++k) {
    BigReal v(0L, kFitBits);
    try {
      v = evaluate(fam, xs[k].round_to(kFitBits)) - ys[k].round_to(kFitBits);
    } catch (const Error&) {
      v = BigReal(1e6, kFitBits);
    }
    r.push_back(v);
  }
  return r;
}

BigReal sum_squares(const std::vector<BigReal>& r) {
  BigReal s(0L, kFitBits);
  for (const BigReal& v : r) s += v * v;
  return s;
}

BigReal max_abs(const std::vector<BigReal>& r) {
  BigReal s(0L, kFitBits);
  for (const BigReal& v : r) s = max_big(s, abs(v));
  return s;
}

struct RestartOutcome {
  std::vector<BigReal> params;
  BigReal max_residual{1e30};
};

/// Frequency-aware initialization for the sigma-sine family. Plain random
/// starts cannot reach the wrap-around solutions this family relies on (four
/// parameters against five targets), so half the restarts draw b, map the
/// targets to angles and solve the induced orbit problem for (omega, h) with
/// the lattice solver. Gauss-Newton then polishes.
std::optional<std::vector<BigReal>> sigma_orbit_init(const FitInstance& inst, Rng& rng) {
  const auto* shape = std::get_if<SigmaSineParams>(&inst.shape);
  // The lattice stage is only tractable at small point counts; larger
  // instances keep the plain random restarts.
  if (shape == nullptr || inst.xs.size() < 2 || inst.xs.size() > 6) return std::nullopt;
  const std::size_t nk = inst.xs.size();
  try {
    const double b_draw = rng.uniform(0.25, 1.0) * rng.sign();
    BigReal b(b_draw, kFitBits);
    BigReal c(1L, kFitBits);
    for (const BigReal& y : inst.ys) c = max_big(c, abs(y.round_to(kFitBits)) + BigReal(1L, kFitBits));
    c = c * BigReal(1.0 + 0.2 * rng.uniform01(), kFitBits);

    std::vector<BigReal> sigma_vals, thetas;
    for (std::size_t k = 0; k < nk; ++k) {
      sigma_vals.push_back(
          sigma_eval(shape->sigma, shape->poly_coeffs, b * inst.xs[k].round_to(kFitBits)));
      thetas.push_back(reduce_mod_2pi(asin_big(inst.ys[k].round_to(kFitBits) / c)));
    }
    DiophantineInstance orbit;
    for (std::size_t k = 1; k < nk; ++k) {
      orbit.points.push_back(sigma_vals[k] - sigma_vals[0]);
      orbit.angles.push_back(reduce_mod_2pi(thetas[k] - thetas[0]));
    }
    orbit.eps = BigReal(0.5, kFitBits) * inst.eps.round_to(kFitBits) / c;
    // K targets leave K-1 torus coordinates, so the needed frequency grows
    // like eps^-(K-1); give the lattice room.
    orbit.omega_max = BigReal(1e24, kFitBits);
    SolveOptions opts;
    opts.enable_scan = false;  // lattice candidates only; the polish is GN's job
    opts.relation_bound = 100;
    OrbitResult r = solve_orbit(orbit, opts);
    if (!r.found()) return std::nullopt;
    BigReal omega = r.solution->omega;
    BigReal h = reduce_mod_2pi(thetas[0] - omega * sigma_vals[0]);
    return std::vector<BigReal>{c, omega, b, h};
  } catch (const Error&) {
    return std::nullopt;
  }
}

RestartOutcome run_restart(const Packing& packing, const FitInstance& inst, Rng rng,
                           bool informed) {
  const std::size_t np = packing.size();
  const std::size_t nk = inst.xs.size();
  std::vector<BigReal> p;
  if (informed) {
    if (auto seeded = sigma_orbit_init(inst, rng)) p = *seeded;
  }
  if (p.empty()) p = packing.random_init(rng);
  std::vector<BigReal> r = residual_vector(packing, p, inst.xs, inst.ys);
  BigReal cost = sum_squares(r);
  BigReal lambda(1e-3, kFitBits);
  const BigReal lambda_cap(1e30, kFitBits);
  const BigReal fd_step = BigReal::pow2(-30, kFitBits);

  RestartOutcome out;
  out.params = p;
  out.max_residual = max_abs(r);

  for (int iter = 0; iter < inst.max_iterations; ++iter) {
    if (out.max_residual < inst.eps.round_to(kFitBits)) break;
    // Numeric Jacobian by central differences.
    Mat jac(nk, np, kFitBits);
    for (std::size_t j = 0; j < np; ++j) {
      BigReal h = fd_step * max_big(BigReal(1L, kFitBits), abs(p[j]));
      std::vector<BigReal> pp = p, pm = p;
      pp[j] += h;
      pm[j] -= h;
      std::vector<BigReal> rp = residual_vector(packing, pp, inst.xs, inst.ys);
      std::vector<BigReal> rm = residual_vector(packing, pm, inst.xs, inst.ys);
      for (std::size_t k = 0; k < nk; ++k) {
        jac.at(k, j) = (rp[k] - rm[k]) / (BigReal(2L, kFitBits) * h);
      }
    }
    // Normal equations with Levenberg damping.
    Mat jtj(np, np, kFitBits);
    std::vector<BigReal> jtr(np, BigReal(0L, kFitBits));
    for (std::size_t a = 0; a < np; ++a) {
      for (std::size_t b = a; b < np; ++b) {
        BigReal s(0L, kFitBits);
        for (std::size_t k = 0; k < nk; ++k) s += jac.at(k, a) * jac.at(k, b);
        jtj.at(a, b) = s;
        jtj.at(b, a) = s;
      }
      BigReal s(0L, kFitBits);
      for (std::size_t k = 0; k < nk; ++k) s += jac.at(k, a) * r[k];
      jtr[a] = -s;
    }
    bool accepted = false;
    while (!accepted && lambda <= lambda_cap) {
      Mat damped = jtj;
      for (std::size_t a = 0; a < np; ++a) damped.at(a, a) += lambda;
      std::vector<BigReal> delta;
      if (solve_linear(damped, jtr, delta)) {
        std::vector<BigReal> cand = p;
        for (std::size_t a = 0; a < np; ++a) cand[a] += delta[a];
        std::vector<BigReal> rc = residual_vector(packing, cand, inst.xs, inst.ys);
        BigReal cc = sum_squares(rc);
        if (cc < cost) {
          p = std::move(cand);
          r = std::move(rc);
          cost = cc;
          lambda = lambda / BigReal(2L, kFitBits);
          accepted = true;
          BigReal mr = max_abs(r);
          if (mr < out.max_residual) {
            out.max_residual = mr;
            out.params = p;
          }
          break;
        }
      }
      lambda = lambda * BigReal(2L, kFitBits);
    }
    if (!accepted) break;  // stalled
  }
  return out;
}

}  // namespace

FitReport fit_family(const FitInstance& inst, std::uint64_t seed) {
  if (inst.xs.size() != inst.ys.size() || inst.xs.empty()) {
    throw DomainError("fit_family: xs/ys size mismatch");
  }
  if (!(inst.eps.sign() > 0)) throw DomainError("fit_family: eps must be positive");
  for (std::size_t i = 0; i < inst.xs.size(); ++i) {
    for (std::size_t j = i + 1; j < inst.xs.size(); ++j) {
      if (inst.xs[i] == inst.xs[j]) throw DegenerateInput("fit_family: repeated x");
    }
  }
  Packing packing{inst.shape};

  const bool sigma_family = std::holds_alternative<SigmaSineParams>(inst.shape);
  std::vector<RestartOutcome> outcomes(static_cast<std::size_t>(inst.restarts));
  par::parallel_for(static_cast<std::size_t>(inst.restarts), [&](std::size_t i) {
    const bool informed = sigma_family && (i % 2 == 1);
    outcomes[i] = run_restart(packing, inst, Rng::stream(seed, i), informed);
  });

  // Reduce by (max residual, restart index); index order breaks ties.
  std::size_t best = 0;
  for (std::size_t i = 1; i < outcomes.size(); ++i) {
    if (outcomes[i].max_residual < outcomes[best].max_residual) best = i;
  }

  FitReport report;
  report.best = packing.unpack(outcomes[best].params);
  report.max_residual = outcomes[best].max_residual;
  report.restarts_used = inst.restarts;
  for (std::size_t k = 0; k < inst.xs.size(); ++k) {
    BigReal v(0L, kFitBits);
    try {
      v = abs(evaluate(report.best, inst.xs[k].round_to(kFitBits)) - inst.ys[k].round_to(kFitBits));
    } catch (const Error&) {
      v = BigReal(1e6, kFitBits);
    }
    report.residuals.push_back(v);
  }
  for (const RestartOutcome& o : outcomes) report.restart_best.push_back(o.max_residual);
  std::sort(report.restart_best.begin(), report.restart_best.end());

  const BigReal eps = inst.eps.round_to(kFitBits);
  if (report.max_residual < eps) {
    report.verdict = FitVerdict::achieved;
    return report;
  }
  // Floor detection: the best residual clears 10x the target and the top
  // restarts agree within a factor of 2 (structural floor, not optimizer
  // bad luck).
  const std::size_t top = std::min<std::size_t>(5, report.restart_best.size());
  if (report.max_residual > BigReal(10L, kFitBits) * eps && top >= 2) {
    bool tight = report.restart_best[top - 1] <= BigReal(2L, kFitBits) * report.restart_best[0];
    if (tight) {
      report.verdict = FitVerdict::floor_detected;
      return report;
    }
  }
  report.verdict = FitVerdict::budget_exhausted;
  return report;
}

ObstructionReport progression_fit_obstruction(int n_waves, const BigReal& u, const BigReal& v,
                                              const std::vector<BigReal>& targets,
                                              const BigReal& eps, int restarts,
                                              std::uint64_t seed) {
  if (n_waves < 1) throw DomainError("progression_fit_obstruction: N must be >= 1");
  const std::size_t need = 4 * static_cast<std::size_t>(n_waves) + 1;
  if (targets.size() < need) {
    throw LengthError("progression_fit_obstruction: need at least 4N+1 = " +
                      std::to_string(need) + " targets");
  }
  const mpfr_prec_t bits = u.bits();

  FitInstance inst;
  SineSumParams shape;
  for (int i = 0; i < n_waves; ++i) {
    shape.waves.push_back(Wave{BigReal(0L, bits), BigReal(0L, bits), BigReal(0L, bits)});
  }
  inst.shape = shape;
  inst.eps = eps;
  inst.restarts = restarts;
  for (std::size_t k = 0; k < targets.size(); ++k) {
    inst.xs.push_back(u + BigReal(static_cast<long>(k), bits) * v);
    inst.ys.push_back(targets[k]);
  }

  ObstructionReport out{fit_family(inst, seed), Certificate{}};

  // Determinant certificate of the target values themselves: index lookup on
  // the progression, alphas = betas = (0, v, ..., 2N v).
  std::vector<BigReal> offs;
  for (int k = 0; k <= 2 * n_waves; ++k) offs.push_back(BigReal(k, bits) * v);
  auto lookup = [&](const BigReal& x) {
    BigReal idx = (x - u) / v;
    long k = idx.to_long();
    if (k < 0 || k >= static_cast<long>(targets.size())) {
      throw InternalError("progression lookup out of range");
    }
    return targets[static_cast<std::size_t>(k)];
  };
  out.target_certificate = det_certificate(lookup, u, offs, offs, n_waves);
  return out;
}

}  // namespace xpr
