#include "xpr/kronecker.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "xpr/errors.hpp"
#include "xpr/lattice.hpp"
#include "xpr/parallel.hpp"

namespace xpr {

const char* orbit_failure_name(OrbitFailure f) {
  switch (f) {
    case OrbitFailure::budget_exhausted: return "budget_exhausted";
    case OrbitFailure::subtorus: return "subtorus";
    case OrbitFailure::period_exhausted: return "period_exhausted";
  }
  return "?";
}

std::vector<BigReal> orbit_residuals(const std::vector<BigReal>& points,
                                     const std::vector<BigReal>& angles, const BigReal& omega,
                                     mpfr_prec_t bits) {
  std::vector<BigReal> out;
  out.reserve(points.size());
  for (std::size_t k = 0; k < points.size(); ++k) {
    BigReal prod = omega.round_to(bits) * points[k].round_to(bits);
    out.push_back(circle_distance(prod, angles[k].round_to(bits)));
  }
  return out;
}

bool verify_orbit(const DiophantineInstance& inst, const BigReal& omega, mpfr_prec_t bits) {
  BigReal eps = inst.eps.round_to(bits);
  for (const BigReal& r : orbit_residuals(inst.points, inst.angles, omega, bits)) {
    if (!(r < eps)) return false;
  }
  return true;
}

namespace {

mpfr_prec_t instance_bits(const DiophantineInstance& inst) {
  mpfr_prec_t bits = precision::kMinBits;
  for (const BigReal& x : inst.points) bits = std::max(bits, x.bits());
  for (const BigReal& t : inst.angles) bits = std::max(bits, t.bits());
  return bits;
}

void validate(const DiophantineInstance& inst) {
  if (inst.points.empty()) throw DomainError("solve_orbit: need at least one point");
  if (inst.points.size() != inst.angles.size()) {
    throw DomainError("solve_orbit: points/angles size mismatch");
  }
  if (!(inst.eps.sign() > 0)) throw DomainError("solve_orbit: eps must be positive");
  for (std::size_t i = 0; i < inst.points.size(); ++i) {
    for (std::size_t j = i + 1; j < inst.points.size(); ++j) {
      if (inst.points[i] == inst.points[j]) {
        throw DegenerateInput("solve_orbit: points must be pairwise distinct");
      }
    }
  }
}

double circ_dist_d(double a, double b) {
  constexpr double two_pi = 6.283185307179586476925286766559;
  double d = std::remainder(a - b, two_pi);
  return std::fabs(d);
}

/// Exact common period of the orbit when all points are rationals with small
/// denominators: T = 2pi * lcm(denominators). Empty when denominators are
/// large (e.g. generic dyadic approximations of irrationals).
std::optional<BigReal> exact_period(const std::vector<BigReal>& points, mpfr_prec_t bits) {
  mpz_class lcm_den = 1;
  const mpz_class cap = mpz_class(1) << 24;
  for (const BigReal& x : points) {
    mpq_class q = lattice::to_rational(x);
    q.canonicalize();
    mpz_class den = q.get_den();
    mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), den.get_mpz_t());
    if (lcm_den > cap) return std::nullopt;
  }
  BigReal d(lcm_den.get_d(), bits);
  return BigReal::two_pi(bits) * d;
}

struct ScanOutcome {
  std::optional<BigReal> omega;
  bool period_ruled_out = false;
  BigReal period{0L};
};

/// Dense scan over omega = +-j*step, j ascending, double prefilter, BigReal
/// verification. Chunks are merged in index order, so the first (smallest
/// |omega|) hit wins deterministically no matter the thread timing.
ScanOutcome grid_scan(const DiophantineInstance& inst, const SolveOptions& opts,
                      mpfr_prec_t bits) {
  const std::size_t n = inst.points.size();
  std::vector<double> xd(n), td(n);
  double max_x = 0;
  for (std::size_t k = 0; k < n; ++k) {
    xd[k] = inst.points[k].to_double();
    td[k] = inst.angles[k].to_double();
    max_x = std::max(max_x, std::fabs(xd[k]));
  }
  const double eps_d = inst.eps.to_double();
  if (max_x == 0.0) return {};
  const double step = eps_d / (2.0 * M_PI * max_x);
  const double omega_cap = inst.omega_max.to_double();
  long long total = static_cast<long long>(std::floor(omega_cap / step)) + 1;
  total = std::min(total, opts.max_scan_steps);

  std::optional<BigReal> period = exact_period(inst.points, bits);
  double period_d = period ? period->to_double() : 0.0;
  long long period_steps =
      period ? static_cast<long long>(std::ceil(period_d / step)) + 1 : 0;
  bool track_period = period && period_steps <= total;

  const double prefilter = eps_d * (1.0 + 1e-9) + 1e-12;

  struct ChunkResult {
    long long first_hit = -1;
    int hit_sign = 0;
    double min_resid = 1e300;  // over positive omega within the period
  };

  std::optional<BigReal> best;
  double global_min_resid = 1e300;
  const long long block = 4'000'000;
  for (long long base = 0; base < total && !best; base += block) {
    const long long end = std::min(base + block, total);
    auto chunks = par::chunked<ChunkResult>(
        static_cast<std::size_t>(end - base), static_cast<std::size_t>(par::worker_count()) * 8,
        [&](std::size_t, std::size_t cb, std::size_t ce) {
          ChunkResult res;
          for (std::size_t i = cb; i < ce; ++i) {
            const long long j = base + static_cast<long long>(i);
            const double w = static_cast<double>(j) * step;
            double worst_pos = 0, worst_neg = 0;
            for (std::size_t k = 0; k < n; ++k) {
              worst_pos = std::max(worst_pos, circ_dist_d(w * xd[k], td[k]));
              if (j != 0) worst_neg = std::max(worst_neg, circ_dist_d(-w * xd[k], td[k]));
            }
            if (track_period && w <= period_d) res.min_resid = std::min(res.min_resid, worst_pos);
            if (worst_pos < prefilter) {
              res.first_hit = j;
              res.hit_sign = +1;
              return res;
            }
            if (j != 0 && worst_neg < prefilter) {
              res.first_hit = j;
              res.hit_sign = -1;
              return res;
            }
          }
          return res;
        });
    for (const ChunkResult& c : chunks) {
      global_min_resid = std::min(global_min_resid, c.min_resid);
      if (c.first_hit >= 0 && !best) {
        // Verify at working precision; scan onward from the hit if the
        // prefilter was too optimistic (borderline cases only).
        long long j = c.first_hit;
        while (j < end) {
          const double w = static_cast<double>(j) * step;
          for (int sgn : {c.hit_sign, -c.hit_sign}) {
            if (j == 0 && sgn < 0) continue;
            BigReal omega(sgn > 0 ? w : -w, bits);
            if (verify_orbit(inst, omega, bits)) {
              best = omega;
              break;
            }
          }
          if (best) break;
          ++j;
        }
      }
      if (best) break;
    }
  }

  ScanOutcome out;
  out.omega = best;
  if (!best && track_period) {
    // Residual is Lipschitz in omega with constant max_x, so a strictly
    // positive sampled floor over a full period rules out every omega.
    if (global_min_resid > eps_d + 0.5 * step * max_x + 1e-9) {
      out.period_ruled_out = true;
      out.period = *period;
    }
  }
  return out;
}

/// Local refinement: the lattice candidates satisfy the first coordinate
/// exactly, which costs a little slack on the others; a short scan around the
/// candidate recovers it.
BigReal polish(const DiophantineInstance& inst, const BigReal& omega, mpfr_prec_t bits) {
  const std::size_t n = inst.points.size();
  std::vector<double> xd(n), td(n);
  double max_x = 0;
  for (std::size_t k = 0; k < n; ++k) {
    xd[k] = inst.points[k].to_double();
    td[k] = inst.angles[k].to_double();
    max_x = std::max(max_x, std::fabs(xd[k]));
  }
  if (max_x == 0) return omega;
  const double w0 = omega.to_double();
  const double span = inst.eps.to_double() / max_x;
  double best_w = w0, best_r = 1e300;
  const int steps = 400;
  for (int i = -steps; i <= steps; ++i) {
    const double w = w0 + span * static_cast<double>(i) / steps;
    double worst = 0;
    for (std::size_t k = 0; k < n; ++k) worst = std::max(worst, circ_dist_d(w * xd[k], td[k]));
    if (worst < best_r) {
      best_r = worst;
      best_w = w;
    }
  }
  return BigReal(best_w, bits);
}

std::vector<BigReal> lattice_candidates(const DiophantineInstance& inst, mpfr_prec_t bits) {
  using lattice::ZMat;
  using lattice::ZVec;
  using lattice::QVec;
  const std::size_t n = inst.points.size();
  // Pivot on the largest point: omega = (theta_p + 2 pi q) / x_p solves
  // coordinate p exactly, and the remaining coordinates become an
  // inhomogeneous approximation problem in the integer q.
  std::size_t p = 0;
  for (std::size_t k = 1; k < n; ++k) {
    if (abs(inst.points[k]) > abs(inst.points[p])) p = k;
  }
  if (inst.points[p].is_zero()) return {};

  const mpfr_prec_t work = bits + 64;
  const BigReal two_pi = BigReal::two_pi(work);
  std::vector<std::size_t> rest;
  for (std::size_t k = 0; k < n; ++k) {
    if (k != p) rest.push_back(k);
  }
  const std::size_t r = rest.size();

  // Scaled integer embedding: torus residual coordinates carry 2^P, the
  // extra dimension carries the q magnitude at weight ~ eps_T * 2^P / Q_max.
  const long P = 128;
  mpz_class scale = mpz_class(1) << P;
  const double eps_t = (inst.eps / two_pi).to_double();
  const double q_max_d =
      ((inst.omega_max * abs(inst.points[p]) + BigReal::pi(work)) / two_pi).to_double() + 1;
  double wq_d = eps_t * std::pow(2.0, static_cast<double>(P)) / std::max(1.0, q_max_d);
  mpz_class wq = lattice::round_nearest(mpq_class(std::max(1.0, wq_d)));

  ZMat basis;
  QVec target(r + 1, 0);
  {
    ZVec vq(r + 1, 0);
    for (std::size_t i = 0; i < r; ++i) {
      BigReal rho = inst.points[rest[i]].round_to(work) / inst.points[p].round_to(work);
      BigReal ck = (inst.angles[p].round_to(work) * rho - inst.angles[rest[i]].round_to(work)) / two_pi;
      mpq_class rho_q = lattice::to_rational(rho);
      mpq_class ck_q = lattice::to_rational(ck);
      vq[i] = lattice::round_nearest(rho_q * mpq_class(scale));
      target[i] = -ck_q * mpq_class(scale);
    }
    vq[r] = wq;
    basis.push_back(vq);
    for (std::size_t i = 0; i < r; ++i) {
      ZVec e(r + 1, 0);
      e[i] = scale;
      basis.push_back(e);
    }
  }

  lattice::lll_reduce(basis);
  ZVec center = lattice::babai_nearest_plane(basis, target);

  // Keep the enumeration box near 4k candidates regardless of dimension.
  long radius = 0;
  while (radius < 4 &&
         std::pow(2.0 * (radius + 1) + 1.0, static_cast<double>(r + 1)) <= 4096.0) {
    ++radius;
  }
  std::vector<BigReal> cands;
  for (const auto& offs : lattice::offset_box(r + 1, radius)) {
    ZVec v = center;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      if (offs[i] == 0) continue;
      for (std::size_t c = 0; c <= r; ++c) v[c] += offs[i] * basis[i][c];
    }
    // Recover q from the weighted last coordinate.
    mpq_class qq(v[r]);
    qq /= mpq_class(wq);
    mpz_class q = lattice::round_nearest(qq);
    if (mpq_class(q) * mpq_class(wq) != mpq_class(v[r])) continue;  // not a clean multiple
    BigReal qv(q.get_d(), work);
    BigReal omega = (inst.angles[p].round_to(work) + two_pi * qv) / inst.points[p].round_to(work);
    cands.push_back(omega.round_to(bits));
  }
  return cands;
}

}  // namespace

OrbitResult solve_orbit(const DiophantineInstance& inst, const SolveOptions& opts) {
  validate(inst);
  const mpfr_prec_t bits = instance_bits(inst);
  const std::size_t n = inst.points.size();
  OrbitResult result;

  DiophantineInstance norm = inst;
  for (BigReal& t : norm.angles) t = reduce_mod_2pi(t);

  // Dependence pre-check: a relation confines the orbit to a subtorus; if
  // the target provably misses that subtorus, no budget can help.
  IndependenceResult indep = rational_independence_check(norm.points, opts.relation_bound);
  if (!indep.independent && !indep.relation.empty()) {
    BigReal combo(0L, bits);
    BigReal abs_sum(0L, bits);
    for (std::size_t k = 0; k < n; ++k) {
      BigReal lam(static_cast<long>(indep.relation[k]), bits);
      combo += lam * norm.angles[k];
      abs_sum += abs(lam);
    }
    BigReal offset = reduce_mod_2pi_centered(combo);
    BigReal bound = norm.eps * abs_sum;
    if (abs(offset) > bound) {
      result.failure = OrbitFailure::subtorus;
      result.witness = SubtorusWitness{indep.relation, offset, bound};
      return result;
    }
  }

  auto finish = [&](const BigReal& omega, const std::string& method) {
    OrbitSolution sol;
    sol.omega = omega;
    sol.residuals = orbit_residuals(norm.points, norm.angles, omega, bits);
    sol.verified = verify_orbit(norm, omega, bits * 2);
    sol.method = method;
    result.solution = std::move(sol);
  };

  // Analytic shortcut for a single point.
  if (n == 1) {
    if (norm.points[0].is_zero()) {
      if (circle_distance(BigReal(0L, bits), norm.angles[0]) < norm.eps) {
        finish(BigReal(0L, bits), "analytic");
      }
      return result;
    }
    BigReal w1 = norm.angles[0] / norm.points[0];
    BigReal w2 = (norm.angles[0] - BigReal::two_pi(bits)) / norm.points[0];
    BigReal pick = abs(w1) <= abs(w2) ? w1 : w2;
    for (const BigReal& w : {pick, pick == w1 ? w2 : w1}) {
      if (abs(w) <= norm.omega_max && verify_orbit(norm, w, bits)) {
        finish(w, "analytic");
        return result;
      }
    }
    return result;
  }

  if (opts.enable_lattice) {
    std::vector<BigReal> cands = lattice_candidates(norm, bits);
    std::optional<BigReal> best;
    for (const BigReal& cand : cands) {
      for (const BigReal& w : {cand, polish(norm, cand, bits)}) {
        if (abs(w) <= norm.omega_max && verify_orbit(norm, w, bits)) {
          if (!best || abs(w) < abs(*best) ||
              (abs(w) == abs(*best) && w.sign() > best->sign())) {
            best = w;
          }
        }
      }
    }
    if (best) {
      finish(*best, "lattice");
      return result;
    }
  }

  if (opts.enable_scan) {
    ScanOutcome scan = grid_scan(norm, opts, bits);
    if (scan.omega) {
      finish(*scan.omega, "grid");
      return result;
    }
    if (scan.period_ruled_out) {
      result.failure = OrbitFailure::period_exhausted;
      result.scanned_period = scan.period;
      if (!indep.independent) {
        BigReal combo(0L, bits);
        BigReal abs_sum(0L, bits);
        for (std::size_t k = 0; k < n; ++k) {
          combo += BigReal(static_cast<long>(indep.relation[k]), bits) * norm.angles[k];
          abs_sum += abs(BigReal(static_cast<long>(indep.relation[k]), bits));
        }
        result.witness = SubtorusWitness{indep.relation, reduce_mod_2pi_centered(combo),
                                         norm.eps * abs_sum};
      }
      return result;
    }
  }

  result.failure = OrbitFailure::budget_exhausted;
  return result;
}

IndependenceResult rational_independence_check(const std::vector<BigReal>& points, long bound) {
  if (bound < 1) throw DomainError("independence check: bound must be >= 1");
  if (points.empty()) throw DomainError("independence check: no points");
  IndependenceResult out;
  mpfr_prec_t bits = precision::kMinBits;
  for (const BigReal& x : points) bits = std::max(bits, x.bits());
  const std::size_t n = points.size();
  const BigReal tol = BigReal::pow2(-static_cast<long>(bits) / 2, bits);

  auto relation_residual = [&](const std::vector<long>& lam) {
    BigReal s(0L, bits);
    for (std::size_t k = 0; k < n; ++k) {
      s += BigReal(lam[k], bits) * points[k];
    }
    return abs(s);
  };

  if (n == 1) {
    std::vector<long> lam{1};
    BigReal r = relation_residual(lam);
    if (r < tol) {
      out.relation = lam;
      out.residual = r;
      return out;
    }
    out.independent = true;
    out.certified = true;
    out.residual = r;
    return out;
  }

  // Integer-relation lattice: rows (A e_k, round(2^P x_k)); a relation with
  // small lambda and tiny residual shows up as a short vector. The identity
  // block weight A keeps large-lambda near-relations (which always exist)
  // from masking the certification gap.
  const long P = static_cast<long>(bits);
  mpz_class scale = mpz_class(1) << P;
  mpz_class a_weight = (mpz_class(1) << (P / 2)) / mpz_class(bound);
  if (a_weight < 1) a_weight = 1;

  lattice::ZMat basis;
  for (std::size_t k = 0; k < n; ++k) {
    lattice::ZVec row(n + 1, 0);
    row[k] = a_weight;
    row[n] = lattice::round_nearest(lattice::to_rational(points[k]) * mpq_class(scale));
    basis.push_back(row);
  }
  lattice::lll_reduce(basis);

  std::optional<std::vector<long>> best;
  BigReal best_resid(0L, bits);
  auto consider = [&](const lattice::ZVec& v) {
    std::vector<long> lam(n, 0);
    bool nonzero = false;
    for (std::size_t k = 0; k < n; ++k) {
      mpz_class c = v[k] / a_weight;
      if (c * a_weight != v[k]) return;  // not in the lambda sublattice shape
      if (!c.fits_slong_p()) return;
      lam[k] = c.get_si();
      if (std::labs(lam[k]) > bound) return;
      if (lam[k] != 0) nonzero = true;
    }
    if (!nonzero) return;
    BigReal r = relation_residual(lam);
    if (r < tol) {
      // Normalize: divide by gcd, make the first nonzero entry positive.
      long g = 0;
      for (long l : lam) g = static_cast<long>(std::gcd(g, std::labs(l)));
      if (g > 1) {
        for (long& l : lam) l /= g;
      }
      for (long l : lam) {
        if (l != 0) {
          if (l < 0) {
            for (long& t : lam) t = -t;
          }
          break;
        }
      }
      auto norm_inf = [](const std::vector<long>& v2) {
        long m = 0;
        for (long t : v2) m = std::max(m, std::labs(t));
        return m;
      };
      if (!best || norm_inf(lam) < norm_inf(*best)) {
        best = lam;
        best_resid = relation_residual(lam);
      }
    }
  };

  for (const auto& row : basis) consider(row);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = i + 1; j < basis.size(); ++j) {
      lattice::ZVec sum(n + 1), diff(n + 1);
      for (std::size_t c = 0; c <= n; ++c) {
        sum[c] = basis[i][c] + basis[j][c];
        diff[c] = basis[i][c] - basis[j][c];
      }
      consider(sum);
      consider(diff);
    }
  }

  if (best) {
    out.relation = *best;
    out.residual = best_resid;
    return out;
  }

  out.independent = true;
  // Certification: any relation with |lambda| <= bound would give a lattice
  // vector of norm <= B_rel; LLL guarantees |b_1| <= 2^((n-1)/2) lambda_1.
  double min_norm2 = 1e300;
  for (const auto& row : basis) {
    double s = 0;
    for (const auto& c : row) {
      double cd = c.get_d();
      s += cd * cd;
    }
    min_norm2 = std::min(min_norm2, s);
  }
  const double nd = static_cast<double>(n);
  const double a_d = a_weight.get_d();
  const double b_rel = std::sqrt(nd) * a_d * static_cast<double>(bound) +
                       std::pow(2.0, static_cast<double>(P) / 2.0) +
                       nd * static_cast<double>(bound);
  out.certified = std::sqrt(min_norm2) > std::pow(2.0, (nd - 1) / 2.0) * b_rel;
  out.residual = BigReal(0L, bits);
  return out;
}

SineFitResult fit_single_sine(const std::vector<BigReal>& points,
                              const std::vector<BigReal>& targets, const BigReal& eps,
                              const SolveOptions& opts) {
  if (points.size() != targets.size() || points.empty()) {
    throw DomainError("fit_single_sine: points/targets size mismatch");
  }
  if (!(eps.sign() > 0)) throw DomainError("fit_single_sine: eps must be positive");
  mpfr_prec_t bits = precision::kMinBits;
  for (const BigReal& x : points) bits = std::max(bits, x.bits());

  BigReal c(1L, bits);
  for (const BigReal& y : targets) c = max_big(c, abs(y) + BigReal(1L, bits));

  DiophantineInstance inst;
  inst.points = points;
  inst.eps = (eps / c) * BigReal(0.98, bits);
  inst.omega_max = BigReal(1e8, bits);
  for (const BigReal& y : targets) inst.angles.push_back(reduce_mod_2pi(asin_big(y / c)));

  SineFitResult out;
  out.orbit = solve_orbit(inst, opts);
  if (!out.orbit.found()) return out;

  const BigReal& omega = out.orbit.solution->omega;
  SineFit fit;
  fit.c = c;
  fit.omega = omega;
  bool ok = true;
  for (std::size_t k = 0; k < points.size(); ++k) {
    BigReal r = abs(c * sin_big(omega * points[k]) - targets[k]);
    ok = ok && r < eps;
    fit.residuals.push_back(r);
  }
  if (!ok) {
    out.orbit.solution.reset();
    out.orbit.failure = OrbitFailure::budget_exhausted;
    return out;
  }
  fit.verified = out.orbit.solution->verified;
  fit.method = out.orbit.solution->method;
  out.fit = std::move(fit);
  return out;
}

ShatterResult shatter(const ShatterInstance& inst, const SolveOptions& opts) {
  if (inst.points.size() != inst.pattern.size() || inst.points.empty()) {
    throw DomainError("shatter: points/pattern size mismatch");
  }
  if (!(inst.margin.sign() > 0)) throw DomainError("shatter: margin must be positive");
  mpfr_prec_t bits = precision::kMinBits;
  for (const BigReal& x : inst.points) bits = std::max(bits, x.bits());
  const std::size_t n = inst.points.size();

  ShatterResult out;

  auto margin_at = [&](const BigReal& omega) {
    BigReal m(2L, bits);
    for (std::size_t k = 0; k < n; ++k) {
      BigReal v = sin_big(omega * inst.points[k]);
      if (inst.pattern[k] < 0) v = -v;
      m = min_big(m, v);
    }
    return m;  // min_k s_k sin(omega x_k); positive iff the signs all match
  };

  auto accept = [&](const BigReal& omega) {
    BigReal m = margin_at(omega);
    if (!(m.sign() > 0)) return false;
    SingleSineParams p;
    p.omega = omega;
    p.c = BigReal(1.1, bits) * inst.margin / m;
    out.params = p;
    return true;
  };

  // Route the sign pattern through angle targets +-pi/2.
  DiophantineInstance angles;
  angles.points = inst.points;
  angles.eps = BigReal(1.2, bits);
  angles.omega_max = BigReal(1e8, bits);
  BigReal half_pi = BigReal::pi(bits) / BigReal(2L, bits);
  for (int s : inst.pattern) {
    angles.angles.push_back(s > 0 ? half_pi : BigReal(3L, bits) * half_pi);
  }
  out.detail = solve_orbit(angles, opts);
  if (out.detail.found() && accept(out.detail.solution->omega)) return out;

  // Fallback: direct scan on the sign objective. Covers tight patterns the
  // loose angle tolerance misses and certifies impossibility over a full
  // period for rational points.
  std::vector<double> xd(n);
  double max_x = 0;
  for (std::size_t k = 0; k < n; ++k) {
    xd[k] = inst.points[k].to_double();
    max_x = std::max(max_x, std::fabs(xd[k]));
  }
  if (max_x == 0) return out;
  const double step = 0.002 / max_x;
  std::optional<BigReal> period = exact_period(inst.points, bits);
  double cap = angles.omega_max.to_double();
  if (period) cap = std::min(cap, period->to_double() + step);
  long long total = std::min(static_cast<long long>(cap / step) + 1, opts.max_scan_steps);

  struct ChunkBest {
    double best_m = -2;
    long long best_j = -1;
    int best_sign = 0;
  };
  auto chunks = par::chunked<ChunkBest>(
      static_cast<std::size_t>(total), static_cast<std::size_t>(par::worker_count()) * 8,
      [&](std::size_t, std::size_t cb, std::size_t ce) {
        ChunkBest res;
        for (std::size_t i = cb; i < ce; ++i) {
          const long long j = static_cast<long long>(i);
          for (int sgn : {+1, -1}) {
            if (j == 0 && sgn < 0) continue;
            const double w = sgn * static_cast<double>(j) * step;
            double m = 2;
            for (std::size_t k = 0; k < n; ++k) {
              double v = std::sin(w * xd[k]);
              m = std::min(m, inst.pattern[k] < 0 ? -v : v);
            }
            if (m > res.best_m) {
              res.best_m = m;
              res.best_j = j;
              res.best_sign = sgn;
            }
          }
        }
        return res;
      });

  ChunkBest global;
  std::optional<BigReal> found;
  for (const ChunkBest& c : chunks) {
    if (c.best_m > global.best_m) global = c;
    if (!found && c.best_m > 1e-4) {
      // Earliest chunk with a workable margin; refine inside it.
      found = BigReal(c.best_sign * static_cast<double>(c.best_j) * step, bits);
    }
  }
  if (found && accept(*found)) {
    out.detail.solution = OrbitSolution{*found, {}, true, "grid"};
    return out;
  }
  if (global.best_m > 0 && accept(BigReal(
          global.best_sign * static_cast<double>(global.best_j) * step, bits))) {
    out.detail.solution =
        OrbitSolution{out.params->omega, {}, true, "grid"};
    return out;
  }
  if (period && total * step >= period->to_double() &&
      global.best_m < -0.5 * step * max_x - 1e-9) {
    out.detail.failure = OrbitFailure::period_exhausted;
    out.detail.scanned_period = *period;
  } else {
    out.detail.failure = OrbitFailure::budget_exhausted;
  }
  out.detail.solution.reset();
  return out;
}

BigReal three_term_identity_residual(const Wave& w, const BigReal& u, const BigReal& v) {
  auto g = [&](const BigReal& x) { return w.c * sin_big(w.omega * x + w.h); };
  return abs(g(u) + g(u + BigReal(2L) * v) - BigReal(2L) * g(u + v) * cos_big(w.omega * v));
}

}  // namespace xpr
