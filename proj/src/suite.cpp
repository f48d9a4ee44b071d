#include "xpr/suite.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <ostream>
#include <sstream>

#include "xpr/certify.hpp"
#include "xpr/errors.hpp"
#include "xpr/families.hpp"
#include "xpr/fitlab.hpp"
#include "xpr/kronecker.hpp"
#include "xpr/limits.hpp"
#include "xpr/netlab.hpp"
#include "xpr/parallel.hpp"
#include "xpr/rng.hpp"

namespace xpr::suite {

namespace {

using clock_type = std::chrono::steady_clock;

SineSumParams random_sine_sum(Rng& rng, int n_waves, double omega_cap) {
  SineSumParams p;
  for (int i = 0; i < n_waves; ++i) {
    double c = rng.uniform(0.2, 2.0) * rng.sign();
    double w = rng.uniform(0.1, omega_cap);
    double h = rng.uniform(0.0, 6.283185307179586);
    p.waves.push_back(Wave{BigReal(c), BigReal(w), BigReal(h)});
  }
  return p;
}

std::vector<BigReal> random_distinct_offsets(Rng& rng, int count, double lo, double hi) {
  std::vector<BigReal> out;
  for (int i = 0; i < count; ++i) out.push_back(BigReal(rng.uniform(lo, hi)));
  return out;  // continuous draws; exact collisions have probability ~0
}

// ---- criterion 1: determinant certificate ----

CriterionResult criterion_det(std::uint64_t seed) {
  CriterionResult res{1, "determinant certificate", false, 0, ""};
  const BigReal tol = BigReal::pow2(-128);
  const int trials = 200;
  std::atomic<int> pass_members{0}, fail_control{0};
  par::parallel_for(trials, [&](std::size_t i) {
    Rng rng = Rng::stream(seed, 100 + i);
    const int n = 1 + static_cast<int>(i % 4);
    SineSumParams member = random_sine_sum(rng, n, 40.0);
    BigReal x0(rng.uniform(0.0, 0.1));
    auto alphas = random_distinct_offsets(rng, 2 * n + 1, 0.0, 0.45);
    auto betas = random_distinct_offsets(rng, 2 * n + 1, 0.0, 0.45);
    FamilyParams fam = member;
    auto g = [&](const BigReal& x) { return evaluate(fam, x); };
    Certificate c = det_certificate(g, x0, alphas, betas, n, tol);
    if (c.pass) pass_members.fetch_add(1);

    // The control x^3 + 0.1 e^x has exponential-polynomial rank 5, so for
    // N >= 3 its determinant vanishes identically (it really does satisfy
    // the constraint at those sizes). Each grid checks the control at the
    // largest size this function can violate.
    auto control = [](const BigReal& x) {
      return x * x * x + BigReal(0.1) * exp_big(x);
    };
    const int nc = std::min(n, 2);
    std::vector<BigReal> ca(alphas.begin(), alphas.begin() + 2 * nc + 1);
    std::vector<BigReal> cb(betas.begin(), betas.begin() + 2 * nc + 1);
    Certificate cc = det_certificate(control, x0, ca, cb, nc, tol);
    if (!cc.pass) fail_control.fetch_add(1);
  });
  std::ostringstream d;
  d << pass_members.load() << "/200 members pass, control fails on " << fail_control.load()
    << "/200 grids";
  res.detail = d.str();
  res.pass = pass_members.load() == trials && fail_control.load() >= 190;
  return res;
}

// ---- criterion 2: exponential identity ----

CriterionResult criterion_exp_poly(std::uint64_t seed) {
  CriterionResult res{2, "exponential identity", false, 0, ""};
  const int trials = 100;
  std::atomic<int> pass_count{0}, control_fail{0};
  par::parallel_for(trials, [&](std::size_t i) {
    Rng rng = Rng::stream(seed, 200 + i);
    const int deg = 1 + static_cast<int>(i % 6);
    std::vector<BigComplex> coeffs;
    for (int k = 0; k <= deg; ++k) {
      double re = rng.uniform(-1.0, 1.0), im = rng.uniform(-1.0, 1.0);
      if (k == deg) re += (re >= 0 ? 0.5 : -0.5);  // keep the leading term away from 0
      coeffs.emplace_back(re, im);
    }
    auto poly_at = [&](const BigReal& x) {
      BigComplex acc;
      for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * BigComplex(x) + coeffs[k];
      return acc;
    };
    BigReal a(rng.uniform(0.0, 0.2));
    BigReal h(rng.uniform(0.05, 0.15));
    const long m = deg + 2;
    SampleGrid grid;
    grid.a = a;
    grid.h = h;
    grid.m = m;
    grid.real_valued = false;
    for (long j = 0; j <= m; ++j) grid.values.push_back(exp_big(poly_at(grid.x_at(j))));
    if (exp_poly_certificate(grid, deg).pass) pass_count.fetch_add(1);
    // Degree overflow: checking the same samples one level low must fail.
    if (!exp_poly_certificate(grid, deg - 1).pass) control_fail.fetch_add(1);
  });
  std::ostringstream d;
  d << pass_count.load() << "/100 pass at the true degree, " << control_fail.load()
    << "/100 fail one level low";
  res.detail = d.str();
  res.pass = pass_count.load() == trials && control_fail.load() == trials;
  return res;
}

// ---- criterion 3: Kronecker fitting ----

CriterionResult criterion_kronecker(std::uint64_t seed) {
  CriterionResult res{3, "Kronecker fitting", false, 0, ""};
  std::vector<BigReal> points{BigReal(1L), sqrt_big(BigReal(2L))};
  const int trials = 20;
  std::atomic<int> solved{0};
  par::parallel_for(trials, [&](std::size_t i) {
    Rng rng = Rng::stream(seed, 300 + i);
    DiophantineInstance inst;
    inst.points = points;
    inst.angles = {BigReal(rng.uniform(0.0, 6.283185307179586)),
                   BigReal(rng.uniform(0.0, 6.283185307179586))};
    inst.eps = BigReal(0.05);
    inst.omega_max = BigReal(1e8);
    OrbitResult r = solve_orbit(inst);
    if (r.found() && r.solution->verified) solved.fetch_add(1);
  });

  DiophantineInstance dep;
  dep.points = {BigReal(0.25), BigReal(0.75)};
  BigReal half_pi = BigReal::pi(256) / BigReal(2L);
  dep.angles = {half_pi, half_pi + BigReal(1L)};
  dep.eps = BigReal(1e-3);
  OrbitResult dep_res = solve_orbit(dep);
  const bool control_ok = !dep_res.found() && dep_res.witness.has_value();

  std::ostringstream d;
  d << solved.load() << "/20 solved and 512-bit verified; dependent control: "
    << (dep_res.found() ? "solved (!)" : orbit_failure_name(dep_res.failure))
    << (dep_res.witness ? " with relation witness" : "");
  res.detail = d.str();
  res.pass = solved.load() == trials && control_ok;
  return res;
}

// ---- criterion 4: shattering ----

CriterionResult criterion_shatter(std::uint64_t seed) {
  (void)seed;
  CriterionResult res{4, "shattering", false, 0, ""};
  std::vector<BigReal> pts{BigReal(0.5), sqrt_big(BigReal(2L)) / BigReal(2L),
                           sqrt_big(BigReal(3L)) / BigReal(2L)};
  int achieved = 0;
  for (int mask = 0; mask < 8; ++mask) {
    ShatterInstance inst;
    inst.points = pts;
    inst.margin = BigReal(0.1);
    for (int k = 0; k < 3; ++k) inst.pattern.push_back((mask >> k) & 1 ? 1 : -1);
    ShatterResult r = shatter(inst);
    bool ok = r.found();
    if (ok) {
      // Confirm the margins directly.
      for (int k = 0; k < 3; ++k) {
        BigReal v = r.params->c * sin_big(r.params->omega * pts[static_cast<std::size_t>(k)]);
        if (inst.pattern[static_cast<std::size_t>(k)] < 0) v = -v;
        ok = ok && v > inst.margin;
      }
    }
    if (ok) ++achieved;
  }

  // Forbidden sign configuration on a 5-term arithmetic progression.
  ShatterInstance prog;
  BigReal u(0.125), v(0.125);
  for (int k = 0; k < 5; ++k) prog.points.push_back(u + BigReal(k) * v);
  prog.pattern = {1, 1, 1, -1, 1};
  prog.margin = BigReal(0.5);
  ShatterResult forbidden = shatter(prog);

  std::vector<BigReal> targets;
  for (int s : prog.pattern) targets.push_back(BigReal(s > 0 ? 0.5 : -0.5));
  ObstructionReport obstruction =
      progression_fit_obstruction(1, u, v, targets, BigReal(1e-3), 16, seed + 7);

  std::ostringstream d;
  d << achieved << "/8 patterns at margin 0.1; +++-+ pattern: "
    << (forbidden.found() ? "found (!)" : orbit_failure_name(forbidden.detail.failure))
    << "; target det certificate " << (obstruction.target_certificate.pass ? "passes (!)" : "fails");
  res.detail = d.str();
  res.pass = achieved == 8 && !forbidden.found() && !obstruction.target_certificate.pass;
  return res;
}

// ---- criterion 5: resonance limits ----

CriterionResult criterion_resonance(std::uint64_t seed) {
  (void)seed;
  CriterionResult res{5, "resonance limits", false, 0, ""};
  const BigReal omega(3L), phase(0L);
  const long grid_n = 10'000;
  bool ok = true;
  std::ostringstream d;
  for (int m = 1; m <= 2; ++m) {
    auto target = [&](const BigReal& x) {
      return pow_big(x, m) * sin_big(omega * x + phase);
    };
    double prev_err = 0;
    for (double dw : {1e-2, 1e-3, 1e-4}) {
      ResonanceCombo combo = resonance_combo(omega, phase, m, BigReal(dw));
      FamilyParams fam = combo.waves;
      BigReal err = sup_distance([&](const BigReal& x) { return evaluate(fam, x); }, target,
                                 grid_n);
      ResonanceCombo half = resonance_combo(omega, phase, m, BigReal(dw / 2));
      FamilyParams famh = half.waves;
      BigReal errh = sup_distance([&](const BigReal& x) { return evaluate(famh, x); }, target,
                                  grid_n);
      const double ratio = (errh / err).to_double();
      const double lo = m == 1 ? 0.4 : 0.35;
      const double hi = m == 1 ? 0.6 : 0.65;
      ok = ok && ratio >= lo && ratio <= hi;
      d << "m=" << m << " dw=" << dw << " ratio=" << ratio << "; ";
      prev_err = err.to_double();
    }
    (void)prev_err;
  }
  // polynomial combination for the identity target
  for (double dw : {1e-2, 1e-3}) {
    ResonanceCombo combo = polynomial_combo(1, {BigReal(0L), BigReal(1L)}, BigReal(dw));
    FamilyParams fam = combo.waves;
    BigReal err = sup_distance([&](const BigReal& x) { return evaluate(fam, x); },
                               [](const BigReal& x) { return x; }, grid_n);
    const double cap = dw / 6.0 + 1e-9;
    ok = ok && err.to_double() <= cap;
    d << "poly dw=" << dw << " err=" << err.to_double() << " cap=" << cap << "; ";
  }
  res.detail = d.str();
  res.pass = ok;
  return res;
}

// ---- criterion 6: coefficient recovery ----

CriterionResult criterion_recovery(std::uint64_t seed) {
  CriterionResult res{6, "coefficient recovery", false, 0, ""};
  const int trials = 50;
  const BigReal tol = BigReal::pow2(-128);
  std::atomic<int> good{0};
  par::parallel_for(trials, [&](std::size_t i) {
    Rng rng = Rng::stream(seed, 600 + i);
    const int n_budget = 1 + static_cast<int>(rng.below(3));
    // Multiplicity split of the budget.
    std::vector<int> mults;
    int left = n_budget;
    while (left > 0) {
      int m = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(left)));
      mults.push_back(m);
      left -= m;
    }
    RecoveryInstance inst;
    std::vector<double> args;
    bool used_real = false;
    for (std::size_t r = 0; r < mults.size(); ++r) {
      if (!used_real && rng.uniform01() < 0.25) {
        inst.roots.push_back(RootSpec{BigComplex(BigReal(rng.sign() > 0 ? 1L : -1L),
                                                 BigReal(0L)),
                                      mults[r]});
        used_real = true;
        continue;
      }
      double arg;
      bool fresh = false;
      int guard = 0;
      do {
        arg = rng.uniform(0.15, 3.0);
        fresh = true;
        for (double a : args) fresh = fresh && std::fabs(a - arg) >= 0.12;
      } while (!fresh && ++guard < 100);
      args.push_back(arg);
      inst.roots.push_back(RootSpec{unit_circle(BigReal(arg)), mults[r]});
    }
    // Synthesize samples from random coefficients.
    std::vector<RecoveredComponent> truth;
    for (const RootSpec& root : inst.roots) {
      bool real_root = abs(root.z.im) < BigReal(1e-9);
      int degrees = real_root ? 2 * root.multiplicity : root.multiplicity;
      for (int deg = 0; deg < degrees; ++deg) {
        BigComplex b(rng.uniform(-1.0, 1.0), real_root ? 0.0 : rng.uniform(-1.0, 1.0));
        truth.push_back(RecoveredComponent{root.z, deg, b, real_root});
      }
    }
    const long len = 2L * n_budget + 2;
    inst.samples = synthesize_samples(truth, len);
    RecoveryResult rec = recover_coefficients(inst);
    BigReal worst(0L);
    for (const RecoveredComponent& t : truth) {
      bool matched = false;
      for (const RecoveredComponent& c : rec.components) {
        if (c.degree == t.degree && (c.z - t.z).abs() < BigReal(1e-9)) {
          worst = max_big(worst, (c.coeff - t.coeff).abs());
          matched = true;
        }
      }
      if (!matched) worst = BigReal(1L);
    }
    if (worst < tol) good.fetch_add(1);
  });
  res.detail = std::to_string(good.load()) + "/50 round trips below 2^-128";
  res.pass = good.load() == trials;
  return res;
}

// ---- criterion 7: derivative bound ----

CriterionResult criterion_derivative_bound(std::uint64_t seed) {
  CriterionResult res{7, "derivative bound", false, 0, ""};
  const int trials = 100;
  std::atomic<int> good{0};
  par::parallel_for(trials, [&](std::size_t i) {
    Rng rng = Rng::stream(seed, 700 + i);
    const int n_waves = 1 + static_cast<int>(rng.below(4));
    SineSumParams p;
    for (int k = 0; k < n_waves; ++k) {
      p.waves.push_back(Wave{BigReal(rng.uniform(-2.0, 2.0)), BigReal(rng.uniform(-20.0, 20.0)),
                             BigReal(rng.uniform(0.0, 6.283185307179586))});
    }
    const int order = 1 + static_cast<int>(i % 3);
    Certificate c = derivative_bound_check(p, order, BigReal(20L), 800);
    if (c.pass) good.fetch_add(1);
  });
  res.detail = std::to_string(good.load()) + "/100 members satisfy the bound";
  res.pass = good.load() == trials;
  return res;
}

// ---- criterion 8: van der Waerden machinery ----

struct GeneratedNet {
  NetworkGraph net;
  int s_tilde = 3;
  int p = 1;
  int exp_degree = 1;
};

GeneratedNet random_single_transcendental_net(Rng& rng, double a, double b) {
  GeneratedNet out;
  const Act sigmas[] = {Act::sigmoid, Act::tanh, Act::elu, Act::gaussian};
  const Act sigma = sigmas[rng.below(4)];
  int n_pre = 0;
  if (sigma == Act::elu) {
    n_pre = 0;  // the elu kink itself supplies the two colors
    out.p = 2;
    out.s_tilde = 3;
  } else if (sigma == Act::gaussian) {
    n_pre = static_cast<int>(rng.below(2));
    out.p = n_pre + 1;
    out.s_tilde = 4;
    out.exp_degree = 2;
  } else {
    n_pre = static_cast<int>(rng.below(3));
    out.p = n_pre + 1;
    out.s_tilde = 3;
  }

  NetworkGraph& net = out.net;
  net.input_id = 0;
  net.output_id = 1;
  net.nodes.push_back(Node{0, Act::input, BigReal(0L), {}, BigReal(0L)});
  int next = 2;
  std::vector<int> pre_ids;
  for (int i = 0; i < n_pre; ++i) {
    const Act acts[] = {Act::relu, Act::leaky_relu, Act::step};
    Act act = acts[rng.below(3)];
    double w = rng.uniform(0.5, 1.5) * rng.sign();
    double kink = rng.uniform(a + 0.1, b - 0.1);
    Node node{next++, act, BigReal(0.2), {Edge{0, BigReal(w)}}, BigReal(-w * kink)};
    pre_ids.push_back(node.id);
    net.nodes.push_back(node);
  }
  // The single transcendental neuron reads x and the piecewise outputs.
  Node trans{next++, sigma, BigReal(0L), {}, BigReal(rng.uniform(-0.5, 0.5))};
  trans.inputs.push_back(Edge{0, BigReal(rng.uniform(0.4, 1.2) * rng.sign())});
  for (int id : pre_ids) trans.inputs.push_back(Edge{id, BigReal(rng.uniform(0.3, 0.8) * rng.sign())});
  if (sigma == Act::elu) trans.act_param = BigReal(rng.uniform(0.5, 1.5));
  net.nodes.push_back(trans);

  Node output{1, Act::identity, BigReal(0L), {}, BigReal(rng.uniform(-0.5, 0.5))};
  output.inputs.push_back(Edge{trans.id, BigReal(rng.uniform(0.5, 1.5) * rng.sign())});
  if (rng.uniform01() < 0.5) output.inputs.push_back(Edge{0, BigReal(rng.uniform(-0.8, 0.8))});
  if (!pre_ids.empty() && rng.uniform01() < 0.5) {
    output.inputs.push_back(Edge{pre_ids[0], BigReal(rng.uniform(-0.8, 0.8))});
  }
  net.nodes.push_back(output);
  return out;
}

CriterionResult criterion_vdw(std::uint64_t seed) {
  CriterionResult res{8, "van der Waerden machinery", false, 0, ""};
  // Every 2-coloring of {1..9} holds a monochromatic 3-term progression.
  int colored_ok = 0;
  for (int mask = 0; mask < (1 << 9); ++mask) {
    Coloring c;
    for (int i = 0; i < 9; ++i) c.colors.push_back((mask >> i) & 1);
    if (find_monochromatic_ap(c, 3)) ++colored_ok;
  }
  // ...and a specific 2-coloring of {1..8} holds none.
  Coloring eight;
  for (int col : {0, 0, 1, 1, 0, 0, 1, 1}) eight.colors.push_back(col);
  const bool eight_free = !find_monochromatic_ap(eight, 3).has_value();

  const int trials = 50;
  std::atomic<int> nets_ok{0};
  par::parallel_for(trials, [&](std::size_t i) {
    Rng rng = Rng::stream(seed, 800 + i);
    const double a = 0.05, b = 0.95;
    GeneratedNet gen = random_single_transcendental_net(rng, a, b);
    if (!validate_single_transcendental(gen.net).ok) return;
    const long m = n_vdw_bound(gen.s_tilde, gen.p) - 1;
    // The theorem's generic grid bound must dominate the special-case size.
    if (gen.s_tilde - 1 > constraint_grid_size(1, 1, 1, gen.exp_degree)) return;
    BigReal av(a), bv(b);
    BigReal h = (bv - av) / BigReal(m);
    ColoringResult coloring = branch_coloring(gen.net, av, h, m);
    if (static_cast<int>(coloring.color_traces.size()) > gen.p) return;
    auto colorer = [&](const BigReal& x) {
      long idx = round_big((x - av) / h).to_long();
      return coloring.coloring.colors.at(static_cast<std::size_t>(idx));
    };
    auto sub = make_branch_sub_certifier(gen.net, coloring.color_traces);
    auto g = [&](const BigReal& x) { return eval_network(gen.net, x).value; };
    try {
      Certificate c = vdw_composite_certificate(g, av, bv, colorer, sub, gen.s_tilde, gen.p);
      if (c.pass) nets_ok.fetch_add(1);
    } catch (const Error&) {
      // counted as failure
    }
  });

  std::ostringstream d;
  d << colored_ok << "/512 colorings of {1..9} have a mono 3-AP; {1..8} control "
    << (eight_free ? "has none" : "has one (!)") << "; " << nets_ok.load()
    << "/50 composite certificates pass";
  res.detail = d.str();
  res.pass = colored_ok == 512 && eight_free && nets_ok.load() == trials;
  return res;
}

// ---- criterion 9: finite-set fitting ----

CriterionResult criterion_fitting(std::uint64_t seed) {
  CriterionResult res{9, "finite-set fitting", false, 0, ""};
  std::ostringstream d;

  auto random_dataset = [&](Rng& rng, int k, FitInstance& inst) {
    inst.xs.clear();
    inst.ys.clear();
    for (int i = 0; i < k; ++i) {
      inst.xs.push_back(BigReal(rng.uniform(0.02, 0.98) + 1e-4 * i));
      inst.ys.push_back(BigReal(rng.uniform(-1.0, 1.0)));
    }
  };

  int sigma_ok = 0, h5_ok = 0;
  for (int t = 0; t < 10; ++t) {
    Rng rng = Rng::stream(seed, 900 + static_cast<std::uint64_t>(t));
    FitInstance inst;
    SigmaSineParams shape;
    shape.sigma = SigmaKind::sigmoid;
    inst.shape = shape;
    inst.eps = BigReal(1e-3);
    inst.restarts = 64;
    random_dataset(rng, 5, inst);
    FitReport r = fit_family(inst, seed * 31 + static_cast<std::uint64_t>(t));
    if (r.verdict == FitVerdict::achieved) ++sigma_ok;
  }
  for (int t = 0; t < 10; ++t) {
    Rng rng = Rng::stream(seed, 950 + static_cast<std::uint64_t>(t));
    FitInstance inst;
    SineOfSineParams shape;
    shape.inner.waves.push_back(Wave{BigReal(0L), BigReal(0L), BigReal(0L)});
    inst.shape = shape;
    inst.eps = BigReal(1e-3);
    inst.restarts = 64;
    random_dataset(rng, 5, inst);
    FitReport r = fit_family(inst, seed * 37 + static_cast<std::uint64_t>(t));
    if (r.verdict == FitVerdict::achieved) ++h5_ok;
  }

  // Polynomial sigma control: fixed-size family against 9 generic points.
  Rng rng = Rng::stream(seed, 990);
  FitInstance control;
  SigmaSineParams poly_shape;
  poly_shape.sigma = SigmaKind::poly;
  poly_shape.poly_coeffs = {BigReal(0.1), BigReal(0.7), BigReal(-0.4)};
  control.shape = poly_shape;
  control.eps = BigReal(1e-3);
  control.restarts = 64;
  random_dataset(rng, 9, control);
  FitReport cr = fit_family(control, seed * 41);
  const bool control_ok = cr.verdict == FitVerdict::floor_detected &&
                          cr.max_residual > BigReal(1e-2, 128);

  d << "sigmoid " << sigma_ok << "/10 achieved; H5 " << h5_ok
    << "/10 achieved; polynomial-sigma control " << fit_verdict_name(cr.verdict)
    << " at floor " << cr.max_residual.decimal(4);
  res.detail = d.str();
  res.pass = sigma_ok >= 9 && h5_ok >= 9 && control_ok;
  return res;
}

// ---- criterion 10: networks ----

CriterionResult criterion_networks(std::uint64_t seed) {
  CriterionResult res{10, "universal network and multiplication gadget", false, 0, ""};
  Rng rng = Rng::stream(seed, 1000);
  std::vector<BigReal> weights;
  for (std::size_t i = 0; i < universal_net_parameter_count(); ++i) {
    weights.push_back(BigReal(rng.uniform(-0.4, 0.4)));
  }
  NetworkGraph fig = build_universal_sin_arcsin(weights);
  bool evals = true;
  for (double x : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    try {
      evals = evals && eval_network(fig, BigReal(x)).value.is_finite();
    } catch (const Error&) {
      evals = false;
    }
  }
  const bool fails_path_rule = !validate_single_transcendental(fig).ok;

  auto max_gadget_error = [&](double eps) {
    BigReal worst(0L);
    for (int i = -10; i <= 10; ++i) {
      for (int j = -10; j <= 10; ++j) {
        BigReal z1(i / 10.0), z2(j / 10.0);
        MultApprox ap = mult_via_sines(z1, z2, BigReal(eps));
        worst = max_big(worst, abs(ap.value - z1 * z2));
      }
    }
    return worst;
  };
  BigReal e1 = max_gadget_error(0.1);
  BigReal e2 = max_gadget_error(0.05);
  BigReal e3 = max_gadget_error(0.025);
  const double r1 = (e2 / e1).to_double();
  const double r2 = (e3 / e2).to_double();
  const bool quarters = r1 >= 0.15 && r1 <= 0.35 && r2 >= 0.15 && r2 <= 0.35;

  EntropyBound eb = entropy_bound(4, 32, BigReal(1L), BigReal::pow2(-7));

  std::ostringstream d;
  d << "fixed net evaluates: " << (evals ? "yes" : "no") << ", violates single-layer rule: "
    << (fails_path_rule ? "yes" : "no") << "; gadget error ratios " << r1 << ", " << r2
    << "; entropy bound " << eb.max_n;
  res.detail = d.str();
  res.pass = evals && fails_path_rule && quarters && eb.max_n == 18;
  return res;
}

}  // namespace

std::vector<CriterionResult> run_acceptance_suite(const SuiteOptions& opts,
                                                  std::ostream* progress) {
  using Fn = CriterionResult (*)(std::uint64_t);
  std::vector<CriterionResult> out;
  const Fn fns[] = {criterion_det,      criterion_exp_poly,        criterion_kronecker,
                    criterion_shatter,  criterion_resonance,       criterion_recovery,
                    criterion_derivative_bound, criterion_vdw,     criterion_fitting,
                    criterion_networks};
  for (Fn fn : fns) {
    auto start = clock_type::now();
    CriterionResult r = fn(opts.seed);
    r.seconds = std::chrono::duration<double>(clock_type::now() - start).count();
    if (progress) {
      (*progress) << "criterion " << r.index << " [" << (r.pass ? "PASS" : "FAIL") << "] "
                  << r.name << " (" << r.seconds << " s): " << r.detail << "\n";
      progress->flush();
    }
    out.push_back(std::move(r));
  }
  return out;
}

bool all_pass(const std::vector<CriterionResult>& results) {
  for (const CriterionResult& r : results) {
    if (!r.pass) return false;
  }
  return results.size() == 10;
}

}  // namespace xpr::suite
