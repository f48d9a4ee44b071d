// xprlab: command-line front end for the approximation-formula laboratory.
// JSON results go to stdout, diagnostics to stderr. Exit codes: 0 pass or
// success, 1 fail verdicts (failed certificate, NotFound, floor), 2 usage.

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <sstream>

#include "xpr/certify.hpp"
#include "xpr/errors.hpp"
#include "xpr/families.hpp"
#include "xpr/fitlab.hpp"
#include "xpr/json_io.hpp"
#include "xpr/kronecker.hpp"
#include "xpr/limits.hpp"
#include "xpr/netlab.hpp"
#include "xpr/parallel.hpp"
#include "xpr/rng.hpp"
#include "xpr/suite.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

using xpr::BigReal;
using json = nlohmann::json;

struct GlobalOptions {
  long bits = 256;
  std::uint64_t seed = 1;
  std::string command_line;
};

json result_envelope(const GlobalOptions& g) {
  return json{{"tool", "xprlab"},
              {"version", kVersion},
              {"bits", g.bits},
              {"seed", g.seed},
              {"command", g.command_line}};
}

void emit(const json& j) { std::cout << j.dump(2) << std::endl; }

BigReal parse_real(const std::string& s) { return BigReal::from_string(s); }

std::vector<BigReal> parse_real_list(const std::string& s) {
  std::vector<BigReal> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(parse_real(item));
  }
  return out;
}

struct GridSpec {
  BigReal a, h;
  long m = 0;
};

GridSpec parse_grid(const std::string& s) {
  auto parts = parse_real_list(s);
  if (parts.size() != 3) throw xpr::UsageError("grid spec must be a,h,m");
  return GridSpec{parts[0], parts[1], parts[2].to_long()};
}

json fit_report_json(const xpr::FitReport& r) {
  json residuals = json::array();
  for (const BigReal& v : r.residuals) residuals.push_back(xpr::io::to_json(v));
  return json{{"best", xpr::io::to_json(r.best)},
              {"residuals", residuals},
              {"max_residual", xpr::io::to_json(r.max_residual)},
              {"restarts_used", r.restarts_used},
              {"verdict", xpr::fit_verdict_name(r.verdict)}};
}

json orbit_json(const xpr::OrbitResult& r) {
  json out;
  if (r.found()) {
    json residuals = json::array();
    for (const BigReal& v : r.solution->residuals) residuals.push_back(xpr::io::to_json(v));
    out["omega"] = xpr::io::to_json(r.solution->omega);
    out["residuals"] = residuals;
    out["verified"] = r.solution->verified;
    out["method"] = r.solution->method;
  } else {
    out["not_found"] = xpr::orbit_failure_name(r.failure);
    if (r.witness) {
      out["witness"] = json{{"relation", r.witness->relation},
                            {"offset", xpr::io::to_json(r.witness->offset)},
                            {"bound", xpr::io::to_json(r.witness->bound)}};
    }
    if (r.scanned_period) out["scanned_period"] = xpr::io::to_json(*r.scanned_period);
  }
  return out;
}

// Applies --config file values as defaults: each key/value becomes a flag
// unless it already appears on the command line.
std::vector<std::string> apply_config(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::string config_path;
  for (std::size_t i = 0; i + 1 < args.size(); ++i) {
    if (args[i] == "--config") config_path = args[i + 1];
  }
  if (config_path.empty()) return args;
  json cfg = xpr::io::load_json_file(config_path);
  for (auto it = cfg.begin(); it != cfg.end(); ++it) {
    const std::string flag = "--" + it.key();
    if (std::find(args.begin(), args.end(), flag) != args.end()) continue;
    args.push_back(flag);
    if (!it.value().is_boolean()) {
      args.push_back(it.value().is_string() ? it.value().get<std::string>()
                                            : it.value().dump());
    }
  }
  return args;
}

}  // namespace

int main(int argc, char** argv) {
  GlobalOptions g;
  for (int i = 0; i < argc; ++i) {
    if (i) g.command_line += " ";
    g.command_line += argv[i];
  }
  if (const char* env_bits = std::getenv("XPRLAB_BITS")) {
    g.bits = std::atol(env_bits);
  }

  CLI::App app{"numerical laboratory for fixed-size approximation formulas"};
  // --h is a documented option (a phase), so help must not own -h.
  app.set_help_flag("--help", "print help and exit");
  app.set_help_all_flag("--help-all");
  app.add_option("--bits", g.bits, "working precision in bits (or XPRLAB_BITS)");
  app.add_option("--seed", g.seed, "master random seed");
  std::string config_path;
  app.add_option("--config", config_path, "JSON file with default flag values");
  app.require_subcommand(1);

  // ---- kronecker ----
  auto* kron = app.add_subcommand("kronecker", "single-sine fitting on finite point sets");
  std::string kron_points, kron_targets, kron_eps = "0.05", kron_budget = "1e8";
  bool kron_angles = false;
  kron->add_option("--points", kron_points, "JSON array or comma list of points")->required();
  kron->add_option("--targets", kron_targets, "JSON array or comma list of targets")->required();
  kron->add_option("--eps", kron_eps, "tolerance");
  kron->add_option("--budget", kron_budget, "frequency budget");
  kron->add_flag("--angles", kron_angles, "targets are angles for the orbit solver");

  // ---- certify ----
  auto* certify = app.add_subcommand("certify", "polynomial constraint certificates");
  certify->require_subcommand(1);
  auto* cert_det = certify->add_subcommand("det", "determinant certificate");
  std::string det_family, det_x0 = "0", det_alphas, det_betas, det_tol;
  cert_det->add_option("--family", det_family, "family JSON file")->required();
  cert_det->add_option("--x0", det_x0, "base point");
  cert_det->add_option("--alphas", det_alphas, "comma list (2N+1 values)")->required();
  cert_det->add_option("--betas", det_betas, "comma list (2N+1 values)")->required();
  cert_det->add_option("--tol", det_tol, "tolerance override");

  auto* cert_exp = certify->add_subcommand("exppoly", "exponential-of-polynomial identity");
  std::string exp_family, exp_grid, exp_tol;
  int exp_degree = 1;
  cert_exp->add_option("--family", exp_family, "family JSON file")->required();
  cert_exp->add_option("--grid", exp_grid, "a,h,m")->required();
  cert_exp->add_option("--degree", exp_degree, "exponent degree d");
  cert_exp->add_option("--tol", exp_tol, "tolerance override");

  auto* cert_vdw = certify->add_subcommand("vdw", "branching composite certificate");
  std::string vdw_net, vdw_a = "0.05", vdw_b = "0.95";
  int vdw_s = 3, vdw_p = 2;
  cert_vdw->add_option("--net", vdw_net, "network JSON file")->required();
  cert_vdw->add_option("--a", vdw_a, "interval start");
  cert_vdw->add_option("--b", vdw_b, "interval end");
  cert_vdw->add_option("--stilde", vdw_s, "sub-progression length");
  cert_vdw->add_option("--p", vdw_p, "color budget");

  // ---- limits ----
  auto* limits = app.add_subcommand("limits", "limit points and coefficient recovery");
  limits->require_subcommand(1);
  auto* lim_res = limits->add_subcommand("resonance", "monomial-times-sine limit");
  std::string res_omega = "3", res_h = "0", res_dw = "1e-3", res_sweep, res_plot;
  int res_m = 1;
  lim_res->add_option("--omega", res_omega, "carrier frequency");
  lim_res->add_option("--h", res_h, "carrier phase");
  lim_res->add_option("--m", res_m, "monomial degree");
  lim_res->add_option("--dw", res_dw, "frequency spacing");
  lim_res->add_option("--sweep", res_sweep, "comma list of dw values for a convergence sweep");
  lim_res->add_option("--plot", res_plot, "CSV output path for the sweep");

  auto* lim_poly = limits->add_subcommand("polycombo", "polynomial limit");
  std::string poly_coeffs, poly_dw = "1e-3";
  int poly_m0 = 1;
  lim_poly->add_option("--m0", poly_m0, "wave budget M0");
  lim_poly->add_option("--coeffs", poly_coeffs, "target coefficients, ascending")->required();
  lim_poly->add_option("--dw", poly_dw, "frequency spacing");

  auto* lim_rec = limits->add_subcommand("recover", "coefficient recovery from samples");
  std::string rec_samples, rec_roots;
  lim_rec->add_option("--samples", rec_samples, "CSV file (index,x,value)")->required();
  lim_rec->add_option("--roots", rec_roots, "JSON file: [{\"z\":{...},\"multiplicity\":k}]")
      ->required();

  auto* lim_path = limits->add_subcommand("sigmapath", "limit paths of the sigma-sine family");
  std::string path_kind = "affine-sigma", path_sigma = "sigmoid", path_t = "0.01";
  std::string path_a = "1", path_b = "0.5", path_c = "0", path_a0 = "0", path_ar = "1";
  int path_r = 1;
  lim_path->add_option("--kind", path_kind, "affine-sigma | monomial | sine-of-monomial");
  lim_path->add_option("--sigma", path_sigma, "sigmoid|tanh|gaussian|sin");
  lim_path->add_option("--t", path_t, "path parameter in (0,1]");
  lim_path->add_option("--a", path_a, "target a (affine-sigma)");
  lim_path->add_option("--b", path_b, "target b (affine-sigma)");
  lim_path->add_option("--c", path_c, "target c");
  lim_path->add_option("--a0", path_a0, "target a0");
  lim_path->add_option("--ar", path_ar, "target ar");
  lim_path->add_option("--r", path_r, "target exponent");

  // ---- net ----
  auto* net_cmd = app.add_subcommand("net", "network evaluation and validation");
  net_cmd->require_subcommand(1);
  auto* net_eval = net_cmd->add_subcommand("eval", "evaluate a network");
  std::string neteval_file, neteval_x = "0.5";
  net_eval->add_option("--net", neteval_file, "network JSON file")->required();
  net_eval->add_option("--x", neteval_x, "input value");
  auto* net_validate = net_cmd->add_subcommand("validate", "single-transcendental path rule");
  std::string netval_file;
  net_validate->add_option("--net", netval_file, "network JSON file")->required();
  auto* net_color = net_cmd->add_subcommand("color", "branch coloring on a grid");
  std::string netcol_file, netcol_grid;
  net_color->add_option("--net", netcol_file, "network JSON file")->required();
  net_color->add_option("--grid", netcol_grid, "a,h,m")->required();
  auto* net_fig1 = net_cmd->add_subcommand("fig1", "fixed universal sin/arcsin network");
  std::string fig1_weights, fig1_out;
  net_fig1->add_option("--weights", fig1_weights, "JSON file with the weight vector");
  net_fig1->add_option("--out", fig1_out, "write the network JSON here");

  // ---- fit ----
  auto* fit_cmd = app.add_subcommand("fit", "multi-start nonlinear least squares");
  std::string fit_family, fit_data, fit_eps = "1e-3";
  int fit_restarts = 64;
  fit_cmd->add_option("--family", fit_family, "family JSON file (shape)")->required();
  fit_cmd->add_option("--data", fit_data, "CSV file (index,x,value)")->required();
  fit_cmd->add_option("--eps", fit_eps, "target residual");
  fit_cmd->add_option("--restarts", fit_restarts, "restart count");

  // ---- bound ----
  auto* bound_cmd = app.add_subcommand("bound", "information bound on approximation accuracy");
  int bound_p = 0, bound_B = 0;
  std::string bound_M = "1", bound_eps;
  bound_cmd->add_option("--p", bound_p, "parameter count")->required();
  bound_cmd->add_option("--B", bound_B, "bits per parameter")->required();
  bound_cmd->add_option("--M", bound_M, "amplitude bound");
  bound_cmd->add_option("--eps", bound_eps, "accuracy")->required();

  // ---- suite ----
  auto* suite_cmd = app.add_subcommand("suite", "run the acceptance battery");
  (void)suite_cmd;

  // Global flags (--bits, --seed, --config) may follow a subcommand.
  std::function<void(CLI::App*)> enable_fallthrough = [&](CLI::App* a) {
    a->fallthrough(true);
    for (CLI::App* sub : a->get_subcommands([](CLI::App*) { return true; })) {
      enable_fallthrough(sub);
    }
  };
  enable_fallthrough(&app);

  std::vector<std::string> args = apply_config(argc, argv);
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    if (app.exit(e) == 0) return 0;
    return 2;
  } catch (const xpr::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    xpr::precision::set_default_bits(g.bits);
    json out = result_envelope(g);

    auto parse_list_arg = [](const std::string& s) {
      if (!s.empty() && s.front() == '[') {
        std::vector<BigReal> out_list;
        for (const json& v : json::parse(s)) out_list.push_back(xpr::io::bigreal_from_json(v));
        return out_list;
      }
      return parse_real_list(s);
    };

    if (*kron) {
      auto points = parse_list_arg(kron_points);
      auto targets = parse_list_arg(kron_targets);
      if (kron_angles) {
        xpr::DiophantineInstance inst;
        inst.points = points;
        inst.angles = targets;
        inst.eps = parse_real(kron_eps);
        inst.omega_max = parse_real(kron_budget);
        xpr::OrbitResult r = xpr::solve_orbit(inst);
        out.update(orbit_json(r));
        emit(out);
        return r.found() ? 0 : 1;
      }
      xpr::SineFitResult r = xpr::fit_single_sine(points, targets, parse_real(kron_eps));
      if (r.found()) {
        json residuals = json::array();
        for (const BigReal& v : r.fit->residuals) residuals.push_back(xpr::io::to_json(v));
        out["omega"] = xpr::io::to_json(r.fit->omega);
        out["c"] = xpr::io::to_json(r.fit->c);
        out["residuals"] = residuals;
        out["verified"] = r.fit->verified;
        out["method"] = r.fit->method;
        emit(out);
        return 0;
      }
      out.update(orbit_json(r.orbit));
      emit(out);
      return 1;
    }

    if (*cert_det) {
      xpr::FamilyParams fam = xpr::io::family_from_json(xpr::io::load_json_file(det_family));
      auto alphas = parse_real_list(det_alphas);
      auto betas = parse_real_list(det_betas);
      int n_waves = (static_cast<int>(alphas.size()) - 1) / 2;
      auto g_fn = [&](const BigReal& x) { return xpr::evaluate(fam, x); };
      std::optional<BigReal> tol;
      if (!det_tol.empty()) tol = parse_real(det_tol);
      xpr::Certificate c =
          xpr::det_certificate(g_fn, parse_real(det_x0), alphas, betas, n_waves, tol);
      out.update(xpr::io::to_json(c));
      emit(out);
      return c.pass ? 0 : 1;
    }

    if (*cert_exp) {
      xpr::FamilyParams fam = xpr::io::family_from_json(xpr::io::load_json_file(exp_family));
      GridSpec gs = parse_grid(exp_grid);
      xpr::SampleGrid grid = xpr::sample(fam, gs.a, gs.h, gs.m);
      std::optional<BigReal> tol;
      if (!exp_tol.empty()) tol = parse_real(exp_tol);
      xpr::Certificate c = xpr::exp_poly_certificate(grid, exp_degree, tol);
      out.update(xpr::io::to_json(c));
      emit(out);
      return c.pass ? 0 : 1;
    }

    if (*cert_vdw) {
      xpr::NetworkGraph net = xpr::io::network_from_json(xpr::io::load_json_file(vdw_net));
      BigReal a = parse_real(vdw_a), b = parse_real(vdw_b);
      const long m = xpr::n_vdw_bound(vdw_s, vdw_p) - 1;
      BigReal h = (b - a) / BigReal(m);
      xpr::ColoringResult coloring = xpr::branch_coloring(net, a, h, m);
      auto colorer = [&](const BigReal& x) {
        long idx = xpr::round_big((x - a) / h).to_long();
        return coloring.coloring.colors.at(static_cast<std::size_t>(idx));
      };
      auto sub = xpr::make_branch_sub_certifier(net, coloring.color_traces);
      auto g_fn = [&](const BigReal& x) { return xpr::eval_network(net, x).value; };
      xpr::Certificate c =
          xpr::vdw_composite_certificate(g_fn, a, b, colorer, sub, vdw_s, vdw_p);
      out.update(xpr::io::to_json(c));
      emit(out);
      return c.pass ? 0 : 1;
    }

    if (*lim_res) {
      BigReal omega = parse_real(res_omega), phase = parse_real(res_h);
      auto target = [&](const BigReal& x) {
        return xpr::pow_big(x, res_m) * xpr::sin_big(omega * x + phase);
      };
      if (!res_sweep.empty()) {
        std::vector<BigReal> dws = parse_real_list(res_sweep);
        std::vector<BigReal> errs;
        for (const BigReal& dw : dws) {
          xpr::ResonanceCombo combo = xpr::resonance_combo(omega, phase, res_m, dw);
          xpr::FamilyParams fam = combo.waves;
          errs.push_back(xpr::sup_distance(
              [&](const BigReal& x) { return xpr::evaluate(fam, x); }, target, 10000));
        }
        std::string csv = xpr::io::series_to_csv({"dw", "sup_error"}, {dws, errs});
        if (!res_plot.empty()) {
          xpr::io::write_text_file(res_plot, csv);
          out["plot"] = res_plot;
        }
        json rows = json::array();
        for (std::size_t i = 0; i < dws.size(); ++i) {
          rows.push_back({{"dw", xpr::io::to_json(dws[i])}, {"sup_error", xpr::io::to_json(errs[i])}});
        }
        out["sweep"] = rows;
        emit(out);
        return 0;
      }
      xpr::ResonanceCombo combo = xpr::resonance_combo(omega, phase, res_m, parse_real(res_dw));
      xpr::FamilyParams fam = combo.waves;
      BigReal err = xpr::sup_distance([&](const BigReal& x) { return xpr::evaluate(fam, x); },
                                      target, 10000);
      out["waves"] = xpr::io::to_json(fam)["params"]["waves"];
      out["sup_error"] = xpr::io::to_json(err);
      out["overflow_warning"] = combo.overflow_warning;
      emit(out);
      return 0;
    }

    if (*lim_poly) {
      xpr::ResonanceCombo combo =
          xpr::polynomial_combo(poly_m0, parse_real_list(poly_coeffs), parse_real(poly_dw));
      xpr::FamilyParams fam = combo.waves;
      std::vector<BigReal> coeffs = parse_real_list(poly_coeffs);
      auto target = [&](const BigReal& x) {
        BigReal acc(0L);
        for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * x + coeffs[i];
        return acc;
      };
      BigReal err = xpr::sup_distance([&](const BigReal& x) { return xpr::evaluate(fam, x); },
                                      target, 10000);
      out["waves"] = xpr::io::to_json(fam)["params"]["waves"];
      out["sup_error"] = xpr::io::to_json(err);
      emit(out);
      return 0;
    }

    if (*lim_rec) {
      xpr::SampleGrid grid = xpr::io::grid_from_csv(xpr::io::read_text_file(rec_samples));
      xpr::RecoveryInstance inst;
      for (long k = 0; k <= grid.m; ++k) inst.samples.push_back(grid.real_value(k));
      for (const json& r : xpr::io::load_json_file(rec_roots)) {
        inst.roots.push_back(xpr::RootSpec{xpr::io::bigcomplex_from_json(r.at("z")),
                                           r.at("multiplicity").get<int>()});
      }
      xpr::RecoveryResult rec = xpr::recover_coefficients(inst);
      json comps = json::array();
      for (const auto& c : rec.components) {
        comps.push_back({{"z", xpr::io::to_json(c.z)},
                         {"degree", c.degree},
                         {"coeff", xpr::io::to_json(c.coeff)},
                         {"real_root", c.real_root}});
      }
      out["components"] = comps;
      out["roundtrip_residual"] = xpr::io::to_json(rec.roundtrip_residual);
      emit(out);
      return 0;
    }

    if (*lim_path) {
      xpr::LimitPathTarget target;
      target.a = parse_real(path_a);
      target.b = parse_real(path_b);
      target.c = parse_real(path_c);
      target.a0 = parse_real(path_a0);
      target.ar = parse_real(path_ar);
      target.r = path_r;
      xpr::LimitPathKind kind = xpr::limit_path_kind_from_name(path_kind);
      xpr::SigmaKind sk = xpr::sigma_kind_from_name(path_sigma);
      xpr::SigmaSineParams member = xpr::sigma_limit_path(kind, sk, {}, target, parse_real(path_t));
      xpr::FamilyParams fam = member;
      BigReal dist = xpr::sup_distance([&](const BigReal& x) { return xpr::evaluate(fam, x); },
                                       xpr::limit_path_target_fn(kind, sk, {}, target), 10000);
      out["member"] = xpr::io::to_json(fam);
      out["sup_distance"] = xpr::io::to_json(dist);
      emit(out);
      return 0;
    }

    if (*net_eval) {
      xpr::NetworkGraph net = xpr::io::network_from_json(xpr::io::load_json_file(neteval_file));
      xpr::EvalResult r = xpr::eval_network(net, parse_real(neteval_x));
      json branches = json::array();
      for (auto& [id, b] : r.trace.branches) branches.push_back({{"node", id}, {"branch", b}});
      out["value"] = xpr::io::to_json(r.value);
      out["trace"] = branches;
      emit(out);
      return 0;
    }

    if (*net_validate) {
      xpr::NetworkGraph net = xpr::io::network_from_json(xpr::io::load_json_file(netval_file));
      xpr::PathCheck r = xpr::validate_single_transcendental(net);
      out["ok"] = r.ok;
      if (!r.ok) out["violation_path"] = r.witness_path;
      emit(out);
      return r.ok ? 0 : 1;
    }

    if (*net_color) {
      xpr::NetworkGraph net = xpr::io::network_from_json(xpr::io::load_json_file(netcol_file));
      GridSpec gs = parse_grid(netcol_grid);
      xpr::ColoringResult r = xpr::branch_coloring(net, gs.a, gs.h, gs.m);
      out["colors"] = r.coloring.colors;
      out["color_count"] = r.color_traces.size();
      emit(out);
      return 0;
    }

    if (*net_fig1) {
      std::vector<BigReal> weights;
      if (!fig1_weights.empty()) {
        for (const json& w : xpr::io::load_json_file(fig1_weights)) {
          weights.push_back(xpr::io::bigreal_from_json(w));
        }
      } else {
        xpr::Rng rng(g.seed);
        for (std::size_t i = 0; i < xpr::universal_net_parameter_count(); ++i) {
          weights.push_back(BigReal(rng.uniform(-0.4, 0.4)));
        }
      }
      xpr::NetworkGraph net = xpr::build_universal_sin_arcsin(weights);
      json net_json = xpr::io::to_json(net);
      if (!fig1_out.empty()) {
        xpr::io::write_text_file(fig1_out, net_json.dump(2));
        out["written"] = fig1_out;
      }
      xpr::PathCheck pc = xpr::validate_single_transcendental(net);
      out["parameter_count"] = xpr::universal_net_parameter_count();
      out["single_transcendental"] = pc.ok;
      if (fig1_out.empty()) out["net"] = net_json;
      emit(out);
      return 0;
    }

    if (*fit_cmd) {
      xpr::FitInstance inst;
      inst.shape = xpr::io::family_from_json(xpr::io::load_json_file(fit_family));
      xpr::SampleGrid data = xpr::io::grid_from_csv(xpr::io::read_text_file(fit_data));
      for (long k = 0; k <= data.m; ++k) {
        inst.xs.push_back(data.x_at(k));
        inst.ys.push_back(data.real_value(k));
      }
      inst.eps = parse_real(fit_eps);
      inst.restarts = fit_restarts;
      xpr::FitReport r = xpr::fit_family(inst, g.seed);
      out.update(fit_report_json(r));
      emit(out);
      return r.verdict == xpr::FitVerdict::achieved ? 0 : 1;
    }

    if (*bound_cmd) {
      xpr::EntropyBound b =
          xpr::entropy_bound(bound_p, bound_B, parse_real(bound_M), parse_real(bound_eps));
      if (b.overflow) {
        out["max_N"] = "unbounded";
        out["overflow"] = true;
      } else {
        out["max_N"] = b.max_n;
      }
      emit(out);
      return 0;
    }

    if (*suite_cmd) {
      xpr::suite::SuiteOptions opts;
      opts.seed = g.seed == 1 ? xpr::suite::SuiteOptions{}.seed : g.seed;
      auto results = xpr::suite::run_acceptance_suite(opts, &std::cerr);
      json rows = json::array();
      for (const auto& r : results) {
        rows.push_back({{"index", r.index},
                        {"name", r.name},
                        {"pass", r.pass},
                        {"seconds", r.seconds},
                        {"detail", r.detail}});
      }
      out["criteria"] = rows;
      out["all_pass"] = xpr::suite::all_pass(results);
      emit(out);
      return xpr::suite::all_pass(results) ? 0 : 1;
    }

    std::cerr << "no subcommand selected\n";
    return 2;
  } catch (const xpr::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const xpr::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
