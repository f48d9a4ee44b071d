#include "xpr/netlab.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <map>
#include <set>

#include "xpr/errors.hpp"

namespace xpr {

Act act_from_name(const std::string& name) {
  static const std::map<std::string, Act> table = {
      {"identity", Act::identity}, {"step", Act::step},
      {"relu", Act::relu},         {"leaky_relu", Act::leaky_relu},
      {"sq_relu", Act::sq_relu},   {"sin", Act::sin},
      {"arcsin", Act::arcsin},     {"tanh", Act::tanh},
      {"sigmoid", Act::sigmoid},   {"elu", Act::elu},
      {"swish", Act::swish},       {"gaussian", Act::gaussian},
      {"multiply", Act::multiply}, {"input", Act::input}};
  auto it = table.find(name);
  if (it == table.end()) throw UsageError("unknown activation: " + name);
  return it->second;
}

const char* act_name(Act a) {
  switch (a) {
    case Act::identity: return "identity";
    case Act::step: return "step";
    case Act::relu: return "relu";
    case Act::leaky_relu: return "leaky_relu";
    case Act::sq_relu: return "sq_relu";
    case Act::sin: return "sin";
    case Act::arcsin: return "arcsin";
    case Act::tanh: return "tanh";
    case Act::sigmoid: return "sigmoid";
    case Act::elu: return "elu";
    case Act::swish: return "swish";
    case Act::gaussian: return "gaussian";
    case Act::multiply: return "multiply";
    case Act::input: return "input";
  }
  return "?";
}

bool act_is_piecewise(Act a) {
  switch (a) {
    case Act::step:
    case Act::relu:
    case Act::leaky_relu:
    case Act::sq_relu:
    case Act::elu:
      return true;
    default:
      return false;
  }
}

bool act_is_transcendental(Act a) {
  switch (a) {
    case Act::sin:
    case Act::arcsin:
    case Act::tanh:
    case Act::sigmoid:
    case Act::elu:
    case Act::swish:
    case Act::gaussian:
      return true;
    default:
      return false;
  }
}

const Node* NetworkGraph::find(int id) const {
  for (const Node& n : nodes) {
    if (n.id == id) return &n;
  }
  return nullptr;
}

std::vector<int> validate_network(const NetworkGraph& net) {
  std::map<int, const Node*> by_id;
  for (const Node& n : net.nodes) {
    if (!by_id.emplace(n.id, &n).second) {
      throw DomainError("network: duplicate node id " + std::to_string(n.id));
    }
  }
  if (by_id.count(net.input_id) == 0) {
    throw DomainError("network: input node missing");
  }
  const Node* in = by_id.at(net.input_id);
  if (!in->inputs.empty()) throw DomainError("network: input node must have no inputs");
  const Node* out = by_id.count(net.output_id) ? by_id.at(net.output_id) : nullptr;
  if (out == nullptr) throw DomainError("network: output node missing");
  if (out->act != Act::identity) {
    throw DomainError("network: output neuron must be an identity (affine) readout");
  }
  for (const Node& n : net.nodes) {
    if (n.act == Act::multiply && !n.bias.is_zero()) {
      throw DomainError("network: multiplication neuron " + std::to_string(n.id) +
                        " must have zero bias");
    }
    for (const Edge& e : n.inputs) {
      if (by_id.count(e.from) == 0) {
        throw DomainError("network: node " + std::to_string(n.id) + " reads undefined node " +
                          std::to_string(e.from));
      }
    }
  }
  // Kahn topological order, input first, ids ascending for determinism.
  std::map<int, int> indeg;
  std::map<int, std::vector<int>> consumers;
  for (const Node& n : net.nodes) indeg[n.id] = static_cast<int>(n.inputs.size());
  for (const Node& n : net.nodes) {
    for (const Edge& e : n.inputs) consumers[e.from].push_back(n.id);
  }
  std::set<int> ready;
  for (auto& [id, d] : indeg)
    if (d == 0) ready.insert(id);
  std::vector<int> order;
  while (!ready.empty()) {
    int id = *ready.begin();
    ready.erase(ready.begin());
    order.push_back(id);
    for (int c : consumers[id]) {
      if (--indeg[c] == 0) ready.insert(c);
    }
  }
  if (order.size() != net.nodes.size()) throw DomainError("network: cycle detected");
  return order;
}

std::string BranchTrace::key() const {
  std::string out;
  for (const auto& [id, b] : branches) {
    out += std::to_string(id) + ":" + std::to_string(b) + ";";
  }
  return out;
}

namespace {

BigReal act_param_or(const Node& n, double fallback, mpfr_prec_t bits) {
  if (n.act_param.is_zero()) return BigReal(fallback, bits);
  return n.act_param;
}

}  // namespace

EvalResult eval_network(const NetworkGraph& net, const BigReal& x) {
  const std::vector<int> order = validate_network(net);
  const mpfr_prec_t bits = x.bits();
  std::map<int, BigReal> value;
  EvalResult res{BigReal(0L, bits), {}};

  for (int id : order) {
    const Node& n = *net.find(id);
    if (id == net.input_id) {
      value.emplace(id, x);
      continue;
    }
    if (n.act == Act::multiply) {
      BigReal prod(1L, bits);
      for (const Edge& e : n.inputs) prod *= e.w * value.at(e.from);
      value.emplace(id, prod);
      continue;
    }
    BigReal pre = n.bias.round_to(bits);
    for (const Edge& e : n.inputs) pre += e.w * value.at(e.from);
    BigReal out(0L, bits);
    const int branch = pre.sign() >= 0 ? 1 : 0;
    switch (n.act) {
      case Act::identity:
        out = pre;
        break;
      case Act::step:
        out = BigReal(branch ? 1L : 0L, bits);
        break;
      case Act::relu:
        out = branch ? pre : BigReal(0L, bits);
        break;
      case Act::leaky_relu:
        out = branch ? pre : act_param_or(n, 0.01, bits) * pre;
        break;
      case Act::sq_relu:
        out = branch ? pre * pre : BigReal(0L, bits);
        break;
      case Act::sin:
        out = sin_big(pre);
        break;
      case Act::arcsin: {
        BigReal one(1L, bits);
        BigReal slop = BigReal::pow2(-static_cast<long>(bits) / 2, bits);
        if (abs(pre) > one + slop) {
          throw DomainError("arcsin input " + pre.decimal(6) + " outside [-1,1] at neuron " +
                            std::to_string(id));
        }
        out = asin_big(min_big(one, max_big(-one, pre)));
        break;
      }
      case Act::tanh:
        out = tanh_big(pre);
        break;
      case Act::sigmoid:
        out = BigReal(1L, bits) / (BigReal(1L, bits) + exp_big(-pre));
        break;
      case Act::elu:
        out = branch ? pre : act_param_or(n, 1.0, bits) * (exp_big(pre) - BigReal(1L, bits));
        break;
      case Act::swish:
        out = pre / (BigReal(1L, bits) + exp_big(-pre));
        break;
      case Act::gaussian:
        out = exp_big(-(pre * pre));
        break;
      case Act::multiply:
      case Act::input:
        throw InternalError("unreachable activation");
    }
    if (act_is_piecewise(n.act)) res.trace.branches.emplace_back(id, branch);
    value.emplace(id, out);
  }
  res.value = value.at(net.output_id);
  return res;
}

PathCheck validate_single_transcendental(const NetworkGraph& net) {
  const std::vector<int> order = validate_network(net);
  // Max transcendental count along any path from the input, plus a
  // predecessor pointer for witness reconstruction.
  std::map<int, int> count;
  std::map<int, int> pred;
  for (int id : order) {
    const Node& n = *net.find(id);
    int best = (id == net.input_id) ? 0 : -1;
    int arg = -1;
    for (const Edge& e : n.inputs) {
      auto it = count.find(e.from);
      if (it == count.end()) continue;  // not reachable from the input
      if (it->second > best) {
        best = it->second;
        arg = e.from;
      }
    }
    if (best < 0) continue;
    count[id] = best + (act_is_transcendental(n.act) ? 1 : 0);
    pred[id] = arg;
  }
  PathCheck out;
  auto it = count.find(net.output_id);
  if (it == count.end() || it->second <= 1) return out;
  out.ok = false;
  int cur = net.output_id;
  while (cur != -1) {
    out.witness_path.push_back(cur);
    cur = pred.count(cur) ? pred[cur] : -1;
  }
  std::reverse(out.witness_path.begin(), out.witness_path.end());
  return out;
}

ColoringResult branch_coloring(const NetworkGraph& net, const BigReal& a, const BigReal& h,
                               long m) {
  if (m < 0) throw LengthError("branch_coloring: m must be >= 0");
  ColoringResult out;
  std::map<std::string, int> seen;
  for (long j = 0; j <= m; ++j) {
    EvalResult r = eval_network(net, a + BigReal(j) * h);
    const std::string key = r.trace.key();
    auto it = seen.find(key);
    int color;
    if (it == seen.end()) {
      color = static_cast<int>(out.color_traces.size());
      seen.emplace(key, color);
      out.color_traces.push_back(r.trace);
    } else {
      color = it->second;
    }
    out.coloring.colors.push_back(color);
  }
  return out;
}

namespace {

/// Affine form p*T + q*x + r of a signal on a fixed branch, where T is the
/// output of the (single) transcendental neuron.
struct Affine {
  BigReal t, x, c;
  bool is_const() const { return t.is_zero() && x.is_zero(); }
};

struct TransRecord {
  Act kind = Act::identity;
  int branch = 1;
  BigReal u, v;  // transcendental input is u*x + v on this branch
  BigReal param; // elu slope
  bool present = false;
};

struct BranchForm {
  Affine out;
  TransRecord trans;
};

BranchForm propagate_branch(const NetworkGraph& net, const BranchTrace& trace,
                            mpfr_prec_t bits) {
  std::map<int, int> branch_of;
  for (const auto& [id, b] : trace.branches) branch_of[id] = b;
  const std::vector<int> order = validate_network(net);
  std::map<int, Affine> form;
  TransRecord trans;
  const BigReal zero(0L, bits), one(1L, bits);

  auto fold_sigma = [&](Act act, const BigReal& u, int branch, const BigReal& param) {
    switch (act) {
      case Act::sin: return sin_big(u);
      case Act::tanh: return tanh_big(u);
      case Act::sigmoid: return one / (one + exp_big(-u));
      case Act::gaussian: return exp_big(-(u * u));
      case Act::swish: return u / (one + exp_big(-u));
      case Act::elu:
        return branch ? u : param * (exp_big(u) - one);
      default:
        throw InternalError("fold_sigma: bad act");
    }
  };

  for (int id : order) {
    const Node& n = *net.find(id);
    if (id == net.input_id) {
      form[id] = Affine{zero, one, zero};
      continue;
    }
    if (n.act == Act::multiply) {
      // Product of affine signals stays affine only when at most one factor
      // is non-constant.
      BigReal scale(1L, bits);
      std::optional<Affine> var;
      for (const Edge& e : n.inputs) {
        Affine f = form.at(e.from);
        f.t *= e.w;
        f.x *= e.w;
        f.c *= e.w;
        if (f.is_const()) {
          scale *= f.c;
        } else if (!var) {
          var = f;
        } else {
          throw DomainError("branch certifier: multiplication of two non-constant signals");
        }
      }
      Affine out = var.value_or(Affine{zero, zero, one});
      out.t *= scale;
      out.x *= scale;
      out.c *= scale;
      form[id] = out;
      continue;
    }
    Affine pre{zero, zero, n.bias.round_to(bits)};
    for (const Edge& e : n.inputs) {
      const Affine& f = form.at(e.from);
      pre.t += e.w * f.t;
      pre.x += e.w * f.x;
      pre.c += e.w * f.c;
    }
    const int branch = branch_of.count(id) ? branch_of.at(id) : 1;
    Affine out = pre;
    switch (n.act) {
      case Act::identity:
        break;
      case Act::step:
        out = Affine{zero, zero, BigReal(branch ? 1L : 0L, bits)};
        break;
      case Act::relu:
        if (!branch) out = Affine{zero, zero, zero};
        break;
      case Act::leaky_relu:
        if (!branch) {
          BigReal a = act_param_or(n, 0.01, bits);
          out = Affine{a * pre.t, a * pre.x, a * pre.c};
        }
        break;
      case Act::sq_relu:
        if (!branch) {
          out = Affine{zero, zero, zero};
        } else if (pre.is_const()) {
          out = Affine{zero, zero, pre.c * pre.c};
        } else {
          throw DomainError("branch certifier: sq_relu of a non-constant signal");
        }
        break;
      case Act::elu:
        if (branch) break;  // linear side
        [[fallthrough]];
      case Act::sin:
      case Act::tanh:
      case Act::sigmoid:
      case Act::swish:
      case Act::gaussian: {
        BigReal param = act_param_or(n, 1.0, bits);
        if (pre.is_const()) {
          out = Affine{zero, zero, fold_sigma(n.act, pre.c, branch, param)};
          break;
        }
        if (!pre.t.is_zero()) {
          throw DomainError("branch certifier: transcendental fed by a transcendental");
        }
        if (trans.present) {
          throw DomainError("branch certifier: more than one transcendental neuron in use");
        }
        if (n.act == Act::sin) {
          throw DomainError("branch certifier: sin branches need the determinant route");
        }
        trans.present = true;
        trans.kind = n.act;
        trans.branch = branch;
        trans.u = pre.x;
        trans.v = pre.c;
        trans.param = param;
        out = Affine{one, zero, zero};
        break;
      }
      case Act::arcsin:
        if (pre.is_const()) {
          out = Affine{zero, zero, asin_big(pre.c)};
          break;
        }
        throw DomainError("branch certifier: arcsin is outside the certified activations");
      case Act::multiply:
      case Act::input:
        throw InternalError("unreachable");
    }
    form[id] = out;
  }
  return BranchForm{form.at(net.output_id), trans};
}

BigReal binomial_big(int n, int k, mpfr_prec_t bits) {
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  BigReal out = BigReal::zero(bits);
  mpfr_set_z(out.raw(), b.get_mpz_t(), MPFR_RNDN);
  return out;
}

/// Scale-free check that the window annihilates polynomials of degree <= d.
Certificate poly_annihilation_certificate(const SampleGrid& grid, int d, const BigReal& tol) {
  const mpfr_prec_t bits = grid.h.bits();
  if (grid.m < d + 1) throw LengthError("poly certificate: grid too short");
  BigReal worst(0L, bits);
  BigReal scale(1L, bits);
  for (long j = 0; j <= grid.m; ++j) scale = max_big(scale, grid.value(j).abs());
  scale *= BigReal::pow2(d + 1, bits);
  for (long j = 0; j + d + 1 <= grid.m; ++j) {
    BigReal acc(0L, bits);
    for (int k = 0; k <= d + 1; ++k) {
      BigReal coeff = binomial_big(d + 1, k, bits);
      if ((d + 1 - k) % 2 == 1) coeff = -coeff;
      acc += coeff * grid.real_value(j + k);
    }
    worst = max_big(worst, abs(acc));
  }
  return Certificate::make(CertificateKind::exp_poly, worst / scale, tol, "poly branch");
}

}  // namespace

SubCertifier make_branch_sub_certifier(const NetworkGraph& net,
                                       std::vector<BranchTrace> color_traces) {
  return [net, traces = std::move(color_traces)](const SampleGrid& sub, int color) {
    if (color < 0 || color >= static_cast<int>(traces.size())) {
      throw DomainError("branch certifier: unknown color " + std::to_string(color));
    }
    const mpfr_prec_t bits = sub.h.bits();
    const BigReal tol = default_tolerance(bits);
    const BigReal floor = BigReal::pow2(-static_cast<long>(bits) / 2, bits);
    BranchForm bf = propagate_branch(net, traces[static_cast<std::size_t>(color)], bits);

    if (!bf.trans.present || abs(bf.out.t) < floor) {
      // Branch output is affine in x; check the difference annihilation.
      return poly_annihilation_certificate(sub, static_cast<int>(sub.m) - 1, tol);
    }

    // Invert the activation's rational structure pointwise to recover the
    // underlying exponential e^{P(x)}, then check the multiplicative
    // identity at the exponent's degree.
    const TransRecord& tr = bf.trans;
    int d = tr.kind == Act::gaussian ? 2 : 1;
    SampleGrid egrid;
    egrid.a = sub.a;
    egrid.h = sub.h;
    egrid.m = sub.m;
    for (long j = 0; j <= sub.m; ++j) {
      BigReal x = sub.x_at(j);
      BigReal t_val = (sub.real_value(j) - bf.out.x * x - bf.out.c) / bf.out.t;
      BigReal e(0L, bits);
      switch (tr.kind) {
        case Act::sigmoid:
          if (abs(t_val) < floor) throw ZeroSample("branch certifier: sigmoid value ~ 0");
          e = BigReal(1L, bits) / t_val - BigReal(1L, bits);
          break;
        case Act::tanh: {
          BigReal den = BigReal(1L, bits) - t_val;
          if (abs(den) < floor) throw ZeroSample("branch certifier: tanh value ~ 1");
          e = (BigReal(1L, bits) + t_val) / den;
          break;
        }
        case Act::elu:
          e = t_val / tr.param + BigReal(1L, bits);
          break;
        case Act::gaussian:
          e = t_val;
          break;
        case Act::swish: {
          if (abs(t_val) < floor) throw ZeroSample("branch certifier: swish value ~ 0");
          BigReal pre = tr.u * x + tr.v;
          e = pre / t_val - BigReal(1L, bits);
          break;
        }
        default:
          throw DomainError("branch certifier: unsupported transcendental");
      }
      egrid.values.push_back(BigComplex(e));
    }
    Certificate c = exp_poly_certificate(egrid, d, tol);
    c.metadata += " via " + std::string(act_name(tr.kind)) + " branch " +
                  std::to_string(tr.branch);
    return c;
  };
}

std::size_t universal_net_parameter_count() { return 69; }

NetworkGraph build_universal_sin_arcsin(const std::vector<BigReal>& weights) {
  if (weights.size() != universal_net_parameter_count()) {
    throw DomainError("universal net expects " + std::to_string(universal_net_parameter_count()) +
                      " parameters, got " + std::to_string(weights.size()));
  }
  const mpfr_prec_t bits = weights.empty() ? precision::default_bits() : weights[0].bits();
  NetworkGraph net;
  net.input_id = 0;
  net.output_id = 1;
  net.nodes.push_back(Node{0, Act::input, BigReal(0L, bits), {}, BigReal(0L, bits)});

  auto w = [&](std::size_t i) { return weights.at(i); };
  const BigReal zero(0L, bits), one(1L, bits);

  // Block node ids: base + 0..7 = H1(sin), H2(arcsin), H3(sin), H4(arcsin),
  // H5(identity), H6(sin), H7(sin), H9(multiply).
  Node output{1, Act::identity, zero, {}, w(64 + 4)};
  for (int j = 0; j < 4; ++j) {
    const int base = 2 + j * 8;
    const int prev_base = 2 + ((j + 3) % 4) * 8;
    const std::size_t o = static_cast<std::size_t>(j) * 16;
    net.nodes.push_back(Node{base + 0, Act::sin, zero, {{0, w(o + 0)}}, w(o + 1)});
    net.nodes.push_back(Node{base + 1, Act::arcsin, zero, {{base + 0, w(o + 2)}}, w(o + 3)});
    net.nodes.push_back(Node{base + 2, Act::sin, zero, {{base + 1, w(o + 4)}}, w(o + 5)});
    net.nodes.push_back(Node{base + 3, Act::arcsin, zero, {{base + 2, w(o + 6)}}, w(o + 7)});
    net.nodes.push_back(
        Node{base + 4, Act::identity, zero, {{base + 3, w(o + 8)}, {base + 1, w(o + 9)}}, w(o + 10)});
    // Cross-block edge: H6 reads x and the previous block's arcsin output.
    net.nodes.push_back(
        Node{base + 5, Act::sin, zero, {{0, w(o + 11)}, {prev_base + 1, w(o + 12)}}, w(o + 13)});
    net.nodes.push_back(Node{base + 6, Act::sin, zero, {{base + 5, w(o + 14)}}, w(o + 15)});
    net.nodes.push_back(
        Node{base + 7, Act::multiply, zero, {{base + 6, one}, {base + 4, one}}, zero});
    output.inputs.push_back(Edge{base + 7, w(64 + static_cast<std::size_t>(j))});
  }
  net.nodes.push_back(output);
  return net;
}

MultApprox mult_via_sines(const BigReal& z1, const BigReal& z2, const BigReal& eps_scale) {
  const mpfr_prec_t bits = z1.bits();
  const BigReal one(1L, bits);
  if (abs(z1) > one || abs(z2) > one) {
    throw DomainError("mult_via_sines: inputs must lie in [-1, 1]");
  }
  if (!(eps_scale.sign() > 0) || eps_scale > BigReal(0.1, bits)) {
    throw DomainError("mult_via_sines: eps_scale must lie in (0, 0.1]");
  }
  // sin(a)sin(b) = (cos(a-b) - cos(a+b)) / 2 at a = eps z1, b = eps z2.
  BigReal d = eps_scale * (z1 - z2);
  BigReal s = eps_scale * (z1 + z2);
  BigReal value = (cos_big(d) - cos_big(s)) / (BigReal(2L, bits) * eps_scale * eps_scale);

  // |sin(u)/u - 1| <= u^2/6 for |u| <= 1 gives a rigorous product bound.
  BigReal d1 = pow_big(eps_scale * z1, 2) / BigReal(6L, bits);
  BigReal d2 = pow_big(eps_scale * z2, 2) / BigReal(6L, bits);
  BigReal bound = abs(z1 * z2) * (d1 + d2 + d1 * d2);
  return MultApprox{value, bound};
}

NetworkGraph replace_multiplications(const NetworkGraph& net, const BigReal& eps_scale) {
  const mpfr_prec_t bits = eps_scale.bits();
  if (!(eps_scale.sign() > 0) || eps_scale > BigReal(0.1, bits)) {
    throw DomainError("replace_multiplications: eps_scale must lie in (0, 0.1]");
  }
  validate_network(net);
  int next_id = 0;
  for (const Node& n : net.nodes) next_id = std::max(next_id, n.id + 1);

  // Exact three-phase resolution of cos: cos u = sum_i lambda_i sin(u + phi_i)
  // with phi = (pi/6, pi/2, 5pi/6) and lambda = (1/4, 3/4, 1/4).
  const BigReal pi = BigReal::pi(bits);
  const BigReal phis[3] = {pi / BigReal(6L, bits), pi / BigReal(2L, bits),
                           BigReal(5L, bits) * pi / BigReal(6L, bits)};
  const BigReal lambdas[3] = {BigReal(0.25, bits), BigReal(0.75, bits), BigReal(0.25, bits)};
  const BigReal gain = BigReal(1L, bits) / (BigReal(2L, bits) * eps_scale * eps_scale);

  NetworkGraph out;
  out.input_id = net.input_id;
  out.output_id = net.output_id;
  // Replacement readout edges of each rewritten multiply node.
  std::map<int, std::vector<Edge>> rewired;

  for (const Node& n : net.nodes) {
    if (n.act != Act::multiply || n.inputs.size() != 2) {
      out.nodes.push_back(n);
      continue;
    }
    const Edge& e1 = n.inputs[0];
    const Edge& e2 = n.inputs[1];
    std::vector<Edge> readout;
    for (int group = 0; group < 2; ++group) {
      // group 0: cos(eps(a-b)); group 1: cos(eps(a+b)) with negative gain
      const BigReal sign2 = group == 0 ? BigReal(-1L, bits) : BigReal(1L, bits);
      for (int i = 0; i < 3; ++i) {
        Node sin_node;
        sin_node.id = next_id++;
        sin_node.act = Act::sin;
        sin_node.act_param = BigReal(0L, bits);
        sin_node.bias = phis[i];
        sin_node.inputs = {Edge{e1.from, eps_scale * e1.w},
                           Edge{e2.from, sign2 * eps_scale * e2.w}};
        out.nodes.push_back(sin_node);
        BigReal coeff = lambdas[i] * gain;
        if (group == 1) coeff = -coeff;
        readout.push_back(Edge{sin_node.id, coeff});
      }
    }
    rewired[n.id] = std::move(readout);
  }

  for (Node& n : out.nodes) {
    std::vector<Edge> inputs;
    for (const Edge& e : n.inputs) {
      auto it = rewired.find(e.from);
      if (it == rewired.end()) {
        inputs.push_back(e);
      } else {
        for (const Edge& r : it->second) inputs.push_back(Edge{r.from, e.w * r.w});
      }
    }
    n.inputs = std::move(inputs);
  }
  return out;
}

}  // namespace xpr
