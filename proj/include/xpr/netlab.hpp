#pragma once

#include <optional>
#include <string>
#include <vector>

#include "xpr/bigreal.hpp"
#include "xpr/certify.hpp"

namespace xpr {

enum class Act {
  identity,
  step,
  relu,
  leaky_relu,
  sq_relu,
  sin,
  arcsin,
  tanh,
  sigmoid,
  elu,
  swish,
  gaussian,
  multiply,
  input
};

Act act_from_name(const std::string& name);
const char* act_name(Act a);
/// Piecewise activations contribute a branch index to the trace.
bool act_is_piecewise(Act a);
/// Algebraic-exponential / transcendental activations for the path rule.
bool act_is_transcendental(Act a);

struct Edge {
  int from = -1;
  BigReal w;
};

struct Node {
  int id = -1;
  Act act = Act::identity;
  BigReal act_param;  // leaky/elu slope a; defaults to 0.01 / 1.0
  std::vector<Edge> inputs;
  BigReal bias;
};

/// Feedforward DAG. The input node carries the scalar x; the output node must
/// have the identity activation (affine readout).
struct NetworkGraph {
  std::vector<Node> nodes;
  int input_id = 0;
  int output_id = 0;

  const Node* find(int id) const;
};

/// Structural validation: ids unique, edges resolve, DAG, output is identity.
/// Returns the topological order (input first).
std::vector<int> validate_network(const NetworkGraph& net);

/// Branch decisions taken by every piecewise neuron, in topological order.
struct BranchTrace {
  std::vector<std::pair<int, int>> branches;  // (node id, branch index)

  bool operator==(const BranchTrace&) const = default;
  std::string key() const;
};

struct EvalResult {
  BigReal value;
  BranchTrace trace;
};

/// Topological-order evaluation. Raises DomainError naming the offending
/// neuron when an arcsin input leaves [-1,1] by more than rounding slop.
EvalResult eval_network(const NetworkGraph& net, const BigReal& x);

struct PathCheck {
  bool ok = true;
  std::vector<int> witness_path;  // node ids input..output on violation
};

/// Checks that every input-output path holds at most one transcendental
/// neuron; returns a witness path otherwise.
PathCheck validate_single_transcendental(const NetworkGraph& net);

struct ColoringResult {
  Coloring coloring;                      // dense colors, first-appearance order
  std::vector<BranchTrace> color_traces;  // trace per dense color
};

/// Colors each grid point a, a+h, ..., a+m*h by its branch trace.
ColoringResult branch_coloring(const NetworkGraph& net, const BigReal& a, const BigReal& h,
                               long m);

/// Sub-certifier for the van der Waerden composite: given a sub-progression
/// of samples known to live on one branch, transforms the values back to an
/// exponential-of-polynomial (or a plain polynomial) using the branch's
/// affine structure and checks the matching identity.
SubCertifier make_branch_sub_certifier(const NetworkGraph& net,
                                       std::vector<BranchTrace> color_traces);

/// Fixed universal sin/arcsin architecture: four replicated blocks of
/// sin-arcsin chains with a cross-block edge, multiplication neurons merging
/// into an affine output. `weights` must have exactly
/// universal_net_parameter_count() entries.
NetworkGraph build_universal_sin_arcsin(const std::vector<BigReal>& weights);
std::size_t universal_net_parameter_count();

struct MultApprox {
  BigReal value;
  BigReal error_bound;  // rigorous: |value - z1*z2| <= error_bound
};

/// Product z1*z2 via the small-angle product-to-sum identity at scale
/// eps_scale; absolute error is O(eps_scale^2). Inputs must lie in [-1,1],
/// eps_scale in (0, 0.1].
MultApprox mult_via_sines(const BigReal& z1, const BigReal& z2, const BigReal& eps_scale);

/// Rewrites every two-input multiplication neuron into six sin neurons
/// implementing the same product approximately (exact three-phase resolution
/// of the two cosine terms).
NetworkGraph replace_multiplications(const NetworkGraph& net, const BigReal& eps_scale);

}  // namespace xpr
