#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "xpr/bigreal.hpp"
#include "xpr/families.hpp"

namespace xpr {

enum class CertificateKind { det, exp_poly, vdw_composite, derivative_bound };

const char* certificate_kind_name(CertificateKind k);

/// Result of a constraint check. pass == (residual <= tolerance).
struct Certificate {
  CertificateKind kind;
  BigReal residual;
  BigReal tolerance;
  bool pass = false;
  std::string metadata;

  static Certificate make(CertificateKind kind, BigReal residual, BigReal tolerance,
                          std::string metadata = {});
};

/// Default certificate tolerance at a working precision: 2^(-bits/2), half
/// the precision absorbed by conditioning loss.
BigReal default_tolerance(mpfr_prec_t bits);

/// Determinant constraint: A = (g(x0 + alpha_k + beta_m)), k,m = 0..2N, must
/// be singular for any N-wave sine sum. Residual is |det A| normalized by the
/// Hadamard bound of A. Raises DegenerateInput when alphas or betas repeat
/// (the constraint is vacuous then).
Certificate det_certificate(const RealSampler& g, const BigReal& x0,
                            const std::vector<BigReal>& alphas, const std::vector<BigReal>& betas,
                            int n_waves, std::optional<BigReal> tolerance = std::nullopt);

/// Forward discrete derivative of order s with the grid's own step:
/// out[j] = h^-s sum_k (-1)^(s-k) C(s,k) values[j+k], length m-s+1.
SampleGrid discrete_derivative(const SampleGrid& grid, int s);

/// Multiplicative identity for g = e^P, deg P <= d: checked in the log
/// domain, with the Log branch chosen by continuation along the grid and the
/// imaginary part of the residual reduced mod 2pi.
Certificate exp_poly_certificate(const SampleGrid& grid, int d,
                                 std::optional<BigReal> tolerance = std::nullopt);

/// Grid size m = (q+1) C(N+r+1, N+1) + (max(1,d)+1)(N+1).
long long constraint_grid_size(int n_exponentials, int q, int r, int d);

struct Coloring {
  std::vector<int> colors;  // positions 1..n map to colors[0..n-1] in [0, p)

  std::size_t size() const { return colors.size(); }
};

struct Progression {
  int start = 0;  // 1-indexed
  int step = 0;
};

/// First monochromatic s-term arithmetic progression (start ascending, then
/// step ascending); nullopt when exhaustive search finds none.
std::optional<Progression> find_monochromatic_ap(const Coloring& coloring, int s);

/// Exact van der Waerden numbers for the tiny cases this artifact needs;
/// raises BudgetError outside the stored table.
long n_vdw_bound(int s, int p);

using BranchColorer = std::function<int(const BigReal&)>;
using SubCertifier = std::function<Certificate(const SampleGrid&, int color)>;

/// Composite certificate for branching functions: samples g on the
/// N_vdW(s,p)-point grid over [a,b], colors each point by branch, locates a
/// monochromatic length-s sub-progression and runs the sub-certifier on it.
Certificate vdw_composite_certificate(const RealSampler& g, const BigReal& a, const BigReal& b,
                                      const BranchColorer& colorer, const SubCertifier& sub,
                                      int s_tilde, int p);

struct EntropyBound {
  long long max_n = 0;
  bool overflow = false;  // eps close enough to M that N is effectively unbounded
};

/// Information bound floor(p*B / log2(M/eps)); raises DomainError if M <= eps.
EntropyBound entropy_bound(int p_params, int bits_each, const BigReal& amplitude_bound,
                           const BigReal& eps);

}  // namespace xpr
