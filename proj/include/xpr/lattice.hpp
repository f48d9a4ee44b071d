#pragma once

#include <gmpxx.h>

#include <vector>

#include "xpr/bigreal.hpp"

namespace xpr::lattice {

using ZVec = std::vector<mpz_class>;
using ZMat = std::vector<ZVec>;
using QVec = std::vector<mpq_class>;

/// Nearest integer to q (ties toward +infinity).
mpz_class round_nearest(const mpq_class& q);

/// Exact rational value of a finite BigReal (every BigReal is dyadic).
mpq_class to_rational(const BigReal& x);

/// In-place LLL reduction with exact rational Gram-Schmidt. Dimensions here
/// are tiny (<= 8), so exactness is cheap and removes all floating-point
/// reduction concerns. delta defaults to 99/100.
void lll_reduce(ZMat& basis, const mpq_class& delta = mpq_class(99, 100));

/// Babai nearest-plane: lattice vector (not coefficients) of an approximate
/// closest point to `target`. Basis should be LLL-reduced first.
ZVec babai_nearest_plane(const ZMat& basis, const QVec& target);

/// All integer offset vectors with entries in [-radius, radius]; used to
/// enumerate lattice candidates around the Babai point.
std::vector<std::vector<long>> offset_box(std::size_t dim, long radius);

}  // namespace xpr::lattice
