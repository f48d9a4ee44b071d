#pragma once

#include <vector>

#include "xpr/bigreal.hpp"

namespace xpr {

/// Small dense matrix of BigReal, row-major. Only the handful of operations
/// the certificates and fitters need.
class Mat {
 public:
  Mat() : rows_(0), cols_(0) {}
  Mat(std::size_t rows, std::size_t cols, mpfr_prec_t bits = precision::default_bits())
      : rows_(rows), cols_(cols), data_(rows * cols, BigReal(0L, bits)) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  BigReal& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const BigReal& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

 private:
  std::size_t rows_, cols_;
  std::vector<BigReal> data_;
};

/// Determinant by LU with partial pivoting at the matrix's precision.
BigReal determinant(Mat a);

/// Product over rows of the row 2-norms (Hadamard's bound on |det|).
BigReal hadamard_bound(const Mat& a);

/// Solves (a)x = b in place by LU with partial pivoting; a must be square.
/// Returns false when a pivot vanishes (singular to working precision).
bool solve_linear(Mat a, std::vector<BigReal> b, std::vector<BigReal>& x);

/// Rough 1-norm condition estimate of a square matrix via solve on the
/// canonical basis. Expensive but only used on tiny systems.
BigReal condition_estimate(const Mat& a);

}  // namespace xpr
