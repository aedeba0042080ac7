#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "ucover/integer.hpp"

namespace ucover {

/// Dense integer matrix, row-major.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<std::vector<long>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Integer& operator()(std::size_t i, std::size_t j) {
    return data_[i * cols_ + j];
  }
  const Integer& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  bool is_zero() const;
  IntMatrix transpose() const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  std::string str() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

/// Determinant by fraction-free (Bareiss) elimination.
Integer determinant(const IntMatrix& a);

/// A = U D V with U, V unimodular, D diagonal with d_1 | d_2 | ... and
/// nonnegative entries. U_inv and V_inv are kept alongside.
struct SNFResult {
  IntMatrix D;
  IntMatrix U;
  IntMatrix V;
  IntMatrix U_inv;
  IntMatrix V_inv;

  /// Nonzero diagonal entries, in order.
  std::vector<Integer> invariants() const;
  std::size_t rank() const { return invariants().size(); }
};

SNFResult smith_normal_form(const IntMatrix& a);

/// Sparse matrix given as rows of (column, value) maps.
struct SparseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::map<std::size_t, Integer>> entries;

  explicit SparseMatrix(std::size_t r = 0, std::size_t c = 0)
      : rows(r), cols(c), entries(r) {}
  void add(std::size_t i, std::size_t j, const Integer& v);
  IntMatrix dense() const;
};

/// Nonzero invariant factors only (no transforms). Unit pivots are
/// eliminated sparsely first; the residual block goes through the dense
/// algorithm.
std::vector<Integer> invariant_factors(SparseMatrix m);
std::vector<Integer> invariant_factors(const IntMatrix& m);

}  // namespace ucover
