#pragma once

#include "skt/scalar.hpp"

#include <cstddef>
#include <vector>

namespace skt {

/// Dense rows x cols matrix of exact rationals.
class RationalMatrix {
 public:
  RationalMatrix(std::size_t rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  void set_column(std::size_t c, const Vector& values);
  Vector row(std::size_t r) const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Scalar> data_;
};

struct EchelonForm {
  RationalMatrix matrix;
  std::vector<std::size_t> pivot_columns;
  std::size_t rank() const { return pivot_columns.size(); }
};

/// Gauss-Jordan reduction to reduced row echelon form. Among the candidate
/// pivots of a column the one with the smallest numerator*denominator
/// size is taken to limit coefficient growth; the result does not depend on
/// that choice.
EchelonForm reduced_row_echelon(RationalMatrix m);

/// Basis of { x : m x = 0 }, one vector per free column, with the free
/// coordinate set to 1.
std::vector<Vector> nullspace(const RationalMatrix& m);

/// Canonical basis of span(vectors): the nonzero rows of the reduced row
/// echelon form of the matrix whose rows are `vectors`.
std::vector<Vector> canonical_span(const std::vector<Vector>& vectors, std::size_t length);

std::size_t rank(const std::vector<Vector>& vectors, std::size_t length);

}  // namespace skt
