#include "skt/exact_linalg.hpp"

#include <utility>

namespace skt {

RationalMatrix::RationalMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Scalar(0)) {}

void RationalMatrix::set_column(std::size_t c, const Vector& values) {
  if (values.size() != rows_) throw DimensionMismatch("RationalMatrix::set_column: size mismatch");
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = values[r];
}

Vector RationalMatrix::row(std::size_t r) const {
  return Vector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

namespace {

std::size_t entry_size(const Scalar& x) {
  return mpz_sizeinbase(x.get_num_mpz_t(), 2) + mpz_sizeinbase(x.get_den_mpz_t(), 2);
}

}  // namespace

EchelonForm reduced_row_echelon(RationalMatrix m) {
  std::vector<std::size_t> pivots;
  std::size_t lead = 0;
  for (std::size_t c = 0; c < m.cols() && lead < m.rows(); ++c) {
    std::size_t best = m.rows();
    for (std::size_t r = lead; r < m.rows(); ++r) {
      if (m(r, c) == 0) continue;
      if (best == m.rows() || entry_size(m(r, c)) < entry_size(m(best, c))) best = r;
    }
    if (best == m.rows()) continue;
    if (best != lead)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(best, j), m(lead, j));
    const Scalar inv = 1 / m(lead, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(lead, j) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == lead || m(r, c) == 0) continue;
      const Scalar f = m(r, c);
      for (std::size_t j = c; j < m.cols(); ++j)
        if (m(lead, j) != 0) m(r, j) -= f * m(lead, j);
    }
    pivots.push_back(c);
    ++lead;
  }
  return EchelonForm{std::move(m), std::move(pivots)};
}

std::vector<Vector> nullspace(const RationalMatrix& m) {
  const EchelonForm ef = reduced_row_echelon(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (const auto c : ef.pivot_columns) is_pivot[c] = true;
  std::vector<Vector> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vector v = zero_vector(m.cols());
    v[free] = 1;
    for (std::size_t r = 0; r < ef.rank(); ++r) v[ef.pivot_columns[r]] = -ef.matrix(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<Vector> canonical_span(const std::vector<Vector>& vectors, std::size_t length) {
  RationalMatrix m(vectors.size(), length);
  for (std::size_t r = 0; r < vectors.size(); ++r) {
    if (vectors[r].size() != length) throw DimensionMismatch("canonical_span: vector length mismatch");
    for (std::size_t c = 0; c < length; ++c) m(r, c) = vectors[r][c];
  }
  const EchelonForm ef = reduced_row_echelon(std::move(m));
  std::vector<Vector> rows;
  rows.reserve(ef.rank());
  for (std::size_t r = 0; r < ef.rank(); ++r) rows.push_back(ef.matrix.row(r));
  return rows;
}

std::size_t rank(const std::vector<Vector>& vectors, std::size_t length) {
  return canonical_span(vectors, length).size();
}

}  // namespace skt
