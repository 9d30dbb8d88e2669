#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace skt {

/// Exact rational coefficient. GMP keeps every value canonical
/// (positive denominator, lowest terms) after each operation.
using Scalar = mpq_class;

/// Coordinates of an element of an inner-product space in its fixed
/// orthonormal basis.
using Vector = std::vector<Scalar>;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class DegreeMismatch : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

/// Parses "p/q", "p" or "-p/q". Rejects zero denominators and
/// anything that is not an exact rational literal.
Scalar parse_scalar(std::string_view text);

/// "p/q", or "p" when the denominator is one.
std::string to_string(const Scalar& value);

Vector zero_vector(std::size_t dim);
Vector unit_vector(std::size_t dim, std::size_t index);

Scalar dot(const Vector& a, const Vector& b);
Vector add(const Vector& a, const Vector& b);
Vector scale(const Scalar& s, const Vector& a);
bool is_zero(const Vector& a);

}  // namespace skt
