#include "skt/scalar.hpp"

#include <algorithm>
#include <cctype>

namespace skt {

namespace {

bool is_integer_literal(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

}  // namespace

Scalar parse_scalar(std::string_view text) {
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  if (!is_integer_literal(num)) {
    throw ParseError("invalid rational literal \"" + std::string(text) + "\"");
  }
  Scalar result;
  result.get_num() = mpz_class(std::string(num.front() == '+' ? num.substr(1) : num));
  if (slash == std::string_view::npos) {
    result.get_den() = 1;
    return result;
  }
  const std::string_view den = text.substr(slash + 1);
  if (!is_integer_literal(den) || den.front() == '-' || den.front() == '+') {
    throw ParseError("invalid rational literal \"" + std::string(text) + "\"");
  }
  result.get_den() = mpz_class(std::string(den));
  if (result.get_den() == 0) {
    throw ParseError("zero denominator in \"" + std::string(text) + "\"");
  }
  result.canonicalize();
  return result;
}

std::string to_string(const Scalar& value) { return value.get_str(); }

Vector zero_vector(std::size_t dim) { return Vector(dim, Scalar(0)); }

Vector unit_vector(std::size_t dim, std::size_t index) {
  Vector v = zero_vector(dim);
  v.at(index) = 1;
  return v;
}

Scalar dot(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw DimensionMismatch("dot: vector sizes differ");
  Scalar s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Vector add(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw DimensionMismatch("add: vector sizes differ");
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Vector scale(const Scalar& s, const Vector& a) {
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
  return r;
}

bool is_zero(const Vector& a) {
  return std::all_of(a.begin(), a.end(), [](const Scalar& x) { return x == 0; });
}

}  // namespace skt
