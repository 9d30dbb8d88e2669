#pragma once

// JSON file formats. Rationals are always "p/q" strings.
//
//   algebra (almost abelian): { "n": 2, "D": [["0", "-1"], ["1", "0"]] }
//   algebra (general):        { "dim": 3, "structure": [[0, 1, 2, "1"], ...] }
//   tensor:                   { "degree": 2, "terms": [{ "monomial": [1, 2], "coeff": "1/2" }] }
//   certificate:              { "target": <tensor>, "terms": [{ "coeff": "2", "factors": [
//                                 { "type": "metric" }, { "type": "left", "x": [...] },
//                                 { "type": "right", "x": [...] },
//                                 { "type": "deriv", "v": [...], "Th": [[...]] } ] }] }
//
// Parse failures throw ParseError with a JSON-pointer style location.

#include "skt/almostab.hpp"
#include "skt/decomp.hpp"
#include "skt/liealg.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <string_view>

namespace skt::io {

using Json = nlohmann::ordered_json;

struct LoadedAlgebra {
  MetricLieAlgebra general;
  /// Present when the file used the almost abelian form.
  std::optional<AlmostAbelianAlgebra> almost_abelian;
};

Json parse_json(std::string_view text);

LoadedAlgebra algebra_from_json(const Json& j);
Json to_json(const AlmostAbelianAlgebra& alg);
Json to_json(const MetricLieAlgebra& algebra);

SymTensor tensor_from_json(const Json& j, std::size_t dim);
Json to_json(const SymTensor& t);

Certificate certificate_from_json(const Json& j, std::size_t dim);
Json to_json(const Certificate& cert);
Generator generator_from_json(const Json& j, std::size_t dim, const std::string& where = "");
Json to_json(const Generator& g);

Json to_json(const Endomorphism& e);
Json to_json(const Vector& v);

/// Reads a whole file; throws ParseError if it cannot be opened.
std::string read_file(const std::string& path);

}  // namespace skt::io
