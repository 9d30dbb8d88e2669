#include "skt/io.hpp"

#include <fstream>
#include <sstream>

namespace skt::io {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ParseError((where.empty() ? std::string("/") : where) + ": " + what);
}

const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) fail(where, std::string("missing field \"") + key + "\"");
  return *it;
}

std::size_t as_count(const Json& j, const std::string& where) {
  if (!j.is_number_integer() || j.get<long long>() < 0) fail(where, "expected a non-negative integer");
  return j.get<std::size_t>();
}

Scalar as_scalar(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Scalar(j.dump());
  if (!j.is_string()) fail(where, "expected a rational string \"p/q\"");
  try {
    return parse_scalar(j.get<std::string>());
  } catch (const ParseError& e) {
    fail(where, e.what());
  }
}

const Json& as_array(const Json& j, const std::string& where, std::optional<std::size_t> size = std::nullopt) {
  if (!j.is_array()) fail(where, "expected an array");
  if (size && j.size() != *size)
    fail(where, "expected " + std::to_string(*size) + " entries, got " + std::to_string(j.size()));
  return j;
}

Vector vector_from_json(const Json& j, std::size_t dim, const std::string& where) {
  as_array(j, where, dim);
  Vector v;
  for (std::size_t i = 0; i < dim; ++i) v.push_back(as_scalar(j[i], where + "/" + std::to_string(i)));
  return v;
}

Endomorphism matrix_from_json(const Json& j, std::size_t dim, const std::string& where) {
  as_array(j, where, dim);
  Endomorphism e(dim);
  for (std::size_t r = 0; r < dim; ++r) {
    const std::string row_at = where + "/" + std::to_string(r);
    as_array(j[r], row_at, dim);
    for (std::size_t c = 0; c < dim; ++c) e(r, c) = as_scalar(j[r][c], row_at + "/" + std::to_string(c));
  }
  return e;
}

}  // namespace

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed JSON at byte ") + std::to_string(e.byte) + ": " + e.what());
  }
}

LoadedAlgebra algebra_from_json(const Json& j) {
  if (!j.is_object()) fail("", "expected an object");
  try {
    if (j.contains("D")) {
      const std::size_t n = as_count(field(j, "n", ""), "/n");
      if (n == 0) fail("/n", "the abelian ideal must have dimension >= 1");
      auto alg = AlmostAbelianAlgebra::build(matrix_from_json(j.at("D"), n, "/D"));
      MetricLieAlgebra general = alg.algebra();
      return LoadedAlgebra{std::move(general), std::move(alg)};
    }
    const std::size_t dim = as_count(field(j, "dim", ""), "/dim");
    const Json& entries = as_array(field(j, "structure", ""), "/structure");
    std::vector<StructureEntry> structure;
    for (std::size_t e = 0; e < entries.size(); ++e) {
      const std::string at = "/structure/" + std::to_string(e);
      as_array(entries[e], at, 4);
      structure.push_back({as_count(entries[e][0], at + "/0"), as_count(entries[e][1], at + "/1"),
                           as_count(entries[e][2], at + "/2"), as_scalar(entries[e][3], at + "/3")});
    }
    return LoadedAlgebra{MetricLieAlgebra(dim, structure), std::nullopt};
  } catch (const InvalidStructure& e) {
    fail("", e.what());
  }
}

Json to_json(const Vector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_string(x));
  return out;
}

Json to_json(const Endomorphism& e) {
  Json out = Json::array();
  for (std::size_t r = 0; r < e.dim(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < e.dim(); ++c) row.push_back(to_string(e(r, c)));
    out.push_back(std::move(row));
  }
  return out;
}

Json to_json(const AlmostAbelianAlgebra& alg) {
  Json out;
  out["n"] = alg.n();
  out["D"] = to_json(alg.derivation());
  return out;
}

Json to_json(const MetricLieAlgebra& algebra) {
  Json out;
  out["dim"] = algebra.dim();
  Json entries = Json::array();
  for (const auto& e : algebra.structure()) entries.push_back(Json::array({e.i, e.j, e.k, to_string(e.value)}));
  out["structure"] = std::move(entries);
  return out;
}

SymTensor tensor_from_json(const Json& j, std::size_t dim) {
  const std::size_t degree = as_count(field(j, "degree", ""), "/degree");
  const Json& terms = as_array(field(j, "terms", ""), "/terms");
  SymTensor t(dim, degree);
  for (std::size_t e = 0; e < terms.size(); ++e) {
    const std::string at = "/terms/" + std::to_string(e);
    const Json& mono = as_array(field(terms[e], "monomial", at), at + "/monomial", degree);
    std::vector<int> indices;
    for (std::size_t i = 0; i < mono.size(); ++i) {
      const std::size_t idx = as_count(mono[i], at + "/monomial/" + std::to_string(i));
      if (idx >= dim) fail(at + "/monomial/" + std::to_string(i), "index out of range for dimension " + std::to_string(dim));
      if (!indices.empty() && static_cast<int>(idx) < indices.back()) fail(at + "/monomial", "indices must be sorted");
      indices.push_back(static_cast<int>(idx));
    }
    const MultiIndex index(std::move(indices));
    if (t.coefficient(index) != 0) fail(at + "/monomial", "monomial listed twice");
    t.add_term(index, as_scalar(field(terms[e], "coeff", at), at + "/coeff"));
  }
  return t;
}

Json to_json(const SymTensor& t) {
  Json out;
  out["degree"] = t.degree();
  Json terms = Json::array();
  for (const auto& [index, coeff] : t.terms()) {
    Json term;
    term["monomial"] = Json(std::vector<int>(index.indices().begin(), index.indices().end()));
    term["coeff"] = to_string(coeff);
    terms.push_back(std::move(term));
  }
  out["terms"] = std::move(terms);
  return out;
}

Generator generator_from_json(const Json& j, std::size_t dim, const std::string& where) {
  const Json& type = field(j, "type", where);
  if (!type.is_string()) fail(where + "/type", "expected a string");
  const std::string tag = type.get<std::string>();
  if (tag == "metric") return MetricGenerator{};
  if (tag == "left") return LeftInvariant{vector_from_json(field(j, "x", where), dim, where + "/x")};
  if (tag == "right") return RightInvariant{vector_from_json(field(j, "x", where), dim, where + "/x")};
  if (tag == "deriv") {
    if (dim == 0) fail(where, "derivation generator needs a nonzero dimension");
    return DerivationGenerator{SkewDerivation{vector_from_json(field(j, "v", where), dim - 1, where + "/v"),
                                              matrix_from_json(field(j, "Th", where), dim - 1, where + "/Th")}};
  }
  fail(where + "/type", "unknown generator type \"" + tag + "\"");
}

Json to_json(const Generator& g) {
  Json out;
  std::visit(
      [&out](const auto& gen) {
        using G = std::decay_t<decltype(gen)>;
        if constexpr (std::is_same_v<G, MetricGenerator>) {
          out["type"] = "metric";
        } else if constexpr (std::is_same_v<G, LeftInvariant>) {
          out["type"] = "left";
          out["x"] = to_json(gen.x);
        } else if constexpr (std::is_same_v<G, RightInvariant>) {
          out["type"] = "right";
          out["x"] = to_json(gen.x);
        } else {
          out["type"] = "deriv";
          out["v"] = to_json(gen.t.v);
          out["Th"] = to_json(gen.t.th);
        }
      },
      g);
  return out;
}

Certificate certificate_from_json(const Json& j, std::size_t dim) {
  Certificate cert{SymTensor(dim, 0), {}};
  const Json& target = field(j, "target", "");
  try {
    cert.target = tensor_from_json(target, dim);
  } catch (const ParseError& e) {
    const std::string what = e.what();
    throw ParseError("/target" + (what.rfind("/:", 0) == 0 ? what.substr(1) : what));
  }
  const Json& terms = as_array(field(j, "terms", ""), "/terms");
  for (std::size_t t = 0; t < terms.size(); ++t) {
    const std::string at = "/terms/" + std::to_string(t);
    CertificateTerm term{as_scalar(field(terms[t], "coeff", at), at + "/coeff"), {}};
    const Json& factors = as_array(field(terms[t], "factors", at), at + "/factors");
    for (std::size_t f = 0; f < factors.size(); ++f)
      term.factors.push_back(generator_from_json(factors[f], dim, at + "/factors/" + std::to_string(f)));
    cert.terms.push_back(std::move(term));
  }
  return cert;
}

Json to_json(const Certificate& cert) {
  Json out;
  out["target"] = to_json(cert.target);
  Json terms = Json::array();
  for (const auto& term : cert.terms) {
    Json t;
    t["coeff"] = to_string(term.coeff);
    Json factors = Json::array();
    for (const auto& f : term.factors) factors.push_back(to_json(f));
    t["factors"] = std::move(factors);
    terms.push_back(std::move(t));
  }
  out["terms"] = std::move(terms);
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open \"" + path + "\"");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace skt::io
