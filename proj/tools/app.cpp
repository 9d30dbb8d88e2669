#include "app.hpp"

#include "skt/curvature.hpp"
#include "skt/decomp.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace skt::app {

namespace {

using io::Json;

class MethodMismatch : public Error {
 public:
  using Error::Error;
};

Json settings_json(const Settings& s) {
  Json out;
  out["seed"] = s.seed;
  out["tol"] = s.tol;
  out["samples"] = s.samples;
  out["order_floor"] = s.order_floor;
  return out;
}

Json numeric_json(const NumTensor& t) {
  Json out;
  out["degree"] = t.degree();
  Json terms = Json::array();
  for (const auto& [index, coeff] : t.terms()) {
    Json term;
    term["monomial"] = Json(std::vector<int>(index.indices().begin(), index.indices().end()));
    term["coeff"] = static_cast<double>(coeff);
    terms.push_back(std::move(term));
  }
  out["terms"] = std::move(terms);
  return out;
}

Json verification_json(const VerificationReport& r) {
  Json out;
  out["exact_at_identity"] = r.exact_at_identity;
  out["max_deviation"] = r.max_deviation;
  out["passed"] = r.passed;
  Json samples = Json::array();
  for (const auto& s : r.samples) {
    Json j;
    j["point"] = s.point;
    j["order"] = s.order;
    j["deviation"] = s.deviation;
    samples.push_back(std::move(j));
  }
  out["samples"] = std::move(samples);
  return out;
}

Json basis_json(const KillingSpace& space) {
  Json out = Json::array();
  for (const auto& t : space.basis) out.push_back(io::to_json(t));
  return out;
}

std::string format_double(double x) {
  std::ostringstream s;
  s << std::setprecision(3) << std::scientific << x;
  return s.str();
}

io::LoadedAlgebra load_algebra(const Input& in) { return io::algebra_from_json(io::parse_json(in.text)); }

const AlmostAbelianAlgebra& require_almost_abelian(const io::LoadedAlgebra& loaded, const char* what) {
  if (!loaded.almost_abelian) throw MethodMismatch(std::string(what) + " needs an almost abelian algebra {\"n\", \"D\"}");
  return *loaded.almost_abelian;
}

/// Runs `body`, wrapping its result in the common report envelope and
/// mapping exceptions to exit codes.
Outcome guarded(const char* command, const std::vector<const Input*>& inputs, const Settings& s,
                const std::function<Outcome()>& body) {
  Json envelope;
  envelope["command"] = command;
  Json hashes;
  for (const Input* in : inputs) hashes[in->name] = {{"fnv1a", fnv1a_hex(in->text)}};
  envelope["inputs"] = std::move(hashes);
  envelope["settings"] = settings_json(s);

  Outcome out;
  const auto failure = [&](int code, const std::string& message, const std::string& diagnosis = "") {
    out = Outcome{code, {}, "error: " + message};
    Json error;
    error["code"] = code;
    error["message"] = message;
    if (!diagnosis.empty()) error["diagnosis"] = diagnosis;
    envelope["error"] = std::move(error);
  };
  try {
    out = body();
    envelope["result"] = std::move(out.report);
  } catch (const ParseError& e) {
    failure(kParse, e.what());
  } catch (const MethodMismatch& e) {
    failure(kMismatch, e.what());
  } catch (const NotKilling& e) {
    failure(kNotKilling, e.what(), e.diagnosis());
  } catch (const InvalidCertificate& e) {
    failure(kVerificationFailed, e.what());
  } catch (const Error& e) {
    failure(kUsage, e.what());
  }
  out.report = std::move(envelope);
  return out;
}

Vector parse_point(const std::string& text, std::size_t dim) {
  Vector v;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      v.push_back(parse_scalar(item));
    } catch (const ParseError& e) {
      throw Error("--point entry " + std::to_string(v.size()) + ": " + e.what());
    }
  }
  if (v.size() != dim)
    throw Error("--point has " + std::to_string(v.size()) + " entries, the algebra has dimension " + std::to_string(dim));
  return v;
}

}  // namespace

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream s;
  s << std::hex << std::setw(16) << std::setfill('0') << h;
  return s.str();
}

Outcome killing_basis(const Input& algebra, std::size_t degree, const std::string& method, const Settings& s) {
  return guarded("killing-basis", {&algebra}, s, [&] {
    const io::LoadedAlgebra loaded = load_algebra(algebra);
    std::string m = method;
    if (m == "auto") m = loaded.almost_abelian ? "structured" : "brute";
    if (m != "structured" && m != "brute" && m != "both") throw Error("unknown method \"" + method + "\"");
    if (m != "brute") require_almost_abelian(loaded, "the structured method");

    Outcome out;
    Json& r = out.report;
    r["method"] = m;
    r["degree"] = degree;
    if (m == "brute") {
      const KillingSpace space = loaded.general.killing_space_bruteforce(degree);
      r["dimension"] = space.dimension();
      r["basis"] = basis_json(space);
      out.summary = "dimension " + std::to_string(space.dimension()) + " (brute force)";
      return out;
    }
    const AlmostAbelianAlgebra& alg = *loaded.almost_abelian;
    const KillingSpace structured = alg.killing_space_structured(degree);
    r["dimension"] = structured.dimension();
    r["dimension_formula"] = alg.killing_dimension(degree);
    r["basis"] = basis_json(structured);
    out.summary = "dimension " + std::to_string(structured.dimension());
    if (m == "both") {
      const KillingSpace brute = alg.algebra().killing_space_bruteforce(degree);
      const bool agree = brute == structured;
      r["dimension_brute"] = brute.dimension();
      r["agree"] = agree;
      out.summary += agree ? ", structured and brute force agree" : ", structured and brute force DISAGREE";
      if (!agree) out.exit_code = kVerificationFailed;
    }
    return out;
  });
}

Outcome decompose(const Input& algebra, const Input& tensor, const Settings& s) {
  return guarded("decompose", {&algebra, &tensor}, s, [&] {
    const io::LoadedAlgebra loaded = load_algebra(algebra);
    const AlmostAbelianAlgebra& alg = require_almost_abelian(loaded, "decompose");
    const SymTensor k = io::tensor_from_json(io::parse_json(tensor.text), alg.dim());
    const Certificate cert = decompose(alg, k);
    const VerificationReport report = verify_certificate(alg, cert, {s.samples, s.tol, s.seed, s.order_floor});
    Outcome out;
    out.report["certificate"] = io::to_json(cert);
    out.report["verification"] = verification_json(report);
    out.summary = std::to_string(cert.terms.size()) + " term(s), exact at identity: " +
                  (report.exact_at_identity ? "yes" : "no") +
                  ", max sampled deviation " + format_double(report.max_deviation);
    if (!report.passed) out.exit_code = kVerificationFailed;
    return out;
  });
}

Outcome verify(const Input& algebra, const Input& certificate, const Settings& s) {
  return guarded("verify", {&algebra, &certificate}, s, [&] {
    const io::LoadedAlgebra loaded = load_algebra(algebra);
    const AlmostAbelianAlgebra& alg = require_almost_abelian(loaded, "verify");
    const Certificate cert = io::certificate_from_json(io::parse_json(certificate.text), alg.dim());
    const VerificationReport report = verify_certificate(alg, cert, {s.samples, s.tol, s.seed, s.order_floor});
    Outcome out;
    out.report["verification"] = verification_json(report);
    out.summary = std::string(report.passed ? "passed" : "FAILED") + ", max sampled deviation " +
                  format_double(report.max_deviation);
    if (!report.passed) out.exit_code = kVerificationFailed;
    return out;
  });
}

Outcome curvature(const Input& algebra, const Settings& s) {
  return guarded("curvature", {&algebra}, s, [&] {
    const io::LoadedAlgebra loaded = load_algebra(algebra);
    const AlmostAbelianAlgebra& alg = require_almost_abelian(loaded, "curvature");
    const CurvatureClass cls = classify(alg);
    Outcome out;
    Json& r = out.report;
    r["class"] = to_string(cls.tag);
    out.summary = to_string(cls.tag);
    if (cls.tag == CurvatureTag::Flat) {
      const Certificate cert = flat_metric_certificate(alg);
      const VerificationReport report = verify_certificate(alg, cert, {s.samples, s.tol, s.seed, s.order_floor});
      r["certificate"] = io::to_json(cert);
      r["verification"] = verification_json(report);
      out.summary += ", metric certificate " + std::string(report.passed ? "verified" : "FAILED");
      if (!report.passed) out.exit_code = kVerificationFailed;
    } else if (cls.tag == CurvatureTag::ConstantNegative) {
      const ObstructionReport ob = metric_obstruction(alg, s.tol, s.order_floor);
      r["lambda"] = to_string(cls.lambda);
      r["D_Lh_eigen"] = to_string(ob.d_of_lh_factor);
      Json o;
      o["D_Lh"] = io::to_json(ob.d_of_lh);
      o["D_Lh_matches"] = ob.d_of_lh_matches;
      o["residual"] = numeric_json(ob.residual);
      o["residual_max"] = ob.residual_max;
      o["order"] = ob.order;
      o["no_algebraic_expression"] = ob.no_algebraic_expression;
      r["obstruction"] = std::move(o);
      r["killing_vectors_dimension"] = left_invariant_killing_vectors(alg).dimension();
      out.summary += ", lambda " + to_string(cls.lambda) + ", D(L_h) = " + to_string(ob.d_of_lh_factor) +
                     " L_h, sampled residual " + format_double(ob.residual_max);
    }
    return out;
  });
}

Outcome derivations(const Input& algebra, const Settings& s) {
  return guarded("derivations", {&algebra}, s, [&] {
    const io::LoadedAlgebra loaded = load_algebra(algebra);
    Outcome out;
    Json& r = out.report;
    const std::vector<Endomorphism> basis = solve_skew_derivations(loaded.general);
    r["dimension"] = basis.size();
    Json matrices = Json::array();
    for (const auto& t : basis) matrices.push_back(io::to_json(t));
    r["basis"] = std::move(matrices);
    if (loaded.almost_abelian) {
      Json split = Json::array();
      for (const auto& t : solve_skew_derivations(*loaded.almost_abelian))
        split.push_back({{"v", io::to_json(t.v)}, {"Th", io::to_json(t.th)}});
      r["skew_derivations"] = std::move(split);
    }
    out.summary = "dimension " + std::to_string(basis.size());
    return out;
  });
}

Outcome omega_sample(const Input& algebra, const Input& generator, const std::string& point, const Settings& s) {
  return guarded("omega-sample", {&algebra, &generator}, s, [&] {
    const io::LoadedAlgebra loaded = load_algebra(algebra);
    const AlmostAbelianAlgebra& alg = require_almost_abelian(loaded, "omega-sample");
    const Json j = io::parse_json(generator.text);
    const RealVector w = to_real(parse_point(point, alg.dim()));
    Certificate cert{SymTensor(alg.dim(), 0), {}};
    if (j.is_object() && j.contains("target")) {
      cert = io::certificate_from_json(j, alg.dim());
    } else {
      const Generator g = io::generator_from_json(j, alg.dim());
      cert = Certificate{SymTensor(alg.dim(), generator_degree(g)), {{1, {g}}}};
    }
    validate_certificate(alg, cert);
    const std::size_t order = omega_order(alg, cert, w, s.tol, s.order_floor);
    const NumTensor value = omega_tensor(alg, cert, w, order);
    Outcome out;
    out.report["point"] = point;
    out.report["order"] = order;
    out.report["value"] = numeric_json(value);
    out.summary = std::to_string(value.terms().size()) + " nonzero coefficient(s), series order " +
                  std::to_string(order);
    return out;
  });
}

std::string render(const io::Json& report, bool pretty) { return report.dump(pretty ? 2 : -1) + "\n"; }

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Left-invariant symmetric Killing tensors on metric Lie algebras", "skt"};
  app.require_subcommand(1);
  app.fallthrough();

  Settings settings;
  bool json = false;
  bool pretty = false;
  app.add_option("--seed", settings.seed, "Sampling seed")->capture_default_str();
  app.add_option("--tol", settings.tol, "Sampled deviation tolerance")->capture_default_str();
  app.add_option("--samples", settings.samples, "Number of sample points")->capture_default_str();
  app.add_option("--order-floor", settings.order_floor, "Minimum exponential series order")->capture_default_str();
  app.add_flag("--json", json, "Print the JSON report");
  app.add_flag("--pretty", pretty, "Print the JSON report indented");

  std::string algebra_path;
  std::string tensor_path;
  std::string certificate_path;
  std::string generator_path;
  std::string out_path;
  std::string point;
  std::string method = "auto";
  std::size_t degree = 0;

  auto* kb = app.add_subcommand("killing-basis", "Basis of the Killing tensors of one degree");
  kb->add_option("--algebra", algebra_path, "Algebra file")->required();
  kb->add_option("--degree", degree, "Tensor degree")->required();
  kb->add_option("--method", method, "structured, brute, both or auto")
      ->check(CLI::IsMember({"structured", "brute", "both", "auto"}))
      ->capture_default_str();

  auto* dc = app.add_subcommand("decompose", "Express a Killing tensor in Killing vector fields");
  dc->add_option("--algebra", algebra_path, "Algebra file")->required();
  dc->add_option("--tensor", tensor_path, "Tensor file")->required();
  dc->add_option("--out", out_path, "Also write the certificate to this file");

  auto* vf = app.add_subcommand("verify", "Check a certificate at the identity and at sample points");
  vf->add_option("--algebra", algebra_path, "Algebra file")->required();
  vf->add_option("--certificate", certificate_path, "Certificate file")->required();

  auto* cv = app.add_subcommand("curvature", "Constant curvature class and metric decomposition");
  cv->add_option("--algebra", algebra_path, "Algebra file")->required();

  auto* dv = app.add_subcommand("derivations", "Basis of the skew-symmetric derivations");
  dv->add_option("--algebra", algebra_path, "Algebra file")->required();

  auto* om = app.add_subcommand("omega-sample", "Evaluate the Omega-function of a generator or certificate");
  om->add_option("--algebra", algebra_path, "Algebra file")->required();
  om->add_option("--generator", generator_path, "Generator or certificate file")->required();
  om->add_option("--point", point, "gamma,h_1,...,h_n as rationals")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  const auto load = [&](const std::string& name, const std::string& path) -> std::optional<Input> {
    try {
      return Input{name, io::read_file(path)};
    } catch (const ParseError& e) {
      err << "skt: error: " << e.what() << "\n";
      return std::nullopt;
    }
  };
  const auto algebra = load("algebra", algebra_path);
  if (!algebra) return kParse;

  Outcome result;
  if (*kb) {
    result = killing_basis(*algebra, degree, method, settings);
  } else if (*dc) {
    const auto tensor = load("tensor", tensor_path);
    if (!tensor) return kParse;
    result = decompose(*algebra, *tensor, settings);
    if (!out_path.empty() && result.report.contains("result")) {
      std::ofstream file(out_path, std::ios::binary);
      file << render(result.report["result"]["certificate"], true);
      if (!file) {
        err << "skt: error: cannot write \"" << out_path << "\"\n";
        return kUsage;
      }
    }
  } else if (*vf) {
    const auto cert = load("certificate", certificate_path);
    if (!cert) return kParse;
    result = verify(*algebra, *cert, settings);
  } else if (*cv) {
    result = curvature(*algebra, settings);
  } else if (*dv) {
    result = derivations(*algebra, settings);
  } else {
    const auto gen = load("generator", generator_path);
    if (!gen) return kParse;
    result = omega_sample(*algebra, *gen, point, settings);
  }

  const bool failed = result.report.contains("error");
  if (json || pretty) {
    out << render(result.report, pretty);
  } else if (!failed) {
    out << result.summary << "\n";
  }
  if (failed) err << "skt: " << result.summary << "\n";
  return result.exit_code;
}

}  // namespace skt::app
