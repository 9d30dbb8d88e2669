#pragma once

// Command implementations behind the `skt` executable. Each command takes the
// raw input texts (so reports can hash them) and returns the exit code, the
// JSON report and a short human summary.
//
// Exit codes:
//   0  success
//   1  usage error (bad flags, unreadable point list)
//   2  parse error in an input file
//   3  method / algebra mismatch (structured method or almost abelian only
//      command on a general-form algebra)
//   4  tensor is not Killing
//   5  verification failed (certificate rejected, or structured and brute
//      force bases disagree)

#include "skt/io.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>

namespace skt::app {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kParse = 2,
  kMismatch = 3,
  kNotKilling = 4,
  kVerificationFailed = 5,
};

struct Settings {
  std::uint64_t seed = 0x5EED;
  double tol = 1e-9;
  std::size_t samples = 20;
  std::size_t order_floor = 12;
};

struct Outcome {
  int exit_code = kOk;
  io::Json report;
  std::string summary;
};

/// A named input file and its contents.
struct Input {
  std::string name;
  std::string text;
};

/// 64-bit FNV-1a of the bytes, as 16 lowercase hex digits.
std::string fnv1a_hex(std::string_view bytes);

/// method: "structured", "brute", "both", or "auto" (structured for almost
/// abelian input, brute force otherwise).
Outcome killing_basis(const Input& algebra, std::size_t degree, const std::string& method, const Settings& s);
Outcome decompose(const Input& algebra, const Input& tensor, const Settings& s);
Outcome verify(const Input& algebra, const Input& certificate, const Settings& s);
Outcome curvature(const Input& algebra, const Settings& s);
Outcome derivations(const Input& algebra, const Settings& s);
/// point: comma separated rationals (gamma, h_1, ..., h_n).
Outcome omega_sample(const Input& algebra, const Input& generator, const std::string& point, const Settings& s);

std::string render(const io::Json& report, bool pretty);

/// Full command line entry point; writes the report to `out` and
/// diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace skt::app
