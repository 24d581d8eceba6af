#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "isorkhs/convexgeo.hpp"
#include "isorkhs/funcspace.hpp"
#include "isorkhs/kernel.hpp"

namespace isorkhs::cli {

using Json = nlohmann::json;

// ------------------------------------------------------------------ JSON I/O

/// Serializes with every floating-point number written as %.17g. Integral
/// doubles keep a trailing ".0"; non-finite numbers become null.
std::string dumpJson(const Json& doc, int indent = 2);

/// InputError on syntax errors or unreadable files.
Json parseJson(const std::string& text);
Json readJsonFile(const std::string& path);

/// {"type":"trigpoly",...} or {"type":"dianglespan",...}. Sampled records are
/// rejected with InputError.
H1Function readFunction(const Json& record);
Json writeFunction(const H1Function& f);

DiangleExpansion readExpansion(const Json& record);
Json writeExpansion(const DiangleExpansion& e);

/// {"vertices":[[x,y],...]} or {"generators":[{"angle":r,"length":r},...]}.
convexgeo::SymmetricPolygon readBody(const Json& record);
Json writeBody(const convexgeo::SymmetricPolygon& body);

/// {"U": body, "V": body}.
convexgeo::BodyPair readPair(const Json& record);
Json writePair(const convexgeo::BodyPair& pair);

/// {"theta":r,"ridge":r,"nodes":[...],"coeffs":[...]}.
kernel::Interpolant readInterpolant(const Json& record);
Json writeInterpolant(const kernel::Interpolant& s);

/// n uniform rows x,f(x),f′(x) over Δ with a header line.
std::string exportGrid(const H1Function& f, int n);

// ------------------------------------------------------------ verification

struct Check {
  std::string id;
  double value = 0.0;
  std::string relation = "<=";  // value <relation> tolerance
  double tolerance = 0.0;
  bool passed = false;
  std::string detail;  // set when the check threw
};

struct VerifyReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<Check> checks;
  double duration_s = 0.0;

  bool passed() const;
};

/// positivity, reproducing, gram-psd, sequence, geometry, holder,
/// classical-kernel, all.
const std::vector<std::string>& suiteNames();

/// InputError for an unknown suite name.
VerifyReport runSuite(const std::string& suite, std::uint64_t seed);

Json reportToJson(const VerifyReport& report, bool with_timing);

// ---------------------------------------------------------------- commands

struct CommandResult {
  int exit_code = 0;
  std::string out;
  std::string err;
};

/// Parses `args` (without the program name) and runs one subcommand. Never
/// throws; failures become an error document and a nonzero exit code.
CommandResult runCommand(const std::vector<std::string>& args);

}  // namespace isorkhs::cli
