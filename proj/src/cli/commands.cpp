#include <algorithm>
#include <cmath>
#include <optional>

#include "CLI11.hpp"

#include "isorkhs/cli.hpp"
#include "isorkhs/errors.hpp"
#include "isorkhs/seqmodel.hpp"

namespace isorkhs::cli {

namespace {

struct Flags {
  std::string command;
  std::string verb;
  std::string input;
  std::string nodes_file;
  double theta = 2.0;
  double ridge = 0.0;
  std::optional<double> tol;
  std::uint64_t seed = 0;
  std::string output;  // json, or csv for export
  std::optional<double> x;
  std::optional<double> phi;
  int n = 101;
  std::string suite = "all";
  bool timing = false;
};

const std::vector<std::string> kCommands = {"eval", "inner", "norm", "gram", "interp",
                                            "power", "seq", "geom", "verify", "export"};
const std::vector<std::string> kGeomVerbs = {"sum",   "area", "perimeter", "width", "norm",
                                             "deficit", "tofunction", "equiv", "cauchy"};

funcspace::Options options(const Flags& f) {
  funcspace::Options o;
  if (f.tol) {
    if (!(*f.tol > 0.0)) throw InputError("--tol must be positive");
    o.spec.abs_tol = o.spec.rel_tol = *f.tol;
  }
  return o;
}

Json input(const Flags& f) {
  if (f.input.empty()) throw InputError("--input FILE is required for " + f.command);
  return readJsonFile(f.input);
}

double requireX(const std::optional<double>& v, const char* flag) {
  if (!v) throw InputError(std::string(flag) + " is required");
  return *v;
}

// Node lists come from --nodes-file (a bare array or a record with "nodes")
// or from the "nodes" field of --input.
std::vector<double> readNodes(const Flags& f, const Json& doc) {
  auto fromJson = [](const Json& j) {
    const Json& arr = j.is_array() ? j : (j.is_object() && j.contains("nodes") ? j.at("nodes") : Json());
    if (!arr.is_array()) throw InputError("expected a node array");
    std::vector<double> nodes;
    for (const auto& v : arr) {
      if (!v.is_number()) throw InputError("nodes must be numbers");
      nodes.push_back(v.get<double>());
    }
    return nodes;
  };
  if (!f.nodes_file.empty()) return fromJson(readJsonFile(f.nodes_file));
  return fromJson(doc);
}

double paramOr(const Json& doc, const char* key, double fallback) {
  if (doc.is_object() && doc.contains(key)) {
    if (!doc.at(key).is_number()) throw InputError(std::string(key) + " must be a number");
    return doc.at(key).get<double>();
  }
  return fallback;
}

Json matrixJson(const Eigen::MatrixXd& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json r = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) r.push_back(m(i, j));
    rows.push_back(std::move(r));
  }
  return rows;
}

Json runGeom(const Flags& f) {
  const Json doc = input(f);
  const std::string& v = f.verb;
  if (v == "sum") {
    const auto p = readPair(doc);
    return writeBody(convexgeo::minkowskiSum(p.u, p.v));
  }
  if (v == "area") return Json{{"area", convexgeo::area(readBody(doc))}};
  if (v == "perimeter") return Json{{"perimeter", convexgeo::perimeter(readBody(doc))}};
  if (v == "width") {
    const double phi = requireX(f.phi, "--phi");
    return Json{{"phi", phi}, {"width", convexgeo::width(readBody(doc), phi)}};
  }
  if (v == "cauchy") return Json{{"residual", convexgeo::cauchyCheck(readBody(doc), options(f).spec)}};
  if (v == "norm") {
    const auto p = readPair(doc);
    const double n2 = convexgeo::convexNormSquared(p);
    return Json{{"norm2", n2}, {"norm", std::sqrt(std::max(0.0, n2))}};
  }
  if (v == "deficit") {
    const auto p = readPair(doc);
    return Json{{"deficit", convexgeo::pairDeficit(p)},
                {"perimeter", convexgeo::pairPerimeter(p)},
                {"measure", convexgeo::pairMeasure(p)}};
  }
  if (v == "tofunction") return writeExpansion(convexgeo::pairToExpansion(readPair(doc)));
  if (v == "equiv") {
    if (!doc.is_object() || !doc.contains("P") || !doc.contains("Q")) {
      throw InputError("equiv needs {\"P\": pair, \"Q\": pair}");
    }
    return Json{{"equivalent", convexgeo::pairEquivalent(readPair(doc.at("P")), readPair(doc.at("Q")))}};
  }
  throw InputError("unknown geom verb \"" + v + "\"");
}

struct Outcome {
  Json doc;
  std::string text;  // used instead of doc when set
  int exit_code = 0;
  std::string err;
};

Outcome dispatch(Flags f) {
  const std::string& c = f.command;
  if (f.output.empty()) f.output = c == "export" ? "csv" : "json";
  if (f.output != "json" && f.output != "csv") throw InputError("--output must be json or csv");
  if (f.output == "csv" && c != "export") throw InputError("csv output is only available for export");

  if (c == "eval") {
    const H1Function fn = readFunction(input(f));
    const double x = requireX(f.x, "--x");
    return {Json{{"x", x}, {"value", fn(x)}, {"derivative", fn.derivative(x)}}};
  }
  if (c == "inner") {
    const Json doc = input(f);
    if (!doc.is_object() || !doc.contains("f") || !doc.contains("g")) {
      throw InputError("inner needs {\"f\": record, \"g\": record}");
    }
    return {Json{{"inner", funcspace::innerProductIso(readFunction(doc.at("f")), readFunction(doc.at("g")),
                                                      options(f))}}};
  }
  if (c == "norm") {
    const double n2 = funcspace::normIsoSquared(readFunction(input(f)), options(f));
    return {Json{{"norm2", n2}, {"norm", std::sqrt(std::max(0.0, n2))}}};
  }
  if (c == "gram") {
    const Json doc = f.input.empty() ? Json::object() : input(f);
    const double theta = paramOr(doc, "theta", f.theta);
    const auto g = kernel::gramMatrix(theta, readNodes(f, doc), f.ridge);
    return {Json{{"theta", g.theta},
                 {"ridge", g.ridge},
                 {"nodes", g.nodes},
                 {"matrix", matrixJson(g.matrix)},
                 {"min_eigenvalue", g.min_eigenvalue},
                 {"max_eigenvalue", g.max_eigenvalue},
                 {"condition", g.condition_estimate}}};
  }
  if (c == "interp") {
    const Json doc = input(f);
    if (!doc.is_object() || !doc.contains("values")) throw InputError("interp needs \"nodes\" and \"values\"");
    std::vector<double> values;
    for (const auto& v : doc.at("values")) {
      if (!v.is_number()) throw InputError("values must be numbers");
      values.push_back(v.get<double>());
    }
    const auto s = kernel::interpolate(readNodes(f, doc), values, paramOr(doc, "theta", f.theta),
                                       paramOr(doc, "ridge", f.ridge));
    Json out = writeInterpolant(s);
    out["jitter_fallback"] = s.jitter_fallback;
    out["least_squares"] = s.least_squares;
    return {out};
  }
  if (c == "power") {
    const Json doc = f.input.empty() ? Json::object() : input(f);
    const double x = requireX(f.x, "--x");
    const auto g = kernel::gramMatrix(paramOr(doc, "theta", f.theta), readNodes(f, doc), f.ridge);
    return {Json{{"x", x}, {"power", kernel::powerFunction(g, x)}}};
  }
  if (c == "seq") {
    const DiangleExpansion e = readExpansion(input(f));
    Json out{{"norm2", seqmodel::seqNormSquared(e)},
             {"gap", seqmodel::sequenceIsoperimetricGap(e)},
             {"perimeter", nullptr},
             {"area", nullptr}};
    if (e.constant() == 0.0) out["reduced_gap"] = seqmodel::reducedIsoperimetricGap(e);
    if (seqmodel::isPolygon(e)) {
      out["perimeter"] = seqmodel::polygonPerimeter(e);
      out["area"] = seqmodel::polygonArea(e);
    }
    return {out};
  }
  if (c == "geom") return {runGeom(f)};
  if (c == "verify") {
    const auto report = runSuite(f.suite, f.seed);
    Outcome o{reportToJson(report, f.timing)};
    o.exit_code = report.passed() ? 0 : 1;
    if (!f.timing) o.err = "duration_s " + std::to_string(report.duration_s) + "\n";
    return o;
  }
  if (c == "export") {
    const H1Function fn = readFunction(input(f));
    if (f.output == "json") {
      Json xs = Json::array(), vs = Json::array(), ds = Json::array();
      if (f.n < 2) throw InputError("grid needs at least 2 points");
      for (int i = 0; i < f.n; ++i) {
        const double x = i == f.n - 1 ? quad::kHalfPi : -quad::kHalfPi + quad::kPi * i / (f.n - 1);
        xs.push_back(x);
        vs.push_back(fn(x));
        ds.push_back(fn.derivative(x));
      }
      return {Json{{"x", xs}, {"f", vs}, {"fprime", ds}}};
    }
    Outcome o;
    o.text = exportGrid(fn, f.n);
    return o;
  }
  throw InputError("unknown command \"" + c + "\"");
}

int exitCodeFor(const Error& e) {
  const std::string k = e.kind();
  if (k == "invariant") return 1;
  if (k == "domain" || k == "input") return 2;
  return 3;
}

CommandResult errorResult(int code, const std::string& kind, const std::string& detail) {
  CommandResult r;
  r.exit_code = code;
  r.out = dumpJson(Json{{"error", Json{{"kind", kind}, {"detail", detail}}}}) + "\n";
  return r;
}

}  // namespace

CommandResult runCommand(const std::vector<std::string>& args) {
  Flags f;
  CLI::App app{"Isoperimetric RKHS toolkit"};
  app.add_option("command", f.command, "subcommand")->required()->check(CLI::IsMember(kCommands));
  app.add_option("verb", f.verb, "geom verb");
  app.add_option("--input", f.input, "input JSON file");
  app.add_option("--nodes-file", f.nodes_file, "JSON node array");
  app.add_option("--theta", f.theta, "kernel parameter (default 2)");
  app.add_option("--ridge", f.ridge, "ridge regularization (default 0)");
  app.add_option("--tol", f.tol, "quadrature tolerance");
  app.add_option("--seed", f.seed, "64-bit seed (default 0)");
  app.add_option("--output", f.output, "json|csv (export defaults to csv)");
  app.add_option("--x", f.x, "evaluation point");
  app.add_option("--phi", f.phi, "direction angle");
  app.add_option("--n", f.n, "grid size for export");
  app.add_option("--suite", f.suite, "verification suite");
  app.add_flag("--timing", f.timing, "include duration in the verify report");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    return {0, app.help(), ""};
  } catch (const CLI::ParseError& e) {
    return errorResult(2, "input", e.what());
  }
  if (f.command == "geom" && std::find(kGeomVerbs.begin(), kGeomVerbs.end(), f.verb) == kGeomVerbs.end()) {
    return errorResult(2, "input", "geom needs a verb: sum, area, perimeter, width, norm, deficit, tofunction, equiv, cauchy");
  }
  if (f.command != "geom" && !f.verb.empty()) {
    return errorResult(2, "input", "unexpected argument \"" + f.verb + "\"");
  }

  try {
    Outcome o = dispatch(f);
    CommandResult r;
    r.exit_code = o.exit_code;
    r.out = o.text.empty() ? dumpJson(o.doc) + "\n" : o.text;
    r.err = o.err;
    return r;
  } catch (const Error& e) {
    return errorResult(exitCodeFor(e), e.kind(), e.what());
  } catch (const std::exception& e) {
    return errorResult(3, "internal", e.what());
  }
}

}  // namespace isorkhs::cli
