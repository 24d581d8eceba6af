#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "isorkhs/cli.hpp"
#include "isorkhs/errors.hpp"

namespace isorkhs::cli {

namespace {

std::string formatNumber(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s(buf);
  if (s.find_first_of(".eE") == std::string::npos) s += ".0";
  return s;
}

void write(const Json& j, int indent, int depth, std::string& out) {
  const std::string pad = indent >= 0 ? std::string(static_cast<std::size_t>(indent * (depth + 1)), ' ') : "";
  const std::string close_pad = indent >= 0 ? std::string(static_cast<std::size_t>(indent * depth), ' ') : "";
  const char* nl = indent >= 0 ? "\n" : "";
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{";
      out += nl;
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) {
          out += ",";
          out += nl;
        }
        first = false;
        out += pad;
        out += Json(it.key()).dump();
        out += indent >= 0 ? ": " : ":";
        write(it.value(), indent, depth + 1, out);
      }
      out += nl;
      out += close_pad;
      out += "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      bool flat = true;
      for (const auto& e : j) flat = flat && !e.is_structured();
      out += "[";
      if (!flat) out += nl;
      bool first = true;
      for (const auto& e : j) {
        if (!first) {
          out += ",";
          out += flat ? (indent >= 0 ? " " : "") : nl;
        }
        first = false;
        if (!flat) out += pad;
        write(e, indent, depth + 1, out);
      }
      if (!flat) {
        out += nl;
        out += close_pad;
      }
      out += "]";
      return;
    }
    case Json::value_t::number_float:
      out += formatNumber(j.get<double>());
      return;
    default:
      out += j.dump();
  }
}

const Json& field(const Json& record, const char* key) {
  if (!record.is_object() || !record.contains(key)) {
    throw InputError(std::string("record is missing \"") + key + "\"");
  }
  return record.at(key);
}

double number(const Json& v, const char* what) {
  if (!v.is_number()) throw InputError(std::string(what) + " must be a number");
  return v.get<double>();
}

std::vector<double> numbers(const Json& v, const char* what) {
  if (!v.is_array()) throw InputError(std::string(what) + " must be an array of numbers");
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& e : v) out.push_back(number(e, what));
  return out;
}

Json array(std::span<const double> v) {
  Json a = Json::array();
  for (double x : v) a.push_back(x);
  return a;
}

}  // namespace

std::string dumpJson(const Json& doc, int indent) {
  std::string out;
  write(doc, indent, 0, out);
  return out;
}

Json parseJson(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

Json readJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parseJson(ss.str());
}

H1Function readFunction(const Json& record) {
  const Json& type = field(record, "type");
  if (!type.is_string()) throw InputError("\"type\" must be a string");
  const auto t = type.get<std::string>();
  if (t == "trigpoly") {
    std::vector<double> c = record.contains("cos") ? numbers(record.at("cos"), "cos") : std::vector<double>{};
    std::vector<double> s = record.contains("sin") ? numbers(record.at("sin"), "sin") : std::vector<double>{};
    return H1Function(TrigPoly(std::move(c), std::move(s)));
  }
  if (t == "dianglespan") return H1Function(readExpansion(record));
  if (t == "sampled") throw InputError("sampled functions have no portable record format");
  throw InputError("unknown function type \"" + t + "\"");
}

Json writeFunction(const H1Function& f) {
  if (const auto* p = f.asTrig()) {
    return Json{{"type", "trigpoly"}, {"cos", array(p->cosCoeffs())}, {"sin", array(p->sinCoeffs())}};
  }
  if (const auto* e = f.asSpan()) return writeExpansion(*e);
  throw InputError("sampled functions have no portable record format");
}

DiangleExpansion readExpansion(const Json& record) {
  if (record.contains("type") && record.at("type") != "dianglespan") {
    throw InputError("expected a dianglespan record");
  }
  const double x0 = record.contains("x0") ? number(record.at("x0"), "x0") : 0.0;
  std::vector<DiangleTerm> terms;
  if (record.contains("terms")) {
    const Json& ts = record.at("terms");
    if (!ts.is_array()) throw InputError("\"terms\" must be an array");
    for (const auto& t : ts) terms.push_back({number(field(t, "angle"), "angle"), number(field(t, "coeff"), "coeff")});
  }
  for (const auto& t : terms) {
    if (!std::isfinite(t.angle) || !std::isfinite(t.coeff)) throw InputError("expansion terms must be finite");
  }
  return DiangleExpansion(x0, std::move(terms));
}

Json writeExpansion(const DiangleExpansion& e) {
  Json terms = Json::array();
  for (const auto& t : e.terms()) terms.push_back(Json{{"angle", t.angle}, {"coeff", t.coeff}});
  return Json{{"type", "dianglespan"}, {"x0", e.constant()}, {"terms", terms}};
}

convexgeo::SymmetricPolygon readBody(const Json& record) {
  if (!record.is_object()) throw InputError("body record must be an object");
  if (record.contains("vertices")) {
    const Json& vs = record.at("vertices");
    if (!vs.is_array()) throw InputError("\"vertices\" must be an array");
    std::vector<convexgeo::Point> pts;
    for (const auto& v : vs) {
      if (!v.is_array() || v.size() != 2) throw InputError("vertex must be [x, y]");
      pts.push_back({number(v[0], "vertex"), number(v[1], "vertex")});
    }
    if (pts.empty()) return convexgeo::SymmetricPolygon::point();
    return convexgeo::SymmetricPolygon::fromVertices(std::move(pts));
  }
  if (record.contains("generators")) {
    const Json& gs = record.at("generators");
    if (!gs.is_array()) throw InputError("\"generators\" must be an array");
    std::vector<convexgeo::Generator> gens;
    for (const auto& g : gs) {
      const double len = number(field(g, "length"), "length");
      if (!(len >= 0.0)) throw DomainError("generator length must be nonnegative");
      gens.push_back({number(field(g, "angle"), "angle"), len});
    }
    return convexgeo::zonotopeFromGenerators(gens);
  }
  throw InputError("body record needs \"vertices\" or \"generators\"");
}

Json writeBody(const convexgeo::SymmetricPolygon& body) {
  Json vs = Json::array();
  for (const auto& v : body.vertices()) vs.push_back(Json::array({v.x, v.y}));
  return Json{{"vertices", vs}};
}

convexgeo::BodyPair readPair(const Json& record) {
  return {readBody(field(record, "U")), readBody(field(record, "V"))};
}

Json writePair(const convexgeo::BodyPair& pair) {
  return Json{{"U", writeBody(pair.u)}, {"V", writeBody(pair.v)}};
}

kernel::Interpolant readInterpolant(const Json& record) {
  kernel::Interpolant s;
  s.theta = number(field(record, "theta"), "theta");
  s.ridge = record.contains("ridge") ? number(record.at("ridge"), "ridge") : 0.0;
  s.nodes = numbers(field(record, "nodes"), "nodes");
  s.coeffs = numbers(field(record, "coeffs"), "coeffs");
  if (s.nodes.size() != s.coeffs.size()) throw InputError("nodes and coeffs differ in length");
  // Validates theta and the nodes.
  kernel::gramMatrix(s.theta, s.nodes, s.ridge);
  return s;
}

Json writeInterpolant(const kernel::Interpolant& s) {
  return Json{{"theta", s.theta}, {"ridge", s.ridge}, {"nodes", array(s.nodes)}, {"coeffs", array(s.coeffs)}};
}

std::string exportGrid(const H1Function& f, int n) {
  if (n < 2) throw InputError("grid needs at least 2 points");
  auto fmt = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  std::string out = "x,f,fprime\n";
  for (int i = 0; i < n; ++i) {
    const double x = i == n - 1 ? quad::kHalfPi : -quad::kHalfPi + quad::kPi * i / (n - 1);
    const double v = f(x);
    const double d = f.derivative(x);
    if (!std::isfinite(v) || !std::isfinite(d)) throw EvaluationError("non-finite value at x = " + fmt(x));
    out += fmt(x) + "," + fmt(v) + "," + fmt(d) + "\n";
  }
  return out;
}

}  // namespace isorkhs::cli
