#include "isorkhs/convexgeo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "isorkhs/errors.hpp"
#include "isorkhs/seqmodel.hpp"

namespace isorkhs::convexgeo {

namespace {

using quad::kHalfPi;
using quad::kPi;

constexpr double kShapeTol = 1e-12;
constexpr double kEquivalenceTol = 1e-9;
constexpr int kEquivalenceGrid = 721;

double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
Point sub(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
double norm(Point a) { return std::hypot(a.x, a.y); }

double maxCoordinate(std::span<const Point> vs) {
  double s = 0.0;
  for (const auto& v : vs) s = std::max({s, std::abs(v.x), std::abs(v.y)});
  return s;
}

double signedArea(std::span<const Point> vs) {
  double a = 0.0;
  for (std::size_t i = 0; i < vs.size(); ++i) a += cross(vs[i], vs[(i + 1) % vs.size()]);
  return 0.5 * a;
}

// Support value max⟨v, n(φ)⟩ with n(φ) = (−sin φ, cos φ).
double support(const SymmetricPolygon& body, double phi) {
  const Point n{-std::sin(phi), std::cos(phi)};
  double best = 0.0;
  for (const auto& v : body.vertices()) best = std::max(best, dot(v, n));
  return best;
}

H1Function widthDifference(const BodyPair& p, double scale) {
  SampledFunction f;
  f.value = [p, scale](double phi) { return scale * (width(p.u, phi) - width(p.v, phi)); };
  f.derivative = [p, scale](double phi) {
    return scale * (widthDerivative(p.u, phi) - widthDerivative(p.v, phi));
  };
  f.kinks = widthKinks(p.u);
  const auto kv = widthKinks(p.v);
  f.kinks.insert(f.kinks.end(), kv.begin(), kv.end());
  return H1Function(std::move(f));
}

bool sameVertexSet(const SymmetricPolygon& a, const SymmetricPolygon& b, double tol) {
  if (a.vertices().size() != b.vertices().size()) return false;
  for (const auto& v : a.vertices()) {
    const bool found = std::any_of(b.vertices().begin(), b.vertices().end(),
                                   [&](const Point& w) { return norm(sub(v, w)) <= tol; });
    if (!found) return false;
  }
  return true;
}

bool sameWidths(const SymmetricPolygon& a, const SymmetricPolygon& b, double tol) {
  for (int k = 0; k < kEquivalenceGrid; ++k) {
    const double phi = -kHalfPi + kPi * k / (kEquivalenceGrid - 1);
    if (std::abs(width(a, phi) - width(b, phi)) > tol) return false;
  }
  return true;
}

}  // namespace

// ---------------------------------------------------------------- bodies

SymmetricPolygon::SymmetricPolygon() : vertices_{Point{0.0, 0.0}} {}

double SymmetricPolygon::scale() const { return maxCoordinate(vertices_); }

SymmetricPolygon SymmetricPolygon::fromVertices(std::vector<Point> vs) {
  for (const auto& v : vs) {
    if (!std::isfinite(v.x) || !std::isfinite(v.y)) throw DomainError("vertex must be finite");
  }
  const double scale = maxCoordinate(vs);
  if (vs.empty() || scale == 0.0) return SymmetricPolygon();
  const double len_tol = kShapeTol * scale;
  const double area_tol = kShapeTol * scale * scale;

  auto requireSymmetric = [&](const std::vector<Point>& pts) {
    for (const auto& v : pts) {
      const bool mirrored = std::any_of(pts.begin(), pts.end(), [&](const Point& w) {
        return std::hypot(v.x + w.x, v.y + w.y) <= len_tol;
      });
      if (!mirrored) throw DomainError("polygon is not centrally symmetric about the origin");
    }
  };

  if (std::abs(signedArea(vs)) <= area_tol) {
    // Collinear input: a segment through the origin, or the point.
    const auto far = *std::max_element(vs.begin(), vs.end(),
                                       [](const Point& a, const Point& b) { return norm(a) < norm(b); });
    if (norm(far) <= len_tol) return SymmetricPolygon();
    for (const auto& v : vs) {
      if (std::abs(cross(far, v)) > area_tol || norm(v) > norm(far) + len_tol) {
        throw DomainError("degenerate polygon is not a segment through the origin");
      }
    }
    requireSymmetric(vs);
    const Point a = far.y < 0.0 || (far.y == 0.0 && far.x < 0.0) ? far : Point{-far.x, -far.y};
    return SymmetricPolygon({a, Point{-a.x, -a.y}});
  }

  if (signedArea(vs) < 0.0) std::reverse(vs.begin(), vs.end());

  // Drop repeated and collinear vertices until nothing changes.
  bool changed = true;
  while (changed && vs.size() > 2) {
    changed = false;
    for (std::size_t i = 0; i < vs.size() && vs.size() > 2; ++i) {
      const std::size_t n = vs.size();
      const Point prev = vs[(i + n - 1) % n];
      const Point cur = vs[i];
      const Point next = vs[(i + 1) % n];
      const Point e1 = sub(cur, prev);
      const Point e2 = sub(next, cur);
      const bool repeated = norm(e1) <= len_tol;
      const bool straight = std::abs(cross(e1, e2)) <= area_tol && dot(e1, e2) > 0.0;
      if (repeated || straight) {
        vs.erase(vs.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        break;
      }
    }
  }

  const std::size_t n = vs.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point e1 = sub(vs[i], vs[(i + n - 1) % n]);
    const Point e2 = sub(vs[(i + 1) % n], vs[i]);
    if (cross(e1, e2) < -area_tol) throw DomainError("polygon is not convex");
  }
  requireSymmetric(vs);

  // Start at the lowest (then leftmost) vertex so equal bodies print alike.
  const auto start = std::min_element(vs.begin(), vs.end(), [&](const Point& a, const Point& b) {
    if (std::abs(a.y - b.y) > len_tol) return a.y < b.y;
    return a.x < b.x;
  });
  std::rotate(vs.begin(), start, vs.end());
  return SymmetricPolygon(std::move(vs));
}

std::vector<Point> SymmetricPolygon::edges() const {
  std::vector<Point> out;
  if (isPoint()) return out;
  const std::size_t n = vertices_.size();
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(sub(vertices_[(i + 1) % n], vertices_[i]));
  return out;
}

SymmetricPolygon zonotopeFromGenerators(std::span<const Generator> generators) {
  std::vector<Generator> gens;
  for (const auto& g : generators) {
    if (!(g.length >= 0.0) || !std::isfinite(g.length)) {
      throw DomainError("generator length must be nonnegative");
    }
    if (g.length > 0.0) gens.push_back({normalizeAngle(g.angle), g.length});
  }
  if (gens.empty()) return SymmetricPolygon();
  std::stable_sort(gens.begin(), gens.end(),
                   [](const Generator& a, const Generator& b) { return a.angle < b.angle; });

  std::vector<Point> steps;
  steps.reserve(gens.size());
  Point start{0.0, 0.0};
  for (const auto& g : gens) {
    const Point s{g.length * std::cos(g.angle), g.length * std::sin(g.angle)};
    steps.push_back(s);
    start.x -= 0.5 * s.x;
    start.y -= 0.5 * s.y;
  }
  std::vector<Point> vs;
  vs.reserve(2 * steps.size());
  Point cur = start;
  for (const auto& s : steps) {
    vs.push_back(cur);
    cur = {cur.x + s.x, cur.y + s.y};
  }
  for (const auto& s : steps) {
    vs.push_back(cur);
    cur = {cur.x - s.x, cur.y - s.y};
  }
  return SymmetricPolygon::fromVertices(std::move(vs));
}

std::vector<Generator> generatorsOf(const SymmetricPolygon& body) {
  std::vector<Generator> gens;
  const auto es = body.edges();
  for (std::size_t i = 0; i < es.size() / 2; ++i) {
    gens.push_back({normalizeAngle(std::atan2(es[i].y, es[i].x)), norm(es[i])});
  }
  return gens;
}

SymmetricPolygon minkowskiSum(const SymmetricPolygon& u, const SymmetricPolygon& v) {
  // Both bodies are zonotopes; walking the merged, angle-sorted half-edge
  // lists from −½Σg is the edge walk of the sum.
  auto gens = generatorsOf(u);
  const auto gv = generatorsOf(v);
  gens.insert(gens.end(), gv.begin(), gv.end());
  return zonotopeFromGenerators(gens);
}

double area(const SymmetricPolygon& body) {
  if (body.vertices().size() < 3) return 0.0;
  return std::abs(signedArea(body.vertices()));
}

double perimeter(const SymmetricPolygon& body) {
  double p = 0.0;
  for (const auto& e : body.edges()) p += norm(e);
  return p;
}

double width(const SymmetricPolygon& body, double phi) { return 2.0 * support(body, phi); }

double widthDerivative(const SymmetricPolygon& body, double phi) {
  if (body.isPoint()) return 0.0;
  const Point n{-std::sin(phi), std::cos(phi)};
  const Point dn{-std::cos(phi), -std::sin(phi)};
  const double best = support(body, phi);
  const double tol = kShapeTol * std::max(1.0, body.scale());
  double slope = -std::numeric_limits<double>::infinity();
  for (const auto& v : body.vertices()) {
    if (dot(v, n) >= best - tol) slope = std::max(slope, dot(v, dn));
  }
  return 2.0 * slope;
}

std::vector<double> widthKinks(const SymmetricPolygon& body) {
  std::vector<double> k;
  for (const auto& g : generatorsOf(body)) k.push_back(g.angle);
  return k;
}

SymmetricPolygon regularPolygon(int vertex_count) {
  if (vertex_count < 4 || vertex_count % 2 != 0) {
    throw DomainError("regular symmetric polygon needs an even vertex count >= 4");
  }
  const int n = vertex_count / 2;
  const double side = 2.0 * std::sin(kPi / vertex_count);
  std::vector<Generator> gens;
  for (int j = 0; j < n; ++j) {
    gens.push_back({kHalfPi + kPi / vertex_count + j * kPi / n, side});
  }
  return zonotopeFromGenerators(gens);
}

SymmetricPolygon polygonOfExpansion(const DiangleExpansion& x) {
  if (!seqmodel::isPolygon(x)) {
    throw DomainError("expansion is not a polygon (needs x0 = 0 and nonnegative coefficients)");
  }
  std::vector<Generator> gens;
  for (const auto& t : x.terms()) gens.push_back({t.angle, 2.0 * t.coeff});
  return zonotopeFromGenerators(gens);
}

SymmetricPolygon segment(double angle, double length) {
  const Generator g{angle, length};
  return zonotopeFromGenerators(std::span<const Generator>(&g, 1));
}

// ---------------------------------------------------------------- pairs

double pairMeasure(const BodyPair& p) {
  return 2.0 * area(p.u) + 2.0 * area(p.v) - area(minkowskiSum(p.u, p.v));
}

double pairPerimeter(const BodyPair& p) { return perimeter(p.u) - perimeter(p.v); }

double pairDeficit(const BodyPair& p) {
  const double o = pairPerimeter(p);
  return o * o - 4.0 * kPi * pairMeasure(p);
}

double convexNormSquared(const BodyPair& p) {
  const double o = pairPerimeter(p);
  const double n2 = (2.0 * o * o - 4.0 * kPi * pairMeasure(p)) / (4.0 * kPi * kPi);
  if (n2 < -1e-9) throw InvariantViolation("negative squared convex norm " + std::to_string(n2));
  return n2;
}

double convexNorm(const BodyPair& p) { return std::sqrt(std::max(0.0, convexNormSquared(p))); }

H1Function pairToFunction(const BodyPair& p) { return widthDifference(p, kIsometryScale); }

DiangleExpansion pairToExpansion(const BodyPair& p) {
  std::vector<DiangleTerm> terms;
  for (const auto& g : generatorsOf(p.u)) terms.push_back({g.angle, kIsometryScale * g.length});
  for (const auto& g : generatorsOf(p.v)) terms.push_back({g.angle, -kIsometryScale * g.length});
  return DiangleExpansion(0.0, std::move(terms));
}

bool pairEquivalent(const BodyPair& p, const BodyPair& q) {
  const SymmetricPolygon lhs = minkowskiSum(p.u, q.v);
  const SymmetricPolygon rhs = minkowskiSum(p.v, q.u);
  const double tol = kEquivalenceTol * std::max(lhs.scale(), rhs.scale());
  const bool by_vertices = sameVertexSet(lhs, rhs, tol);
  const bool by_widths = sameWidths(lhs, rhs, tol);
  if (by_vertices != by_widths) {
    throw InvariantViolation("vertex and width equivalence tests disagree");
  }
  return by_vertices;
}

double cauchyCheck(const SymmetricPolygon& body, const quad::QuadratureSpec& spec) {
  const auto kinks = widthKinks(body);
  const double integral =
      quad::integrate([&](double phi) { return width(body, phi); }, quad::Interval::delta(), kinks, spec);
  return std::abs(integral - perimeter(body));
}

// ---------------------------------------------------------------- calibration

CalibrationResult calibrateIsometryScale() {
  const BodyPair disc{regularPolygon(64), SymmetricPolygon::point()};
  const BodyPair diangles{segment(0.7, 2.0), segment(0.2, 2.0)};
  CalibrationResult r;
  r.candidates = {1.0, 0.5};
  for (double c : r.candidates) {
    double d = 0.0;
    for (const auto* p : {&disc, &diangles}) {
      const double fn = funcspace::innerProductIso(widthDifference(*p, c), widthDifference(*p, c));
      d += std::abs(convexNormSquared(*p) - fn);
    }
    r.discrepancies.push_back(d);
  }
  const auto best = std::min_element(r.discrepancies.begin(), r.discrepancies.end());
  r.chosen = r.candidates[static_cast<std::size_t>(best - r.discrepancies.begin())];
  return r;
}

CalibrationResult calibratePolygonAreaScale() {
  const std::vector<DiangleExpansion> polygons = {
      DiangleExpansion(0.0, {{-kPi / 4, 1.0}, {kPi / 4, 1.0}}),
      DiangleExpansion(0.0, {{0.0, 1.0}, {-kHalfPi, 1.0}}),
      DiangleExpansion(0.0, {{0.3, 0.5}, {1.0, 1.2}, {-0.8, 0.7}}),
  };
  CalibrationResult r;
  r.candidates = {1.0, 2.0};
  for (double c : r.candidates) {
    double d = 0.0;
    for (const auto& x : polygons) {
      d += std::abs(area(polygonOfExpansion(x)) - c * seqmodel::sineForm(x));
    }
    r.discrepancies.push_back(d);
  }
  const auto best = std::min_element(r.discrepancies.begin(), r.discrepancies.end());
  r.chosen = r.candidates[static_cast<std::size_t>(best - r.discrepancies.begin())];
  return r;
}

}  // namespace isorkhs::convexgeo
