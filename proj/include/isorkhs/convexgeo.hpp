#pragma once

#include <span>
#include <vector>

#include "isorkhs/expansion.hpp"
#include "isorkhs/funcspace.hpp"

namespace isorkhs::convexgeo {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

/// Centrally symmetric convex polygon, stored as its counterclockwise vertex
/// list. Degenerate bodies are allowed: a segment has two antipodal vertices,
/// the point body has the single vertex (0, 0).
class SymmetricPolygon {
 public:
  /// The point body {0}.
  SymmetricPolygon();

  /// Validates and canonicalizes: clockwise input is reversed, repeated and
  /// collinear vertices are dropped (tolerance 1e−12·scale). DomainError if
  /// the result is not convex or not symmetric about the origin.
  static SymmetricPolygon fromVertices(std::vector<Point> vertices);

  static SymmetricPolygon point() { return {}; }

  std::span<const Point> vertices() const { return vertices_; }
  bool isPoint() const { return vertices_.size() == 1; }
  bool isSegment() const { return vertices_.size() == 2; }
  /// max |coordinate| over the vertices.
  double scale() const;

  /// Edge vectors of the closed boundary walk (none for a point, two
  /// opposite ones for a segment).
  std::vector<Point> edges() const;

 private:
  explicit SymmetricPolygon(std::vector<Point> vertices) : vertices_(std::move(vertices)) {}
  std::vector<Point> vertices_;
};

struct Generator {
  double angle;   // direction of the segment, any real (normalized mod π)
  double length;  // ≥ 0
};

/// Minkowski sum of the origin-centred segments ℓᵢ·(cos φᵢ, sin φᵢ)·[−½, ½].
SymmetricPolygon zonotopeFromGenerators(std::span<const Generator> generators);

/// Generators recovered from the edges (one per pair of opposite edges),
/// angles in [−π/2, π/2).
std::vector<Generator> generatorsOf(const SymmetricPolygon& body);

/// Merged edge walk over both boundaries.
SymmetricPolygon minkowskiSum(const SymmetricPolygon& u, const SymmetricPolygon& v);

double area(const SymmetricPolygon& body);       // shoelace
double perimeter(const SymmetricPolygon& body);  // segment: twice its length

/// Extent of the body across the line ℝ·(cos φ, sin φ):
/// 2·max over vertices of |⟨v, (−sin φ, cos φ)⟩|.
double width(const SymmetricPolygon& body, double phi);

/// d/dφ width, right-hand value at the kinks.
double widthDerivative(const SymmetricPolygon& body, double phi);

/// Directions in [−π/2, π/2) where the width has a kink (the edge directions).
std::vector<double> widthKinks(const SymmetricPolygon& body);

/// Formal difference [U, V] of two symmetric convex bodies.
struct BodyPair {
  SymmetricPolygon u;
  SymmetricPolygon v;
};

/// 2m(U) + 2m(V) − m(U + V).
double pairMeasure(const BodyPair& p);

/// o(U) − o(V).
double pairPerimeter(const BodyPair& p);

/// (o(U) − o(V))² − 4π·m([U, V]) ≥ 0.
double pairDeficit(const BodyPair& p);

/// (1/4π²)[2(o(U) − o(V))² − 4π·m([U, V])]. InvariantViolation below −1e−9.
double convexNormSquared(const BodyPair& p);
double convexNorm(const BodyPair& p);

/// Scale between width differences and members of H¹₀(Δ): the function of a
/// pair is kIsometryScale·(width_U − width_V), i.e. the difference of the
/// half-widths. Confirmed by calibrateIsometryScale.
inline constexpr double kIsometryScale = 0.5;

/// φ ↦ kIsometryScale·(width(U, φ) − width(V, φ)) as a Sampled member with its
/// analytic derivative and all edge directions registered as kinks.
H1Function pairToFunction(const BodyPair& p);

/// The same function in closed form: Σ (ℓᵢ/2)·I_{φᵢ} over the generators of U
/// minus those of V.
DiangleExpansion pairToExpansion(const BodyPair& p);

/// [U, V] ◊ [P, Q] ⟺ U + Q = V + P. Decided both by comparing vertex sets
/// (1e−9·scale) and by comparing width functions on a 721-point grid; an
/// InvariantViolation is raised if the two tests disagree.
bool pairEquivalent(const BodyPair& p, const BodyPair& q);

/// |∫_Δ width(U, φ) dφ − perimeter(U)|.
double cauchyCheck(const SymmetricPolygon& body, const quad::QuadratureSpec& spec = {});

/// Regular 2n-gon inscribed in the unit circle, built as a zonotope.
SymmetricPolygon regularPolygon(int vertex_count);

/// The polygon W = Σ xᵢI_{φᵢ} of a nonnegative expansion with x₀ = 0: the
/// zonotope with generators (φᵢ, 2xᵢ). DomainError for other expansions.
SymmetricPolygon polygonOfExpansion(const DiangleExpansion& x);

/// Segment of the given length along direction `angle`, centred at the origin.
SymmetricPolygon segment(double angle, double length);

struct CalibrationResult {
  double chosen = 0.0;
  std::vector<double> candidates;
  std::vector<double> discrepancies;
};

/// Picks c ∈ {1, 1/2} minimizing |convexNorm² − ‖c·(w_U − w_V)‖ᵢ²| summed over
/// the 64-gon/point pair and a diangle pair.
CalibrationResult calibrateIsometryScale();

/// Picks c ∈ {1, 2} minimizing |shoelace area − c·ΣΣ sin|φᵢ−φⱼ|xᵢxⱼ| over a
/// fixed set of polygons W = Σ xᵢI_{φᵢ} realized with segments of length 2xᵢ.
CalibrationResult calibratePolygonAreaScale();

}  // namespace isorkhs::convexgeo
