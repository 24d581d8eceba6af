#pragma once

#include "isorkhs/expansion.hpp"
#include "isorkhs/funcspace.hpp"

// Finite-dimensional model of the space: the span of 𝟏 and the diangles with
// the inner product written directly in the Gram coefficients
//   ⟨𝟏,𝟏⟩ = 1,  ⟨𝟏,I_φ⟩ = 2/π,  ⟨I_φ,I_ψ⟩ = (4/π²)(2 − (π/2)sin|φ−ψ|).
namespace isorkhs::seqmodel {

/// Zonotope area = kPolygonAreaScale · ΣᵢΣⱼ sin|φᵢ−φⱼ| xᵢxⱼ for the polygon
/// Σ xᵢI_{φᵢ} (segments of length 2xᵢ). Fixed by the shoelace calibration in
/// convexgeo::calibratePolygonAreaScale.
inline constexpr double kPolygonAreaScale = 2.0;

H1Function toFunction(const DiangleExpansion& e);

double seqInner(const DiangleExpansion& x, const DiangleExpansion& y);

/// The three algebraically equal forms of ‖x‖²: the direct Gram form, the
/// completed-square form and its expansion.
struct NormForms {
  double gram;
  double completed_square;
  double expanded;
};

NormForms normSquaredForms(const DiangleExpansion& x);

/// ‖x‖². Throws InvariantViolation if the three forms disagree beyond
/// 1e−12·(1 + magnitude) or the result is below −1e−9.
double seqNormSquared(const DiangleExpansion& x);

/// ΣᵢΣⱼ sin|φᵢ−φⱼ| xᵢxⱼ.
double sineForm(const DiangleExpansion& x);

/// LHS − RHS of
///   (π/2·x₀ + Σxᵢ)² + 2(Σxᵢ)² ≥ (Σxᵢ)² + (π/2)ΣΣ sin|φᵢ−φⱼ|xᵢxⱼ,
/// which equals (π²/4)·‖x‖².
double sequenceIsoperimetricGap(const DiangleExpansion& x);

/// (4/π)(Σxᵢ)² − ΣΣ sin|φᵢ−φⱼ|xᵢxⱼ, the x₀ = 0 reduction of the gap
/// (equal to (2/π)·sequenceIsoperimetricGap). DomainError if x₀ ≠ 0.
double reducedIsoperimetricGap(const DiangleExpansion& x);

/// True when x₀ = 0 and every coefficient is nonnegative.
bool isPolygon(const DiangleExpansion& x);

/// 4·Σxᵢ. DomainError unless isPolygon(x).
double polygonPerimeter(const DiangleExpansion& x);

/// kPolygonAreaScale·ΣΣ sin|φᵢ−φⱼ|xᵢxⱼ. DomainError unless isPolygon(x).
double polygonArea(const DiangleExpansion& x);

}  // namespace isorkhs::seqmodel
