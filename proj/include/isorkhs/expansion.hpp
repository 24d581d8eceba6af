#pragma once

#include <span>
#include <vector>

namespace isorkhs {

/// Maps an angle onto [−π/2, π/2) modulo π. Angles already in range are
/// returned unchanged, so the map is idempotent.
double normalizeAngle(double angle);

/// |sin(x − φ)|. For x, φ ∈ Δ this is the diangle I_φ(x) = sin|x − φ|; the
/// absolute-sine form is π-periodic in φ, matching the angle normalization.
double diangle(double phi, double x);

/// d/dx |sin(x − φ)| with the right-hand value at the kink x = φ (mod π).
double diangleDerivative(double phi, double x);

struct DiangleTerm {
  double angle;
  double coeff;
};

/// x₀·𝟏 + Σ xᵢ·I_{φᵢ}.
///
/// Construction normalizes every angle into [−π/2, π/2), sorts the terms by
/// angle, merges equal angles by summing coefficients and drops terms whose
/// merged coefficient is exactly zero.
class DiangleExpansion {
 public:
  DiangleExpansion() = default;
  explicit DiangleExpansion(double constant, std::vector<DiangleTerm> terms = {});

  static DiangleExpansion single(double angle, double coeff = 1.0) {
    return DiangleExpansion(0.0, {{angle, coeff}});
  }

  double constant() const { return constant_; }
  std::span<const DiangleTerm> terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  /// Σ xᵢ (the constant is not included).
  double coefficientSum() const;

  double value(double x) const;
  double derivative(double x) const;

  /// Angles in Δ where the derivative jumps.
  std::vector<double> kinks() const;

  DiangleExpansion operator+(const DiangleExpansion& other) const;
  DiangleExpansion operator-(const DiangleExpansion& other) const;
  DiangleExpansion operator*(double scale) const;

 private:
  double constant_ = 0.0;
  std::vector<DiangleTerm> terms_;
};

inline DiangleExpansion operator*(double scale, const DiangleExpansion& e) { return e * scale; }

}  // namespace isorkhs
