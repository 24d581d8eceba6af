#pragma once

#include <functional>
#include <span>
#include <variant>
#include <vector>

#include "isorkhs/expansion.hpp"
#include "isorkhs/quad.hpp"

namespace isorkhs {

/// Σ aₖcos(kt) + bₖsin(kt), k = 0..K (b₀ is not stored).
///
/// Membership in H¹₀(Δ) needs f(−π/2) = f(π/2), i.e. Σ_{k odd} bₖ·(−1)^((k−1)/2) = 0.
/// The constructor rejects coefficient sets that violate it.
class TrigPoly {
 public:
  /// `cos_coeffs` = a₀..a_K, `sin_coeffs` = b₁..b_K. Either may be shorter.
  TrigPoly(std::vector<double> cos_coeffs, std::vector<double> sin_coeffs);

  /// Same as the constructor, but first adjusts b₁ so the endpoint condition holds.
  static TrigPoly projected(std::vector<double> cos_coeffs, std::vector<double> sin_coeffs);

  /// f(π/2) − f(−π/2) computed from the coefficients.
  static double endpointMismatch(std::span<const double> sin_coeffs);

  std::span<const double> cosCoeffs() const { return cos_; }
  std::span<const double> sinCoeffs() const { return sin_; }
  int degree() const;

  double value(double x) const;
  double derivative(double x) const;

 private:
  std::vector<double> cos_;
  std::vector<double> sin_;
};

/// An absolutely continuous function given by rules. If `derivative` is empty
/// it is estimated by finite differences that respect `kinks`.
struct SampledFunction {
  std::function<double(double)> value;
  std::function<double(double)> derivative;
  std::vector<double> kinks;
};

/// Member of H¹₀(Δ). Immutable once constructed.
class H1Function {
 public:
  enum class Kind { TrigPoly, DiangleSpan, Sampled };

  explicit H1Function(TrigPoly trig);
  explicit H1Function(DiangleExpansion span);
  /// Checks |f(−π/2) − f(π/2)| ≤ 1e−12·(1 + max|f|) with max|f| taken on a grid.
  explicit H1Function(SampledFunction sampled);

  static H1Function constant(double c = 1.0) { return H1Function(DiangleExpansion(c)); }
  static H1Function one() { return constant(1.0); }
  static H1Function diangle(double psi) { return H1Function(DiangleExpansion::single(psi)); }
  /// cos(k·t) for k ≥ 0; sin(k·t) for even k ≥ 2.
  static H1Function cosine(int k);
  static H1Function sine(int k);

  Kind kind() const;
  /// True for the TrigPoly and DiangleSpan variants, which have a closed-form path.
  bool isSymbolic() const { return kind() != Kind::Sampled; }

  const TrigPoly* asTrig() const { return std::get_if<TrigPoly>(&rep_); }
  const DiangleExpansion* asSpan() const { return std::get_if<DiangleExpansion>(&rep_); }
  const SampledFunction* asSampled() const { return std::get_if<SampledFunction>(&rep_); }

  /// Throws DomainError outside Δ (1e−12 slack, then clamped).
  double operator()(double x) const;
  /// Right-hand derivative at kinks.
  double derivative(double x) const;
  std::vector<double> kinks() const;

 private:
  std::variant<TrigPoly, DiangleExpansion, SampledFunction> rep_;
};

/// α·f + β·g. Stays in the common variant when both arguments share one,
/// otherwise the result is Sampled with the union of kinks.
H1Function linearCombination(double alpha, const H1Function& f, double beta, const H1Function& g);

/// Absolutely continuous function on an arbitrary interval, used by the
/// classical H¹ inner product where the domain need not be Δ.
struct AcFunction {
  std::function<double(double)> value;
  std::function<double(double)> derivative;
  std::vector<double> kinks;
};

namespace funcspace {

enum class Path {
  Auto,        // closed form when every argument is symbolic
  Exact,       // closed form; DomainError for sampled arguments
  Quadrature,  // adaptive quadrature with every kink registered
};

struct Options {
  Path path = Path::Auto;
  quad::QuadratureSpec spec{};
};

double evaluate(const H1Function& f, double x);

/// f̄ = (1/π)∫_Δ f.
double meanValue(const H1Function& f, const Options& options = {});

/// o(f) = ∫_Δ f.
double perimeterFunctional(const H1Function& f, const Options& options = {});

/// F(f) = ∫(f′)² − ∫(f − f̄)², nonnegative on H¹₀(Δ).
double wirtingerDeficit(const H1Function& f, const Options& options = {});

/// E(f) = (∫f)² − π∫(f² − (f′)²) = π·F(f).
double energyDeficit(const H1Function& f, const Options& options = {});

/// ⟨f,g⟩ᵢ = (1/π²)[2(∫f)(∫g) − π∫(fg − f′g′)].
double innerProductIso(const H1Function& f, const H1Function& g, const Options& options = {});

/// ⟨f,f⟩ᵢ = (1/π²)(o²(f) + E(f)). Throws InvariantViolation below −1e−9.
double normIsoSquared(const H1Function& f, const Options& options = {});
double normIso(const H1Function& f, const Options& options = {});

/// ∫_a^b (fg + f′g′).
double innerProductClassical(const AcFunction& f, const AcFunction& g, quad::Interval interval,
                             const quad::QuadratureSpec& spec = {});
double innerProductClassical(const H1Function& f, const H1Function& g, quad::Interval interval,
                             const Options& options = {});

/// |f(x+h) − f(x)| / (√π·‖f‖ᵢ·√|h|); at most 1 on H¹₀(Δ).
double holderRatio(const H1Function& f, double x, double h, const Options& options = {});

/// The integrals every functional above is assembled from.
struct Moments {
  double integral_f = 0.0;
  double integral_g = 0.0;
  double integral_fg = 0.0;
  double integral_dfdg = 0.0;
};

Moments moments(const H1Function& f, const H1Function& g, quad::Interval interval,
                const Options& options = {});

}  // namespace funcspace
}  // namespace isorkhs
