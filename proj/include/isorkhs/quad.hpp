#pragma once

#include <functional>
#include <numbers>
#include <span>
#include <vector>

namespace isorkhs::quad {

using RealFunction = std::function<double(double)>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kHalfPi = std::numbers::pi / 2;

struct Interval {
  double lo;
  double hi;

  /// Δ = [−π/2, π/2].
  static constexpr Interval delta() { return {-kHalfPi, kHalfPi}; }

  double length() const { return hi - lo; }
  bool contains(double x) const { return x >= lo && x <= hi; }
  void validate() const;
};

struct QuadratureSpec {
  double abs_tol = 1e-11;
  double rel_tol = 1e-11;
  int max_depth = 40;
  int base_points = 16;

  void validate() const;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;  // estimated absolute error
  int panels = 0;
};

/// Gauss–Legendre nodes and weights on [−1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

GaussLegendreRule gaussLegendre(int n);

/// Adaptive composite Gauss–Legendre quadrature of `f` over `interval`.
///
/// The interval is first cut at every breakpoint strictly inside it, so no
/// panel ever straddles a registered kink. Panels are then bisected, worst
/// estimated error first, until the total estimate is below
/// max(abs_tol, rel_tol·|result|). Breakpoints need not be sorted or unique;
/// those outside the open interval are ignored.
///
/// Throws EvaluationError on a non-finite sample and ConvergenceError when a
/// panel needing refinement is already at max_depth.
QuadratureResult integrateDetailed(const RealFunction& f, Interval interval,
                                   std::span<const double> breakpoints = {},
                                   const QuadratureSpec& spec = {});

double integrate(const RealFunction& f, Interval interval,
                 std::span<const double> breakpoints = {}, const QuadratureSpec& spec = {});

struct DerivativeOptions {
  double step = 1e-6;
  bool richardson = false;
  /// Points where the derivative jumps. At (or within `step` of) a kink the
  /// stencil is kept on one side; exactly at a kink the right-hand side wins.
  std::span<const double> kinks = {};
  Interval domain = Interval::delta();
};

/// Finite-difference derivative. Central difference in the interior, one-sided
/// second-order stencils at kinks and at the ends of the domain.
double derivativeAt(const RealFunction& f, double x, const DerivativeOptions& options = {});

}  // namespace isorkhs::quad
