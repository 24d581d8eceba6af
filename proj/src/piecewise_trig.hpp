#pragma once

#include <vector>

#include "isorkhs/funcspace.hpp"

// Closed-form integration for the symbolic H1Function variants. Between two
// consecutive kinks every diangle is ±sin(x − φ), so both TrigPoly and
// DiangleSpan members are plain trigonometric polynomials piece by piece and
// products integrate exactly via product-to-sum identities.
namespace isorkhs::detail {

struct TrigCoeffs {
  std::vector<double> cos;  // index k = 0..K
  std::vector<double> sin;  // index k = 0..K, sin[0] unused
};

/// Coefficients of a symbolic member on a piece [a, b] free of kinks.
TrigCoeffs coefficientsOn(const H1Function& f, double a, double b);

TrigCoeffs derivativeOf(const TrigCoeffs& c);

double integralOn(const TrigCoeffs& c, double a, double b);

/// ∫_a^b u·v.
double productIntegralOn(const TrigCoeffs& u, const TrigCoeffs& v, double a, double b);

/// Sorted, unique cut points: a, every kink strictly inside (a, b), b.
std::vector<double> pieceCuts(const std::vector<double>& kinks, double a, double b);

}  // namespace isorkhs::detail
