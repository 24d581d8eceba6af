#include "isorkhs/seqmodel.hpp"

#include <cmath>
#include <string>

#include "isorkhs/errors.hpp"

namespace isorkhs::seqmodel {

namespace {

constexpr double kPi = quad::kPi;

// ΣᵢΣⱼ w(φᵢ, ψⱼ) xᵢyⱼ over the term lists.
template <class Weight>
double doubleSum(const DiangleExpansion& x, const DiangleExpansion& y, Weight weight) {
  double sum = 0.0;
  for (const auto& a : x.terms()) {
    for (const auto& b : y.terms()) {
      sum += weight(a.angle, b.angle) * a.coeff * b.coeff;
    }
  }
  return sum;
}

double sinAbs(double phi, double psi) { return std::sin(std::abs(phi - psi)); }

void requirePolygon(const DiangleExpansion& x) {
  if (!isPolygon(x)) {
    throw DomainError("expansion is not a polygon (needs x0 = 0 and nonnegative coefficients)");
  }
}

}  // namespace

H1Function toFunction(const DiangleExpansion& e) { return H1Function(e); }

double seqInner(const DiangleExpansion& x, const DiangleExpansion& y) {
  const double sx = x.coefficientSum();
  const double sy = y.coefficientSum();
  const double cross = doubleSum(x, y, [](double phi, double psi) {
    return 2.0 - 0.5 * kPi * sinAbs(phi, psi);
  });
  return x.constant() * y.constant() + (2.0 / kPi) * sx * y.constant() +
         (2.0 / kPi) * x.constant() * sy + (4.0 / (kPi * kPi)) * cross;
}

double sineForm(const DiangleExpansion& x) { return doubleSum(x, x, sinAbs); }

NormForms normSquaredForms(const DiangleExpansion& x) {
  const double x0 = x.constant();
  const double s = x.coefficientSum();
  const double kernel_form = doubleSum(x, x, [](double phi, double psi) {
    return 2.0 - 0.5 * kPi * sinAbs(phi, psi);
  });
  const double plain = doubleSum(x, x, [](double, double) { return 1.0; });
  const double sines = sineForm(x);
  const double lead = 0.5 * kPi * x0 + s;
  const double c = 4.0 / (kPi * kPi);

  NormForms f{};
  f.gram = x0 * x0 + (4.0 / kPi) * x0 * s + c * kernel_form;
  f.completed_square = c * (lead * lead - s * s + kernel_form);
  f.expanded = c * (lead * lead - s * s + 2.0 * plain - 0.5 * kPi * sines);
  return f;
}

double seqNormSquared(const DiangleExpansion& x) {
  const NormForms f = normSquaredForms(x);
  double magnitude = x.constant() * x.constant();
  double abs_sum = 0.0;
  for (const auto& t : x.terms()) abs_sum += std::abs(t.coeff);
  magnitude += abs_sum * abs_sum;
  const double tol = 1e-12 * (1.0 + magnitude);
  if (std::abs(f.gram - f.completed_square) > tol || std::abs(f.gram - f.expanded) > tol) {
    throw InvariantViolation("norm rearrangements disagree");
  }
  if (f.gram < -1e-9) {
    throw InvariantViolation("negative squared sequence norm " + std::to_string(f.gram));
  }
  return f.gram;
}

double sequenceIsoperimetricGap(const DiangleExpansion& x) {
  const double s = x.coefficientSum();
  const double lead = 0.5 * kPi * x.constant() + s;
  const double lhs = lead * lead + 2.0 * s * s;
  const double rhs = s * s + 0.5 * kPi * sineForm(x);
  return lhs - rhs;
}

double reducedIsoperimetricGap(const DiangleExpansion& x) {
  if (x.constant() != 0.0) throw DomainError("reduced isoperimetric gap needs x0 = 0");
  const double s = x.coefficientSum();
  return (4.0 / kPi) * s * s - sineForm(x);
}

bool isPolygon(const DiangleExpansion& x) {
  if (x.constant() != 0.0) return false;
  for (const auto& t : x.terms()) {
    if (t.coeff < 0.0) return false;
  }
  return true;
}

double polygonPerimeter(const DiangleExpansion& x) {
  requirePolygon(x);
  return 4.0 * x.coefficientSum();
}

double polygonArea(const DiangleExpansion& x) {
  requirePolygon(x);
  return kPolygonAreaScale * sineForm(x);
}

}  // namespace isorkhs::seqmodel
