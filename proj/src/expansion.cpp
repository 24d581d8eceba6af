#include "isorkhs/expansion.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "isorkhs/errors.hpp"

namespace isorkhs {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = std::numbers::pi / 2;
}  // namespace

double normalizeAngle(double angle) {
  if (!std::isfinite(angle)) throw DomainError("angle must be finite");
  if (angle >= -kHalfPi && angle < kHalfPi) return angle;
  double r = angle - kPi * std::floor((angle + kHalfPi) / kPi);
  if (r >= kHalfPi) r -= kPi;
  if (r < -kHalfPi) r = -kHalfPi;
  return r;
}

double diangle(double phi, double x) { return std::abs(std::sin(x - phi)); }

double diangleDerivative(double phi, double x) {
  const double s = std::sin(x - phi);
  const double c = std::cos(x - phi);
  // At a zero of sin the function rises on both sides; the right-hand slope is |cos|.
  if (s == 0.0) return std::abs(c);
  return s > 0.0 ? c : -c;
}

DiangleExpansion::DiangleExpansion(double constant, std::vector<DiangleTerm> terms)
    : constant_(constant) {
  if (!std::isfinite(constant)) throw InputError("expansion constant must be finite");
  for (auto& t : terms) {
    if (!std::isfinite(t.coeff)) throw InputError("expansion coefficient must be finite");
    t.angle = normalizeAngle(t.angle);
  }
  std::stable_sort(terms.begin(), terms.end(),
                   [](const DiangleTerm& a, const DiangleTerm& b) { return a.angle < b.angle; });
  for (const auto& t : terms) {
    if (!terms_.empty() && terms_.back().angle == t.angle) {
      terms_.back().coeff += t.coeff;
    } else {
      terms_.push_back(t);
    }
  }
  std::erase_if(terms_, [](const DiangleTerm& t) { return t.coeff == 0.0; });
}

double DiangleExpansion::coefficientSum() const {
  double s = 0.0;
  for (const auto& t : terms_) s += t.coeff;
  return s;
}

double DiangleExpansion::value(double x) const {
  double v = constant_;
  for (const auto& t : terms_) v += t.coeff * diangle(t.angle, x);
  return v;
}

double DiangleExpansion::derivative(double x) const {
  double d = 0.0;
  for (const auto& t : terms_) d += t.coeff * diangleDerivative(t.angle, x);
  return d;
}

std::vector<double> DiangleExpansion::kinks() const {
  std::vector<double> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) out.push_back(t.angle);
  return out;
}

DiangleExpansion DiangleExpansion::operator+(const DiangleExpansion& other) const {
  std::vector<DiangleTerm> all(terms_.begin(), terms_.end());
  all.insert(all.end(), other.terms_.begin(), other.terms_.end());
  return DiangleExpansion(constant_ + other.constant_, std::move(all));
}

DiangleExpansion DiangleExpansion::operator-(const DiangleExpansion& other) const {
  return *this + other * -1.0;
}

DiangleExpansion DiangleExpansion::operator*(double scale) const {
  std::vector<DiangleTerm> scaled(terms_.begin(), terms_.end());
  for (auto& t : scaled) t.coeff *= scale;
  return DiangleExpansion(constant_ * scale, std::move(scaled));
}

}  // namespace isorkhs
