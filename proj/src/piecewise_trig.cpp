#include "piecewise_trig.hpp"

#include <algorithm>
#include <cmath>

#include "isorkhs/errors.hpp"

namespace isorkhs::detail {

namespace {

// ∫_a^b cos(m x) and ∫_a^b sin(m x), written with half-angle products so
// short pieces do not lose digits to cancellation.
struct PieceIntegrals {
  double mid;
  double half;

  double cosInt(int m) const {
    if (m == 0) return 2 * half;
    return 2 * std::cos(m * mid) * std::sin(m * half) / m;
  }
  double sinInt(int m) const {
    if (m == 0) return 0.0;
    return 2 * std::sin(m * mid) * std::sin(m * half) / m;
  }
};

}  // namespace

TrigCoeffs coefficientsOn(const H1Function& f, double a, double b) {
  TrigCoeffs out;
  if (const auto* trig = f.asTrig()) {
    const int k = trig->degree();
    out.cos.assign(k + 1, 0.0);
    out.sin.assign(k + 1, 0.0);
    const auto cs = trig->cosCoeffs();
    const auto sn = trig->sinCoeffs();
    std::copy(cs.begin(), cs.end(), out.cos.begin());
    std::copy(sn.begin(), sn.end(), out.sin.begin() + 1);
    return out;
  }
  if (const auto* span = f.asSpan()) {
    out.cos = {span->constant(), 0.0};
    out.sin = {0.0, 0.0};
    const double mid = 0.5 * (a + b);
    for (const auto& t : span->terms()) {
      // |sin(x − φ)| = s·(cos φ·sin x − sin φ·cos x) on the piece.
      const double s = std::sin(mid - t.angle) >= 0.0 ? 1.0 : -1.0;
      out.sin[1] += s * t.coeff * std::cos(t.angle);
      out.cos[1] -= s * t.coeff * std::sin(t.angle);
    }
    return out;
  }
  throw DomainError("closed-form path requires a TrigPoly or DiangleSpan member");
}

TrigCoeffs derivativeOf(const TrigCoeffs& c) {
  TrigCoeffs d;
  d.cos.assign(c.cos.size(), 0.0);
  d.sin.assign(c.sin.size(), 0.0);
  for (std::size_t k = 1; k < c.cos.size(); ++k) {
    d.cos[k] = static_cast<double>(k) * c.sin[k];
    d.sin[k] = -static_cast<double>(k) * c.cos[k];
  }
  return d;
}

double integralOn(const TrigCoeffs& c, double a, double b) {
  const PieceIntegrals p{0.5 * (a + b), 0.5 * (b - a)};
  double sum = 0.0;
  for (std::size_t k = 0; k < c.cos.size(); ++k) {
    const int m = static_cast<int>(k);
    sum += c.cos[k] * p.cosInt(m) + c.sin[k] * p.sinInt(m);
  }
  return sum;
}

double productIntegralOn(const TrigCoeffs& u, const TrigCoeffs& v, double a, double b) {
  const PieceIntegrals p{0.5 * (a + b), 0.5 * (b - a)};
  const int ku = static_cast<int>(u.cos.size()) - 1;
  const int kv = static_cast<int>(v.cos.size()) - 1;
  const int top = ku + kv;
  std::vector<double> ci(top + 1), si(top + 1);
  for (int m = 0; m <= top; ++m) {
    ci[m] = p.cosInt(m);
    si[m] = p.sinInt(m);
  }
  auto C = [&](int m) { return ci[std::abs(m)]; };
  auto S = [&](int m) { return m >= 0 ? si[m] : -si[-m]; };

  double sum = 0.0;
  for (int j = 0; j <= ku; ++j) {
    for (int k = 0; k <= kv; ++k) {
      const double cc = 0.5 * (C(j - k) + C(j + k));  // ∫cos jx cos kx
      const double ss = 0.5 * (C(j - k) - C(j + k));  // ∫sin jx sin kx
      const double sc = 0.5 * (S(j + k) + S(j - k));  // ∫sin jx cos kx
      const double cs = 0.5 * (S(k + j) + S(k - j));  // ∫cos jx sin kx
      sum += u.cos[j] * v.cos[k] * cc + u.sin[j] * v.sin[k] * ss + u.sin[j] * v.cos[k] * sc +
             u.cos[j] * v.sin[k] * cs;
    }
  }
  return sum;
}

std::vector<double> pieceCuts(const std::vector<double>& kinks, double a, double b) {
  std::vector<double> cuts{a};
  for (double k : kinks) {
    if (k > a && k < b) cuts.push_back(k);
  }
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  return cuts;
}

}  // namespace isorkhs::detail
