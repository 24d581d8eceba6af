#include "isorkhs/funcspace.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "isorkhs/errors.hpp"
#include "piecewise_trig.hpp"

namespace isorkhs {

namespace {

using quad::kHalfPi;
using quad::kPi;

constexpr double kDomainSlack = 1e-12;
constexpr double kNegativeNormTol = 1e-9;
constexpr double kSampledEndpointTol = 1e-12;
constexpr int kEndpointProbePoints = 257;

// Richardson-extrapolated differences at this step are accurate to roughly
// 1e−12 for smooth rules; a plain 1e−6 central difference is not good enough
// to feed the energy integrals.
constexpr double kSampledDerivativeStep = 1e-3;

double clampToDelta(double x) {
  if (!(x >= -kHalfPi - kDomainSlack && x <= kHalfPi + kDomainSlack)) {
    throw DomainError("x = " + std::to_string(x) + " lies outside [-pi/2, pi/2]");
  }
  return std::clamp(x, -kHalfPi, kHalfPi);
}

std::vector<double> mergedKinks(const H1Function& f, const H1Function& g) {
  std::vector<double> k = f.kinks();
  const auto kg = g.kinks();
  k.insert(k.end(), kg.begin(), kg.end());
  std::sort(k.begin(), k.end());
  k.erase(std::unique(k.begin(), k.end()), k.end());
  return k;
}

bool useExact(const funcspace::Options& options, const H1Function& f, const H1Function& g) {
  switch (options.path) {
    case funcspace::Path::Exact:
      if (!f.isSymbolic() || !g.isSymbolic()) {
        throw DomainError("closed-form path requested for a sampled function");
      }
      return true;
    case funcspace::Path::Quadrature:
      return false;
    case funcspace::Path::Auto:
      break;
  }
  return f.isSymbolic() && g.isSymbolic();
}

}  // namespace

// ---------------------------------------------------------------- TrigPoly

TrigPoly::TrigPoly(std::vector<double> cos_coeffs, std::vector<double> sin_coeffs)
    : cos_(std::move(cos_coeffs)), sin_(std::move(sin_coeffs)) {
  if (cos_.empty()) cos_.push_back(0.0);
  const int k = std::max<int>(static_cast<int>(cos_.size()) - 1, static_cast<int>(sin_.size()));
  cos_.resize(k + 1, 0.0);
  sin_.resize(k, 0.0);
  double scale = 1.0;
  for (double c : cos_) {
    if (!std::isfinite(c)) throw InputError("trig coefficient must be finite");
  }
  for (double b : sin_) {
    if (!std::isfinite(b)) throw InputError("trig coefficient must be finite");
    scale += std::abs(b);
  }
  if (std::abs(endpointMismatch(sin_)) > 1e-14 * scale) {
    throw DomainError("trig polynomial violates f(-pi/2) = f(pi/2)");
  }
}

TrigPoly TrigPoly::projected(std::vector<double> cos_coeffs, std::vector<double> sin_coeffs) {
  if (sin_coeffs.empty()) return TrigPoly(std::move(cos_coeffs), {});
  // Only odd k contribute; b₁ enters with sign +1.
  sin_coeffs[0] = 0.0;
  sin_coeffs[0] = -0.5 * endpointMismatch(sin_coeffs);
  return TrigPoly(std::move(cos_coeffs), std::move(sin_coeffs));
}

double TrigPoly::endpointMismatch(std::span<const double> sin_coeffs) {
  // f(π/2) − f(−π/2) = 2 Σ bₖ sin(kπ/2); sin(kπ/2) is 0 for even k and
  // (−1)^((k−1)/2) for odd k.
  double sum = 0.0;
  for (std::size_t i = 0; i < sin_coeffs.size(); i += 2) {
    const std::size_t k = i + 1;
    sum += ((k / 2) % 2 == 0 ? 1.0 : -1.0) * sin_coeffs[i];
  }
  return 2.0 * sum;
}

int TrigPoly::degree() const { return static_cast<int>(cos_.size()) - 1; }

double TrigPoly::value(double x) const {
  double v = cos_[0];
  for (std::size_t k = 1; k < cos_.size(); ++k) {
    v += cos_[k] * std::cos(k * x) + sin_[k - 1] * std::sin(k * x);
  }
  return v;
}

double TrigPoly::derivative(double x) const {
  double d = 0.0;
  for (std::size_t k = 1; k < cos_.size(); ++k) {
    d += static_cast<double>(k) * (sin_[k - 1] * std::cos(k * x) - cos_[k] * std::sin(k * x));
  }
  return d;
}

// ---------------------------------------------------------------- H1Function

H1Function::H1Function(TrigPoly trig) : rep_(std::move(trig)) {}

H1Function::H1Function(DiangleExpansion span) : rep_(std::move(span)) {}

namespace {

SampledFunction checkedSampled(SampledFunction sampled) {
  if (!sampled.value) throw InputError("sampled function needs an evaluation rule");
  for (double& k : sampled.kinks) k = clampToDelta(k);
  std::sort(sampled.kinks.begin(), sampled.kinks.end());
  sampled.kinks.erase(std::unique(sampled.kinks.begin(), sampled.kinks.end()),
                      sampled.kinks.end());

  const double left = sampled.value(-kHalfPi);
  const double right = sampled.value(kHalfPi);
  double max_abs = std::max(std::abs(left), std::abs(right));
  for (int i = 1; i + 1 < kEndpointProbePoints; ++i) {
    const double x = -kHalfPi + kPi * i / (kEndpointProbePoints - 1);
    max_abs = std::max(max_abs, std::abs(sampled.value(x)));
  }
  if (!std::isfinite(max_abs)) throw EvaluationError("sampled function is not finite on Δ");
  if (std::abs(left - right) > kSampledEndpointTol * (1.0 + max_abs)) {
    throw DomainError("sampled function violates f(-pi/2) = f(pi/2)");
  }
  return sampled;
}

}  // namespace

H1Function::H1Function(SampledFunction sampled) : rep_(checkedSampled(std::move(sampled))) {}

H1Function H1Function::cosine(int k) {
  if (k < 0) throw InputError("cosine order must be nonnegative");
  std::vector<double> c(k + 1, 0.0);
  c[k] = 1.0;
  return H1Function(TrigPoly(std::move(c), {}));
}

H1Function H1Function::sine(int k) {
  if (k < 1) throw InputError("sine order must be positive");
  std::vector<double> s(k, 0.0);
  s[k - 1] = 1.0;
  return H1Function(TrigPoly({0.0}, std::move(s)));
}

H1Function::Kind H1Function::kind() const {
  switch (rep_.index()) {
    case 0:
      return Kind::TrigPoly;
    case 1:
      return Kind::DiangleSpan;
    default:
      return Kind::Sampled;
  }
}

double H1Function::operator()(double x) const {
  x = clampToDelta(x);
  return std::visit(
      [x](const auto& r) -> double {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, SampledFunction>) {
          const double v = r.value(x);
          if (!std::isfinite(v)) throw EvaluationError("sampled function returned non-finite value");
          return v;
        } else {
          return r.value(x);
        }
      },
      rep_);
}

double H1Function::derivative(double x) const {
  x = clampToDelta(x);
  if (const auto* s = asSampled()) {
    if (s->derivative) {
      const double d = s->derivative(x);
      if (!std::isfinite(d)) throw EvaluationError("sampled derivative returned non-finite value");
      return d;
    }
    quad::DerivativeOptions opts;
    opts.step = kSampledDerivativeStep;
    opts.richardson = true;
    opts.kinks = s->kinks;
    return quad::derivativeAt(s->value, x, opts);
  }
  if (const auto* t = asTrig()) return t->derivative(x);
  return asSpan()->derivative(x);
}

std::vector<double> H1Function::kinks() const {
  if (const auto* s = asSpan()) return s->kinks();
  if (const auto* s = asSampled()) return s->kinks;
  return {};
}

H1Function linearCombination(double alpha, const H1Function& f, double beta, const H1Function& g) {
  const auto* tf = f.asTrig();
  const auto* tg = g.asTrig();
  if (tf && tg) {
    const std::size_t nc = std::max(tf->cosCoeffs().size(), tg->cosCoeffs().size());
    const std::size_t ns = std::max(tf->sinCoeffs().size(), tg->sinCoeffs().size());
    std::vector<double> c(nc, 0.0), s(ns, 0.0);
    for (std::size_t i = 0; i < tf->cosCoeffs().size(); ++i) c[i] += alpha * tf->cosCoeffs()[i];
    for (std::size_t i = 0; i < tg->cosCoeffs().size(); ++i) c[i] += beta * tg->cosCoeffs()[i];
    for (std::size_t i = 0; i < tf->sinCoeffs().size(); ++i) s[i] += alpha * tf->sinCoeffs()[i];
    for (std::size_t i = 0; i < tg->sinCoeffs().size(); ++i) s[i] += beta * tg->sinCoeffs()[i];
    return H1Function(TrigPoly(std::move(c), std::move(s)));
  }
  const auto* sf = f.asSpan();
  const auto* sg = g.asSpan();
  if (sf && sg) return H1Function(*sf * alpha + *sg * beta);

  SampledFunction out;
  out.value = [=](double x) { return alpha * f(x) + beta * g(x); };
  out.derivative = [=](double x) { return alpha * f.derivative(x) + beta * g.derivative(x); };
  out.kinks = mergedKinks(f, g);
  return H1Function(std::move(out));
}

// ---------------------------------------------------------------- functionals

namespace funcspace {

double evaluate(const H1Function& f, double x) { return f(x); }

Moments moments(const H1Function& f, const H1Function& g, quad::Interval interval,
                const Options& options) {
  interval.validate();
  const auto kinks = mergedKinks(f, g);
  Moments m;
  if (useExact(options, f, g)) {
    const auto cuts = detail::pieceCuts(kinks, interval.lo, interval.hi);
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      const double a = cuts[i];
      const double b = cuts[i + 1];
      const auto cf = detail::coefficientsOn(f, a, b);
      const auto cg = detail::coefficientsOn(g, a, b);
      m.integral_f += detail::integralOn(cf, a, b);
      m.integral_g += detail::integralOn(cg, a, b);
      m.integral_fg += detail::productIntegralOn(cf, cg, a, b);
      m.integral_dfdg += detail::productIntegralOn(detail::derivativeOf(cf), detail::derivativeOf(cg), a, b);
    }
    return m;
  }
  const auto& spec = options.spec;
  m.integral_f = quad::integrate([&](double x) { return f(x); }, interval, kinks, spec);
  m.integral_g = quad::integrate([&](double x) { return g(x); }, interval, kinks, spec);
  m.integral_fg = quad::integrate([&](double x) { return f(x) * g(x); }, interval, kinks, spec);
  m.integral_dfdg =
      quad::integrate([&](double x) { return f.derivative(x) * g.derivative(x); }, interval, kinks, spec);
  return m;
}

double perimeterFunctional(const H1Function& f, const Options& options) {
  if (useExact(options, f, f)) {
    double sum = 0.0;
    const auto cuts = detail::pieceCuts(f.kinks(), -kHalfPi, kHalfPi);
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      sum += detail::integralOn(detail::coefficientsOn(f, cuts[i], cuts[i + 1]), cuts[i], cuts[i + 1]);
    }
    return sum;
  }
  return quad::integrate([&](double x) { return f(x); }, quad::Interval::delta(), f.kinks(), options.spec);
}

double meanValue(const H1Function& f, const Options& options) {
  return perimeterFunctional(f, options) / kPi;
}

double wirtingerDeficit(const H1Function& f, const Options& options) {
  if (useExact(options, f, f)) {
    const Moments m = moments(f, f, quad::Interval::delta(), options);
    // ∫(f − f̄)² = ∫f² − (∫f)²/π
    return m.integral_dfdg - (m.integral_fg - m.integral_f * m.integral_f / kPi);
  }
  const double mean = meanValue(f, options);
  const auto kinks = f.kinks();
  const auto dom = quad::Interval::delta();
  const double energy = quad::integrate(
      [&](double x) {
        const double d = f.derivative(x);
        return d * d;
      },
      dom, kinks, options.spec);
  const double spread = quad::integrate(
      [&](double x) {
        const double v = f(x) - mean;
        return v * v;
      },
      dom, kinks, options.spec);
  return energy - spread;
}

double energyDeficit(const H1Function& f, const Options& options) {
  const Moments m = moments(f, f, quad::Interval::delta(), options);
  return m.integral_f * m.integral_f - kPi * (m.integral_fg - m.integral_dfdg);
}

double innerProductIso(const H1Function& f, const H1Function& g, const Options& options) {
  const Moments m = moments(f, g, quad::Interval::delta(), options);
  return (2.0 * m.integral_f * m.integral_g - kPi * (m.integral_fg - m.integral_dfdg)) / (kPi * kPi);
}

double normIsoSquared(const H1Function& f, const Options& options) {
  const double n2 = innerProductIso(f, f, options);
  if (n2 < -kNegativeNormTol) {
    throw InvariantViolation("negative squared isoperimetric norm " + std::to_string(n2));
  }
  return n2;
}

double normIso(const H1Function& f, const Options& options) {
  return std::sqrt(std::max(0.0, normIsoSquared(f, options)));
}

double innerProductClassical(const AcFunction& f, const AcFunction& g, quad::Interval interval,
                             const quad::QuadratureSpec& spec) {
  interval.validate();
  if (!f.value || !g.value || !f.derivative || !g.derivative) {
    throw InputError("classical inner product needs value and derivative rules");
  }
  std::vector<double> kinks = f.kinks;
  kinks.insert(kinks.end(), g.kinks.begin(), g.kinks.end());
  return quad::integrate(
      [&](double x) { return f.value(x) * g.value(x) + f.derivative(x) * g.derivative(x); },
      interval, kinks, spec);
}

double innerProductClassical(const H1Function& f, const H1Function& g, quad::Interval interval,
                             const Options& options) {
  if (interval.lo < -kHalfPi - kDomainSlack || interval.hi > kHalfPi + kDomainSlack) {
    throw DomainError("classical inner product of H1Function members needs an interval inside Δ");
  }
  const Moments m = moments(f, g, interval, options);
  return m.integral_fg + m.integral_dfdg;
}

double holderRatio(const H1Function& f, double x, double h, const Options& options) {
  if (h == 0.0) throw DomainError("Hölder ratio needs h != 0");
  const double numerator = std::abs(f(x + h) - f(x));
  const double norm = normIso(f, options);
  if (norm == 0.0) {
    if (numerator == 0.0) return 0.0;
    throw InvariantViolation("function with zero norm varies");
  }
  return numerator / (std::sqrt(kPi) * norm * std::sqrt(std::abs(h)));
}

}  // namespace funcspace
}  // namespace isorkhs
