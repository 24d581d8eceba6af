#include "isorkhs/quad.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <string>

#include "isorkhs/errors.hpp"

namespace isorkhs::quad {

namespace {

constexpr std::size_t kMaxPanels = 1u << 18;

double sample(const RealFunction& f, double x) {
  const double y = f(x);
  if (!std::isfinite(y)) {
    throw EvaluationError("non-finite function value at x = " + std::to_string(x));
  }
  return y;
}

double applyRule(const GaussLegendreRule& rule, const RealFunction& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    sum += rule.weights[i] * sample(f, mid + half * rule.nodes[i]);
  }
  return half * sum;
}

struct Panel {
  double a;
  double b;
  double left;   // rule applied to [a, mid]
  double right;  // rule applied to [mid, b]
  double error;  // |left + right − rule on [a, b]|
  int depth;

  double value() const { return left + right; }
};

struct ByError {
  bool operator()(const Panel& p, const Panel& q) const { return p.error < q.error; }
};

Panel makePanel(const GaussLegendreRule& rule, const RealFunction& f, double a, double b,
                double whole, int depth) {
  const double mid = 0.5 * (a + b);
  Panel p{a, b, applyRule(rule, f, a, mid), applyRule(rule, f, mid, b), 0.0, depth};
  p.error = std::abs(p.value() - whole);
  return p;
}

}  // namespace

void Interval::validate() const {
  if (!(std::isfinite(lo) && std::isfinite(hi) && lo < hi)) {
    throw DomainError("interval requires finite lo < hi");
  }
}

void QuadratureSpec::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0) || max_depth < 1 || base_points < 2) {
    throw InputError("quadrature spec requires abs_tol > 0, rel_tol > 0, max_depth >= 1, base_points >= 2");
  }
}

GaussLegendreRule gaussLegendre(int n) {
  if (n < 1) throw InputError("Gauss-Legendre rule needs at least one point");
  GaussLegendreRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = z;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    // Recompute the derivative at the converged root for the weight.
    double p0 = 1.0;
    double p1 = z;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (z * p1 - p0) / (z * z - 1.0);
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    rule.nodes[i] = -z;
    rule.nodes[n - 1 - i] = z;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

QuadratureResult integrateDetailed(const RealFunction& f, Interval interval,
                                   std::span<const double> breakpoints,
                                   const QuadratureSpec& spec) {
  interval.validate();
  spec.validate();
  const GaussLegendreRule rule = gaussLegendre(spec.base_points);

  std::vector<double> cuts{interval.lo};
  for (double bp : breakpoints) {
    if (bp > interval.lo && bp < interval.hi) cuts.push_back(bp);
  }
  cuts.push_back(interval.hi);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::priority_queue<Panel, std::vector<Panel>, ByError> queue;
  double total = 0.0;
  double total_error = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double a = cuts[i];
    const double b = cuts[i + 1];
    Panel p = makePanel(rule, f, a, b, applyRule(rule, f, a, b), 0);
    total += p.value();
    total_error += p.error;
    queue.push(p);
  }

  while (total_error > std::max(spec.abs_tol, spec.rel_tol * std::abs(total))) {
    Panel worst = queue.top();
    if (worst.depth >= spec.max_depth || queue.size() >= kMaxPanels) {
      throw ConvergenceError("adaptive quadrature did not converge within max_depth", total,
                             total_error);
    }
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    Panel lhs = makePanel(rule, f, worst.a, mid, worst.left, worst.depth + 1);
    Panel rhs = makePanel(rule, f, mid, worst.b, worst.right, worst.depth + 1);
    total += lhs.value() + rhs.value() - worst.value();
    total_error += lhs.error + rhs.error - worst.error;
    queue.push(lhs);
    queue.push(rhs);
  }

  // Re-sum from scratch; the running total accumulates cancellation error.
  QuadratureResult result;
  result.panels = static_cast<int>(queue.size());
  double err = 0.0;
  double sum = 0.0;
  while (!queue.empty()) {
    sum += queue.top().value();
    err += queue.top().error;
    queue.pop();
  }
  result.value = sum;
  result.error = err;
  return result;
}

double integrate(const RealFunction& f, Interval interval, std::span<const double> breakpoints,
                 const QuadratureSpec& spec) {
  return integrateDetailed(f, interval, breakpoints, spec).value;
}

double derivativeAt(const RealFunction& f, double x, const DerivativeOptions& options) {
  const Interval dom = options.domain;
  if (!(options.step > 0.0)) throw InputError("derivative step must be positive");
  if (!dom.contains(x)) throw DomainError("derivative requested outside the domain");

  // Room available on each side before a kink or the domain boundary.
  const double at_tol = 1e-14 * std::max(1.0, std::abs(x));
  double room_left = x - dom.lo;
  double room_right = dom.hi - x;
  for (double k : options.kinks) {
    if (std::abs(k - x) <= at_tol) {
      room_left = 0.0;  // right-hand convention
    } else if (k < x) {
      room_left = std::min(room_left, x - k);
    } else {
      room_right = std::min(room_right, k - x);
    }
  }

  double h = options.step;
  enum class Side { Central, Forward, Backward } side;
  if (room_left >= h && room_right >= h) {
    side = Side::Central;
  } else if (room_right >= 2 * h && room_right >= room_left) {
    side = Side::Forward;
  } else if (room_left >= 2 * h) {
    side = Side::Backward;
  } else if (room_right >= room_left) {
    if (room_right <= 0.0) throw DomainError("no room for a difference stencil");
    side = Side::Forward;
    h = room_right / 2;
  } else {
    side = Side::Backward;
    h = room_left / 2;
  }

  auto at = [&](double t) { return sample(f, t); };
  auto diff = [&](double s) {
    switch (side) {
      case Side::Central:
        return (at(x + s) - at(x - s)) / (2 * s);
      case Side::Forward:
        return (-3 * at(x) + 4 * at(x + s) - at(x + 2 * s)) / (2 * s);
      case Side::Backward:
        return (3 * at(x) - 4 * at(x - s) + at(x - 2 * s)) / (2 * s);
    }
    return 0.0;
  };

  if (!options.richardson) return diff(h);
  return (4 * diff(h / 2) - diff(h)) / 3;
}

}  // namespace isorkhs::quad
