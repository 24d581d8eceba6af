#include "isorkhs/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "isorkhs/errors.hpp"

namespace isorkhs::kernel {

namespace {

using quad::kHalfPi;
using quad::kPi;

void requireTheta(double theta) {
  if (!(theta >= 1.0) || !std::isfinite(theta)) {
    throw DomainError("kernel parameter theta must be >= 1");
  }
}

void requireInDelta(double x) {
  if (!(x >= -kHalfPi && x <= kHalfPi)) {
    throw DomainError("kernel argument " + std::to_string(x) + " lies outside [-pi/2, pi/2]");
  }
}

void requireDistinct(std::span<const double> nodes) {
  std::vector<double> sorted(nodes.begin(), nodes.end());
  for (double y : sorted) {
    if (!(y >= -kHalfPi && y <= kHalfPi)) {
      throw InputError("node " + std::to_string(y) + " lies outside [-pi/2, pi/2]");
    }
  }
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i] - sorted[i - 1] < kNodeSeparation) {
      throw InputError("duplicate node " + std::to_string(sorted[i]));
    }
  }
}

double maxAbs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

Eigen::VectorXd kernelColumn(const GramSystem& gram, double x) {
  Eigen::VectorXd k(gram.nodes.size());
  for (std::size_t j = 0; j < gram.nodes.size(); ++j) k(j) = kernelEval(gram.theta, x, gram.nodes[j]);
  return k;
}

}  // namespace

IsoKernel::IsoKernel(double theta) : theta_(theta) { requireTheta(theta); }

double IsoKernel::operator()(double x, double y) const { return kernelEval(theta_, x, y); }

double kernelEval(double theta, double x, double y) {
  requireTheta(theta);
  requireInDelta(x);
  requireInDelta(y);
  return theta - kHalfPi * std::sin(std::abs(x - y));
}

H1Function kernelFunction(double theta, double y) {
  requireTheta(theta);
  requireInDelta(y);
  return H1Function(DiangleExpansion(theta, {{y, -kHalfPi}}));
}

double reproducingResidual(const H1Function& f, double y, const funcspace::Options& options) {
  return std::abs(funcspace::innerProductIso(f, kernelFunction(2.0, y), options) - f(y));
}

double classicalKernelEval(double a, double b, double x, double y) {
  if (!(a < b)) throw DomainError("classical kernel needs a < b");
  if (x < a || x > b || y < a || y > b) throw DomainError("classical kernel argument outside [a, b]");
  return std::cosh(std::min(x, y) - a) * std::cosh(b - std::max(x, y)) / std::sinh(b - a);
}

AcFunction classicalKernelFunction(double a, double b, double y) {
  if (!(a < b)) throw DomainError("classical kernel needs a < b");
  if (y < a || y > b) throw DomainError("classical kernel node outside [a, b]");
  AcFunction k;
  k.value = [a, b, y](double x) { return classicalKernelEval(a, b, x, y); };
  k.derivative = [a, b, y](double x) {
    const double s = std::sinh(b - a);
    if (x < y) return std::sinh(x - a) * std::cosh(b - y) / s;
    return -std::cosh(y - a) * std::sinh(b - x) / s;
  };
  k.kinks = {y};
  return k;
}

GramSystem gramMatrix(double theta, std::span<const double> nodes, double ridge) {
  requireTheta(theta);
  if (!(ridge >= 0.0) || !std::isfinite(ridge)) throw InputError("ridge must be nonnegative");
  requireDistinct(nodes);

  GramSystem g;
  g.theta = theta;
  g.ridge = ridge;
  g.nodes.assign(nodes.begin(), nodes.end());
  const auto n = static_cast<Eigen::Index>(nodes.size());
  g.matrix.resize(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    g.matrix(j, j) = kernelEval(theta, nodes[j], nodes[j]);
    for (Eigen::Index k = j + 1; k < n; ++k) {
      const double v = kernelEval(theta, nodes[j], nodes[k]);
      g.matrix(j, k) = v;
      g.matrix(k, j) = v;
    }
  }
  if (n == 0) {
    g.factorized = true;
    g.condition_estimate = 1.0;
    return g;
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(g.matrix, Eigen::EigenvaluesOnly);
  g.min_eigenvalue = eig.eigenvalues().minCoeff();
  g.max_eigenvalue = eig.eigenvalues().maxCoeff();
  const double lo = g.min_eigenvalue + ridge;
  g.condition_estimate =
      lo > 0.0 ? (g.max_eigenvalue + ridge) / lo : std::numeric_limits<double>::infinity();

  Eigen::MatrixXd shifted = g.matrix;
  shifted.diagonal().array() += ridge;
  g.factor.compute(shifted);
  g.factorized = g.factor.info() == Eigen::Success;
  return g;
}

double Interpolant::operator()(double x) const {
  double s = 0.0;
  for (std::size_t j = 0; j < nodes.size(); ++j) s += coeffs[j] * kernelEval(theta, x, nodes[j]);
  return s;
}

H1Function Interpolant::toFunction() const {
  double constant = 0.0;
  std::vector<DiangleTerm> terms;
  terms.reserve(nodes.size());
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    constant += theta * coeffs[j];
    terms.push_back({nodes[j], -kHalfPi * coeffs[j]});
  }
  return H1Function(DiangleExpansion(constant, std::move(terms)));
}

Interpolant interpolate(std::span<const double> nodes, std::span<const double> values,
                        double theta, double ridge) {
  if (nodes.size() != values.size()) throw InputError("nodes and values differ in length");
  for (double v : values) {
    if (!std::isfinite(v)) throw InputError("interpolation values must be finite");
  }
  GramSystem gram = gramMatrix(theta, nodes, ridge);
  const auto n = static_cast<Eigen::Index>(nodes.size());
  const Eigen::Map<const Eigen::VectorXd> rhs(values.data(), n);

  Interpolant out;
  out.theta = theta;
  out.ridge = ridge;
  out.nodes.assign(nodes.begin(), nodes.end());
  if (n == 0) return out;

  const double tol = 1e-8 * (1.0 + maxAbs(values));
  auto matches = [&](const Eigen::VectorXd& c) {
    return (gram.matrix * c - rhs).lpNorm<Eigen::Infinity>() <= tol && c.allFinite();
  };
  auto accept = [&](const Eigen::VectorXd& c) {
    out.coeffs.assign(c.data(), c.data() + n);
    return out;
  };

  if (ridge > 0.0) {
    if (!gram.factorized) throw SingularSystemError("ridge-regularized Gram matrix is not positive definite");
    return accept(gram.factor.solve(rhs));
  }

  if (gram.factorized) {
    Eigen::VectorXd c = gram.factor.solve(rhs);
    if (matches(c)) return accept(c);
  }

  const double jitter = 1e-12 * gram.matrix.trace() / static_cast<double>(n);
  Eigen::MatrixXd shifted = gram.matrix;
  shifted.diagonal().array() += jitter;
  Eigen::LLT<Eigen::MatrixXd> llt(shifted);
  if (llt.info() == Eigen::Success) {
    Eigen::VectorXd c = llt.solve(rhs);
    if (matches(c)) {
      out.jitter_fallback = true;
      out.ridge = jitter;
      return accept(c);
    }
  }

  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(gram.matrix);
  Eigen::VectorXd c = cod.solve(rhs);
  if (matches(c)) {
    out.least_squares = true;
    return accept(c);
  }
  throw SingularSystemError("Gram system cannot reproduce the data (inconsistent values on a singular Gram)",
                            true);
}

double powerFunction(const GramSystem& gram, double x) {
  const double kxx = kernelEval(gram.theta, x, x);
  if (gram.nodes.empty()) return std::sqrt(kxx);
  if (!gram.factorized) throw SingularSystemError("Gram matrix is not positive definite; add a ridge");
  const Eigen::VectorXd k = kernelColumn(gram, x);
  const Eigen::VectorXd c = gram.factor.solve(k);
  double p2;
  if (gram.ridge == 0.0) {
    // ‖δ_x − Σ c_j δ_{y_j}‖² in the native space. Rounding errors in c enter
    // only quadratically, so the value at a node stays near zero.
    p2 = kxx - 2.0 * k.dot(c) + c.dot(gram.matrix * c);
  } else {
    p2 = kxx - k.dot(c);
  }
  return std::sqrt(std::max(0.0, p2));
}

double powerFunction(double theta, double x) { return std::sqrt(kernelEval(theta, x, x)); }

}  // namespace isorkhs::kernel
