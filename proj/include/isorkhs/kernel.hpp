#pragma once

#include <optional>
#include <span>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include "isorkhs/funcspace.hpp"

namespace isorkhs::kernel {

/// K_θ(x, y) = θ − (π/2)·sin|x − y|, θ ≥ 1. θ = 2 is the isoperimetric
/// kernel of ⟨·,·⟩ᵢ; θ = 1 is positive semidefinite with 𝟏 in its null space
/// direction.
class IsoKernel {
 public:
  explicit IsoKernel(double theta = 2.0);
  double theta() const { return theta_; }
  double operator()(double x, double y) const;

 private:
  double theta_;
};

double kernelEval(double theta, double x, double y);

/// k_y = K_θ(·, y) as the expansion θ·𝟏 − (π/2)·I_y.
H1Function kernelFunction(double theta, double y);

/// |⟨f, k_y⟩ᵢ − f(y)| for the θ = 2 kernel.
double reproducingResidual(const H1Function& f, double y, const funcspace::Options& options = {});

/// cosh(min(x,y) − a)·cosh(b − max(x,y)) / sinh(b − a), the reproducing
/// kernel of ∫_a^b (fg + f′g′).
double classicalKernelEval(double a, double b, double x, double y);

/// K(·, y) for the classical kernel with its derivative; kink at y.
AcFunction classicalKernelFunction(double a, double b, double y);

/// Minimum separation below which two nodes count as duplicates.
inline constexpr double kNodeSeparation = 1e-12;

struct GramSystem {
  double theta = 2.0;
  double ridge = 0.0;
  std::vector<double> nodes;
  Eigen::MatrixXd matrix;      // G_jk = K_θ(y_j, y_k), without the ridge
  double min_eigenvalue = 0.0;
  double max_eigenvalue = 0.0;
  double condition_estimate = 0.0;  // max/min eigenvalue of G + ridge·I; inf if singular
  bool factorized = false;          // Cholesky of G + ridge·I succeeded
  Eigen::LLT<Eigen::MatrixXd> factor;
};

/// Builds the Gram matrix, its eigenvalue extent and the Cholesky factor of
/// G + ridge·I. InputError on duplicate nodes or nodes outside Δ.
GramSystem gramMatrix(double theta, std::span<const double> nodes, double ridge = 0.0);

struct Interpolant {
  double theta = 2.0;
  double ridge = 0.0;
  std::vector<double> nodes;
  std::vector<double> coeffs;
  bool jitter_fallback = false;  // ridge was raised to 1e−12·trace/n
  bool least_squares = false;    // minimum-norm least-squares solution

  /// Σ c_j K_θ(x, y_j).
  double operator()(double x) const;
  /// The interpolant as a member of the space (θ·Σc_j)𝟏 − (π/2)Σ c_j I_{y_j}.
  H1Function toFunction() const;
};

/// Solves (G + λI)c = values. With λ = 0 a failed factorization is retried
/// with λ = 1e−12·trace(G)/n, and if the data still cannot be matched to
/// 1e−8·(1 + max|v|) a minimum-norm least-squares solve is tried; a
/// SingularSystemError is raised if that also misses.
Interpolant interpolate(std::span<const double> nodes, std::span<const double> values,
                        double theta = 2.0, double ridge = 0.0);

/// √max(0, K(x,x) − kₓᵀ(G + λI)⁻¹kₓ). SingularSystemError if the Gram
/// factorization failed.
double powerFunction(const GramSystem& gram, double x);

/// Power function for an empty node set: √K_θ(x,x) = √θ.
double powerFunction(double theta, double x);

}  // namespace isorkhs::kernel
