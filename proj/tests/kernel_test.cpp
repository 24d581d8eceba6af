#include <cmath>
#include <vector>

#include <Eigen/Eigenvalues>

#include "doctest.h"
#include "isorkhs/errors.hpp"
#include "isorkhs/kernel.hpp"
#include "isorkhs/random.hpp"

using namespace isorkhs;
using namespace isorkhs::kernel;
using quad::kHalfPi;
using quad::kPi;

namespace {

std::vector<double> randomNodes(Rng& rng, int n) {
  std::vector<double> y;
  while (static_cast<int>(y.size()) < n) {
    const double c = rng.uniform(-kHalfPi, kHalfPi);
    bool fresh = true;
    for (double v : y) fresh = fresh && std::abs(v - c) > 1e-6;
    if (fresh) y.push_back(c);
  }
  return y;
}

}  // namespace

TEST_CASE("kernel values") {
  const IsoKernel k;
  CHECK(k.theta() == 2.0);
  CHECK(k(0.3, 0.3) == 2.0);
  CHECK(k(-kHalfPi, kHalfPi) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(k(0.0, kHalfPi) == doctest::Approx(2.0 - kHalfPi).epsilon(1e-15));
  CHECK(k(0.2, -0.5) == k(-0.5, 0.2));
  CHECK_THROWS_AS(IsoKernel(0.5), DomainError);
  CHECK_THROWS_AS(kernelEval(2.0, 1.7, 0.0), DomainError);
}

TEST_CASE("kernel function matches the kernel") {
  for (double y : {-kHalfPi, -0.4, 0.0, 1.2}) {
    const H1Function ky = kernelFunction(2.0, y);
    for (double x : {-1.5, -0.3, 0.0, 0.8, kHalfPi}) CHECK(ky(x) == doctest::Approx(kernelEval(2.0, x, y)).epsilon(1e-15));
  }
}

TEST_CASE("reproducing property") {
  SUBCASE("on kernel functions") {
    Rng rng(21);
    for (int i = 0; i < 200; ++i) {
      const double x = rng.uniform(-kHalfPi, kHalfPi);
      const double y = rng.uniform(-kHalfPi, kHalfPi);
      const double v = funcspace::innerProductIso(kernelFunction(2.0, x), kernelFunction(2.0, y));
      CHECK(std::abs(v - kernelEval(2.0, x, y)) <= 1e-12);
    }
  }
  SUBCASE("on the standard test set") {
    const std::vector<H1Function> set = {
        H1Function::one(), H1Function::diangle(0.3), H1Function::cosine(1), H1Function::cosine(2),
        H1Function::sine(2), H1Function(TrigPoly({0.1, 0.0, 1.0}, {0.0, 0.3}))};
    for (const auto& f : set) {
      for (double y : {-kHalfPi, -0.9, 0.0, 0.31, 1.4, kHalfPi}) CHECK(reproducingResidual(f, y) <= 1e-10);
    }
  }
  SUBCASE("quadrature path") {
    const funcspace::Options q{funcspace::Path::Quadrature, {}};
    CHECK(reproducingResidual(H1Function::cosine(2), 0.4, q) <= 1e-10);
    CHECK(reproducingResidual(H1Function::diangle(-1.0), 0.4, q) <= 1e-10);
  }
}

TEST_CASE("classical kernel reproduces on [a, b]") {
  CHECK(classicalKernelEval(0.0, 1.0, 0.0, 1.0) == doctest::Approx(0.85091812823932154513).epsilon(1e-14));
  const AcFunction c{[](double x) { return std::cos(x); }, [](double x) { return -std::sin(x); }, {}};
  const AcFunction q{[](double x) { return x * x - x; }, [](double x) { return 2 * x - 1; }, {}};
  for (double y : {0.0, 0.37, 0.5, 1.0}) {
    const AcFunction k = classicalKernelFunction(0.0, 1.0, y);
    CHECK(std::abs(funcspace::innerProductClassical(c, k, {0.0, 1.0}) - std::cos(y)) <= 1e-10);
    CHECK(std::abs(funcspace::innerProductClassical(q, k, {0.0, 1.0}) - (y * y - y)) <= 1e-10);
  }
  CHECK_THROWS_AS(classicalKernelEval(1.0, 0.0, 0.5, 0.5), DomainError);
}

TEST_CASE("Gram matrix") {
  const std::vector<double> nodes{-kPi / 4, kPi / 4};
  const GramSystem g = gramMatrix(2.0, nodes);
  CHECK(g.matrix(0, 1) == doctest::Approx(2.0 - kHalfPi).epsilon(1e-15));
  CHECK(g.min_eigenvalue == doctest::Approx(1.5707963267948966).epsilon(1e-14));
  CHECK(g.max_eigenvalue == doctest::Approx(2.4292036732051034).epsilon(1e-14));
  CHECK(g.factorized);
  const std::vector<double> dup{0.1, 0.1};
  CHECK_THROWS_AS(gramMatrix(2.0, dup), InputError);
  const std::vector<double> out{0.1, 2.0};
  CHECK_THROWS_AS(gramMatrix(2.0, out), InputError);
  CHECK_THROWS_AS(gramMatrix(2.0, nodes, -1.0), InputError);
}

TEST_CASE("Gram matrices are positive semidefinite") {
  Rng rng(8);
  for (double theta : {1.0, 1.5, 2.0, 4.0}) {
    for (int trial = 0; trial < 25; ++trial) {
      const auto nodes = randomNodes(rng, rng.integer(1, 30));
      const GramSystem g = gramMatrix(theta, nodes);
      CHECK(g.min_eigenvalue >= -1e-10 * g.max_eigenvalue);
    }
  }
}

TEST_CASE("theta = 1 kernel is singular on antipodal nodes") {
  // K₁(±π/2, ∓π/2) = 1 = K₁(y, y): the two columns coincide.
  const std::vector<double> nodes{-kHalfPi, kHalfPi};
  const GramSystem g = gramMatrix(1.0, nodes);
  CHECK(std::abs(g.min_eigenvalue) < 1e-14);
}

TEST_CASE("interpolation") {
  SUBCASE("two symmetric nodes") {
    const std::vector<double> nodes{-kPi / 4, kPi / 4};
    const std::vector<double> values{1.0, 1.0};
    const Interpolant s = interpolate(nodes, values);
    CHECK(s.coeffs[0] == doctest::Approx(0.41165753659535473933).epsilon(1e-14));
    CHECK(s.coeffs[1] == doctest::Approx(0.41165753659535473933).epsilon(1e-14));
    CHECK(!s.jitter_fallback);
  }
  SUBCASE("hits the data and is the minimum-norm interpolant") {
    Rng rng(13);
    for (int trial = 0; trial < 20; ++trial) {
      const auto nodes = randomNodes(rng, rng.integer(2, 12));
      std::vector<double> values;
      for (double y : nodes) values.push_back(std::cos(2 * y) + 0.3 * std::sin(std::abs(y - 0.2)));
      const Interpolant s = interpolate(nodes, values);
      for (std::size_t j = 0; j < nodes.size(); ++j) CHECK(std::abs(s(nodes[j]) - values[j]) <= 1e-8);
      const H1Function sf = s.toFunction();
      for (std::size_t j = 0; j < nodes.size(); ++j) CHECK(std::abs(sf(nodes[j]) - values[j]) <= 1e-8);
      // ‖s‖² = cᵀGc = cᵀv.
      double cv = 0.0;
      for (std::size_t j = 0; j < nodes.size(); ++j) cv += s.coeffs[j] * values[j];
      CHECK(std::abs(funcspace::normIsoSquared(sf) - cv) <= 1e-8 * (1 + std::abs(cv)));
      // Any other interpolant g = s + h with h(y_j) = 0 has ‖g‖ ≥ ‖s‖.
      const H1Function bump = H1Function::sine(2);
      std::vector<double> bumpvals;
      for (double y : nodes) bumpvals.push_back(bump(y));
      const H1Function h = linearCombination(1.0, bump, -1.0, interpolate(nodes, bumpvals).toFunction());
      const H1Function g = linearCombination(1.0, sf, 1.0, h);
      CHECK(funcspace::normIsoSquared(g) >= funcspace::normIsoSquared(sf) - 1e-9);
    }
  }
  SUBCASE("ridge") {
    const std::vector<double> nodes{-0.5, 0.5};
    const std::vector<double> values{1.0, -1.0};
    const Interpolant s = interpolate(nodes, values, 2.0, 0.1);
    CHECK(s.ridge == 0.1);
    CHECK(std::abs(s(-0.5)) < 1.0);
  }
  SUBCASE("singular theta = 1 system") {
    // The antipodal θ = 1 Gram matrix is singular up to the rounding of sin π.
    const std::vector<double> nodes{-kHalfPi, kHalfPi};
    const std::vector<double> same{1.0, 1.0};
    const Interpolant s = interpolate(nodes, same, 1.0);
    CHECK(std::abs(s(-kHalfPi) - 1.0) <= 1e-8);
    CHECK(std::abs(s(kHalfPi) - 1.0) <= 1e-8);
    // Inconsistent data either fails after the least-squares attempt or is
    // matched only with huge coefficients.
    const std::vector<double> clash{1.0, 2.0};
    try {
      const Interpolant t = interpolate(nodes, clash, 1.0);
      CHECK(std::abs(t.coeffs[0]) > 1e10);
    } catch (const SingularSystemError& e) {
      CHECK(e.leastSquaresAttempted());
    }
  }
  SUBCASE("input errors") {
    const std::vector<double> nodes{0.0, 0.2};
    const std::vector<double> one{1.0};
    CHECK_THROWS_AS(interpolate(nodes, one), InputError);
    const std::vector<double> dup{0.3, 0.3};
    const std::vector<double> two{1.0, 1.0};
    CHECK_THROWS_AS(interpolate(dup, two), InputError);
  }
}

TEST_CASE("power function") {
  const std::vector<double> zero{0.0};
  const GramSystem g0 = gramMatrix(2.0, zero);
  CHECK(powerFunction(g0, kHalfPi) == doctest::Approx(1.3812646753803643882).epsilon(1e-13));
  CHECK(powerFunction(2.0, 0.3) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));

  Rng rng(17);
  std::vector<double> nodes;
  std::vector<double> grid;
  for (int i = 0; i <= 200; ++i) grid.push_back(-kHalfPi + kPi * i / 200);
  std::vector<double> previous(grid.size(), std::sqrt(2.0));
  for (int step = 0; step < 12; ++step) {
    double c;
    do {
      c = rng.uniform(-kHalfPi, kHalfPi);
    } while ([&] {
      for (double v : nodes) if (std::abs(v - c) < 1e-3) return true;
      return false;
    }());
    nodes.push_back(c);
    const GramSystem g = gramMatrix(2.0, nodes);
    for (double y : nodes) CHECK(powerFunction(g, y) <= 1e-6);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double p = powerFunction(g, grid[i]);
      CHECK(p <= previous[i] + 1e-9);
      previous[i] = p;
    }
  }
}

TEST_CASE("power function bounds the interpolation error") {
  const std::vector<double> nodes{-1.2, -0.4, 0.3, 1.1};
  const H1Function f(TrigPoly({0.2, 0.5, -0.3}, {0.0, 0.7}));
  std::vector<double> values;
  for (double y : nodes) values.push_back(f(y));
  const Interpolant s = interpolate(nodes, values);
  const GramSystem g = gramMatrix(2.0, nodes);
  const double fnorm = funcspace::normIso(f);
  for (int i = 0; i <= 60; ++i) {
    const double x = -kHalfPi + kPi * i / 60;
    CHECK(std::abs(f(x) - s(x)) <= powerFunction(g, x) * fnorm + 1e-9);
  }
}
