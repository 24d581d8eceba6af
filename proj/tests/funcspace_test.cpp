#include <cmath>
#include <vector>

#include "doctest.h"
#include "isorkhs/errors.hpp"
#include "isorkhs/funcspace.hpp"
#include "isorkhs/random.hpp"

using namespace isorkhs;
using namespace isorkhs::funcspace;
using quad::kHalfPi;
using quad::kPi;

namespace {

const Options kQuadrature{Path::Quadrature, {}};

H1Function randomTrig(Rng& rng, int max_degree) {
  const int k = rng.integer(1, max_degree);
  std::vector<double> c(k + 1), s(k);
  for (double& v : c) v = rng.uniform(-1.0, 1.0);
  for (double& v : s) v = rng.uniform(-1.0, 1.0);
  return H1Function(TrigPoly::projected(std::move(c), std::move(s)));
}

H1Function randomSpan(Rng& rng, int max_terms) {
  const int k = rng.integer(1, max_terms);
  std::vector<DiangleTerm> terms;
  for (int i = 0; i < k; ++i) terms.push_back({rng.uniform(-kHalfPi, kHalfPi), rng.uniform(-2.0, 2.0)});
  return H1Function(DiangleExpansion(rng.uniform(-2.0, 2.0), std::move(terms)));
}

H1Function cos2PlusSin2() {
  return H1Function(TrigPoly({0.0, 0.0, 1.0}, {0.0, 0.3}));
}

}  // namespace

TEST_CASE("evaluate") {
  CHECK(evaluate(H1Function::one(), 0.7) == 1.0);
  CHECK(evaluate(H1Function::diangle(0.0), kPi / 4) == doctest::Approx(std::sqrt(2.0) / 2).epsilon(1e-15));
  CHECK(std::abs(evaluate(H1Function::cosine(1), kHalfPi)) < 1e-16);
  CHECK_THROWS_AS(evaluate(H1Function::one(), 1.6), DomainError);
  CHECK_THROWS_AS(evaluate(H1Function::one(), -1.6), DomainError);
}

TEST_CASE("trig polynomials must satisfy the endpoint condition") {
  CHECK_NOTHROW(TrigPoly({0.0, 1.0}, {}));
  CHECK_NOTHROW(TrigPoly({0.0}, {0.0, 1.0}));          // sin 2t
  CHECK_THROWS_AS(TrigPoly({0.0}, {1.0}), DomainError);  // sin t
  CHECK_NOTHROW(TrigPoly({0.0}, {1.0, 0.0, 1.0}));     // sin t + sin 3t
  const TrigPoly p = TrigPoly::projected({0.2, 0.1}, {0.4, -0.3, 0.9, 0.0, 0.25});
  CHECK(p.value(-kHalfPi) == doctest::Approx(p.value(kHalfPi)).epsilon(1e-14));
  CHECK(p.sinCoeffs()[1] == -0.3);
}

TEST_CASE("sampled functions are checked at construction") {
  SampledFunction ok{[](double x) { return std::cos(2 * x); }, {}, {}};
  CHECK_NOTHROW(H1Function{ok});
  SampledFunction bad{[](double x) { return x; }, {}, {}};
  CHECK_THROWS_AS(H1Function{bad}, DomainError);
}

TEST_CASE("mean value and perimeter functional") {
  CHECK(meanValue(H1Function::one()) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(meanValue(H1Function::cosine(1)) == doctest::Approx(2.0 / kPi).epsilon(1e-14));
  for (double psi : {-1.2, 0.0, 0.9, kHalfPi}) {
    CHECK(meanValue(H1Function::diangle(psi)) == doctest::Approx(0.63661977236758134308).epsilon(1e-14));
    CHECK(std::abs(meanValue(H1Function::diangle(psi), kQuadrature) - 0.63661977236758134308) < 1e-12);
  }
  CHECK(perimeterFunctional(H1Function::one()) == doctest::Approx(kPi).epsilon(1e-15));
  CHECK(perimeterFunctional(H1Function::diangle(0.3)) == doctest::Approx(2.0).epsilon(1e-14));
  const H1Function ky(DiangleExpansion(2.0, {{0.7, -kHalfPi}}));
  CHECK(perimeterFunctional(ky) == doctest::Approx(kPi).epsilon(1e-14));
}

TEST_CASE("Wirtinger and energy deficits") {
  const H1Function c1 = H1Function::cosine(1);
  const H1Function c2 = H1Function::cosine(2);
  CHECK(std::abs(wirtingerDeficit(H1Function::constant(3.5))) < 1e-13);
  CHECK(wirtingerDeficit(c1) == doctest::Approx(1.2732395447351626862).epsilon(1e-13));
  CHECK(wirtingerDeficit(c2) == doctest::Approx(4.7123889803846898577).epsilon(1e-13));
  CHECK(wirtingerDeficit(c2, kQuadrature) == doctest::Approx(4.7123889803846898577).epsilon(1e-11));
  CHECK(std::abs(energyDeficit(H1Function::one())) < 1e-13);
  CHECK(energyDeficit(c1) == doctest::Approx(4.0).epsilon(1e-13));
  CHECK(energyDeficit(c2) == doctest::Approx(14.804406601634037928).epsilon(1e-13));
}

TEST_CASE("isoperimetric inner product closed-form values") {
  const H1Function one = H1Function::one();
  CHECK(innerProductIso(one, one) == 1.0);
  CHECK(std::abs(innerProductIso(one, one, kQuadrature) - 1.0) <= 1e-11);
  CHECK(innerProductIso(one, H1Function::diangle(0.4)) == doctest::Approx(2.0 / kPi).epsilon(1e-14));
  const double phi = -0.3, psi = 1.1;
  CHECK(innerProductIso(H1Function::diangle(phi), H1Function::diangle(psi)) ==
        doctest::Approx(4.0 / (kPi * kPi) * (2.0 - kHalfPi * std::sin(std::abs(phi - psi)))).epsilon(1e-13));
  CHECK(innerProductIso(H1Function::cosine(1), H1Function::cosine(1)) ==
        doctest::Approx(0.81056946913870217155).epsilon(1e-14));
}

TEST_CASE("norms") {
  CHECK(normIso(H1Function::one()) == 1.0);
  for (double x : {-1.0, 0.0, 0.2}) {
    for (double h : {0.5, -0.3, 1e-3}) {
      const H1Function d(DiangleExpansion::single(x + h) - DiangleExpansion::single(x));
      CHECK(std::abs(normIsoSquared(d) - 4.0 / kPi * std::sin(std::abs(h))) < 1e-13);
    }
  }
  CHECK(normIsoSquared(H1Function::cosine(1)) == doctest::Approx(8.0 / (kPi * kPi)).epsilon(1e-14));
  // ‖f‖² = (o² + E)/π²
  const H1Function f = cos2PlusSin2();
  const double o = perimeterFunctional(f);
  CHECK(normIsoSquared(f) == doctest::Approx((o * o + energyDeficit(f)) / (kPi * kPi)).epsilon(1e-13));
}

TEST_CASE("negative squared norm is an invariant violation") {
  // A sampled 'function' whose derivative rule lies: it claims f′ = 0 for
  // cos 2t, so ∫(f² − f′²) > 0 and the form goes negative.
  SampledFunction liar{[](double x) { return std::cos(2 * x); }, [](double) { return 0.0; }, {}};
  CHECK_THROWS_AS(normIsoSquared(H1Function(liar)), InvariantViolation);
}

TEST_CASE("classical Sobolev inner product") {
  AcFunction one{[](double) { return 1.0; }, [](double) { return 0.0; }, {}};
  AcFunction id{[](double x) { return x; }, [](double) { return 1.0; }, {}};
  CHECK(innerProductClassical(one, one, {0.0, 1.0}) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(innerProductClassical(id, id, {0.0, 1.0}) == doctest::Approx(4.0 / 3.0).epsilon(1e-14));
  const H1Function c = H1Function::cosine(1);
  CHECK(innerProductClassical(c, c, quad::Interval::delta()) == doctest::Approx(kPi).epsilon(1e-14));
  CHECK(innerProductClassical(c, c, quad::Interval::delta(), kQuadrature) == doctest::Approx(kPi).epsilon(1e-12));
}

TEST_CASE("Hoelder ratio") {
  CHECK(holderRatio(H1Function::constant(2.0), 0.1, 0.3) == 0.0);
  CHECK(holderRatio(H1Function::diangle(0.0), 0.0, 0.5) == doctest::Approx(0.42487982106073537156).epsilon(1e-13));
  const H1Function k0(DiangleExpansion(2.0, {{0.0, -kHalfPi}}));
  CHECK(holderRatio(k0, -kHalfPi, kPi) < 1e-15);
  CHECK_THROWS_AS(holderRatio(H1Function::one(), 0.0, 0.0), DomainError);
  CHECK_THROWS_AS(holderRatio(H1Function::one(), 1.5, 0.2), DomainError);
}

TEST_CASE("positivity and E = pi F on random trig polynomials") {
  Rng rng(11);
  for (int i = 0; i < 500; ++i) {
    const H1Function f = randomTrig(rng, 8);
    const double n2 = innerProductIso(f, f);
    const double e = energyDeficit(f);
    const double w = wirtingerDeficit(f);
    CHECK(n2 >= -1e-9);
    CHECK(e >= -1e-9);
    CHECK(w >= -1e-9);
    CHECK(std::abs(e - kPi * w) <= 1e-9);
  }
}

TEST_CASE("definiteness proxy") {
  std::vector<H1Function> set = {H1Function::cosine(1), H1Function::cosine(2), H1Function::sine(2),
                                 H1Function(DiangleExpansion::single(0.3) - DiangleExpansion::single(-0.9)),
                                 H1Function::one()};
  for (const auto& f : set) CHECK(innerProductIso(f, f) >= 1e-6);
}

TEST_CASE("symmetry and bilinearity") {
  Rng rng(3);
  for (int i = 0; i < 60; ++i) {
    const bool trig = i % 2 == 0;
    const H1Function f = trig ? randomTrig(rng, 6) : randomSpan(rng, 6);
    const H1Function g = trig ? randomTrig(rng, 6) : randomSpan(rng, 6);
    const H1Function h = trig ? randomTrig(rng, 6) : randomSpan(rng, 6);
    const double a = rng.uniform(-2.0, 2.0);
    const double b = rng.uniform(-2.0, 2.0);
    CHECK(std::abs(innerProductIso(f, g) - innerProductIso(g, f)) <= 1e-10);
    const double lhs = innerProductIso(linearCombination(a, f, b, g), h);
    const double rhs = a * innerProductIso(f, h) + b * innerProductIso(g, h);
    CHECK(std::abs(lhs - rhs) <= 1e-10);
  }
  // Mixed variants go through the sampled route.
  const H1Function mixed = linearCombination(0.5, H1Function::cosine(2), -1.5, H1Function::diangle(0.2));
  CHECK(mixed.kind() == H1Function::Kind::Sampled);
  const double lhs = innerProductIso(mixed, H1Function::diangle(-0.4));
  const double rhs = 0.5 * innerProductIso(H1Function::cosine(2), H1Function::diangle(-0.4)) -
                     1.5 * innerProductIso(H1Function::diangle(0.2), H1Function::diangle(-0.4));
  CHECK(std::abs(lhs - rhs) <= 1e-10);
}

TEST_CASE("exact and quadrature paths agree") {
  Rng rng(5);
  for (int i = 0; i < 40; ++i) {
    const H1Function f = i % 3 == 0 ? randomTrig(rng, 8) : randomSpan(rng, 10);
    const H1Function g = i % 2 == 0 ? randomTrig(rng, 8) : randomSpan(rng, 10);
    CHECK(std::abs(innerProductIso(f, g) - innerProductIso(f, g, kQuadrature)) <= 1e-9);
  }
}

TEST_CASE("exact path rejects sampled members") {
  SampledFunction s{[](double x) { return std::cos(2 * x); }, {}, {}};
  const Options exact{Path::Exact, {}};
  CHECK_THROWS_AS(innerProductIso(H1Function(s), H1Function::one(), exact), DomainError);
}

TEST_CASE("sampled member without derivative rule") {
  // Finite-difference derivatives: looser quadrature tolerance.
  SampledFunction s{[](double x) { return std::sin(std::abs(x - 0.2)); }, {}, {0.2}};
  Options opts{Path::Auto, {}};
  opts.spec.abs_tol = opts.spec.rel_tol = 1e-9;
  CHECK(std::abs(innerProductIso(H1Function(s), H1Function(s), opts) - 8.0 / (kPi * kPi)) < 1e-8);
}

TEST_CASE("Hoelder bound holds on a grid") {
  const std::vector<H1Function> set = {
      H1Function::diangle(0.0), H1Function::cosine(1), H1Function::cosine(2), cos2PlusSin2(),
      H1Function(DiangleExpansion(2.0, {{0.4, -kHalfPi}}))};
  for (const auto& f : set) {
    const double norm = normIso(f);
    double worst = 0.0;
    for (int i = 0; i <= 100; ++i) {
      const double x = -kHalfPi + kPi * i / 100;
      for (int j = 1; j <= 51; ++j) {
        const double h = (kHalfPi - x) * j / 51.0;
        if (h == 0.0 || x + h > kHalfPi) continue;
        const double r = std::abs(f(x + h) - f(x)) / (std::sqrt(kPi) * norm * std::sqrt(h));
        worst = std::max(worst, r);
      }
    }
    CHECK(worst <= 1.0 + 1e-9);
  }
}
