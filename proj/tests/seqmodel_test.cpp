#include <cmath>
#include <vector>

#include "doctest.h"
#include "isorkhs/errors.hpp"
#include "isorkhs/random.hpp"
#include "isorkhs/seqmodel.hpp"

using namespace isorkhs;
using namespace isorkhs::seqmodel;
using quad::kHalfPi;
using quad::kPi;

namespace {

DiangleExpansion randomExpansion(Rng& rng, bool with_constant, bool nonnegative) {
  const int n = rng.integer(1, 20);
  std::vector<DiangleTerm> terms;
  for (int i = 0; i < n; ++i) {
    terms.push_back({rng.uniform(-kHalfPi, kHalfPi), nonnegative ? rng.uniform(0.0, 2.0) : rng.uniform(-2.0, 2.0)});
  }
  return DiangleExpansion(with_constant ? rng.uniform(-2.0, 2.0) : 0.0, std::move(terms));
}

}  // namespace

TEST_CASE("norm of 1 + I_phi") {
  for (double phi : {-1.0, 0.0, 0.6}) {
    const DiangleExpansion x(1.0, {{phi, 1.0}});
    CHECK(seqNormSquared(x) == doctest::Approx(3.0838090138738648577).epsilon(1e-14));
    CHECK(funcspace::normIsoSquared(toFunction(x)) == doctest::Approx(3.0838090138738648577).epsilon(1e-13));
  }
}

TEST_CASE("gaps for two diangles at +-pi/4") {
  const DiangleExpansion x(0.0, {{-kPi / 4, 1.0}, {kPi / 4, 1.0}});
  CHECK(reducedIsoperimetricGap(x) == doctest::Approx(3.0929581789406507446).epsilon(1e-14));
  CHECK(sequenceIsoperimetricGap(x) == doctest::Approx(4.8584073464102067615).epsilon(1e-14));
  CHECK_THROWS_AS(reducedIsoperimetricGap(DiangleExpansion(1.0, {{0.0, 1.0}})), DomainError);
}

TEST_CASE("sequence model agrees with the function model") {
  Rng rng(31);
  for (int i = 0; i < 200; ++i) {
    const DiangleExpansion x = randomExpansion(rng, true, false);
    const DiangleExpansion y = randomExpansion(rng, true, false);
    const double seq = seqInner(x, y);
    const double fun = funcspace::innerProductIso(toFunction(x), toFunction(y));
    CHECK(std::abs(seq - fun) <= 1e-10 * (1 + std::abs(seq)));
  }
}

TEST_CASE("the three norm forms agree and the gap is the scaled norm") {
  Rng rng(32);
  for (int i = 0; i < 300; ++i) {
    const DiangleExpansion x = randomExpansion(rng, i % 2 == 0, false);
    const NormForms f = normSquaredForms(x);
    const double mag = std::abs(f.gram) + 1.0;
    CHECK(std::abs(f.gram - f.completed_square) <= 1e-12 * mag * 10);
    CHECK(std::abs(f.gram - f.expanded) <= 1e-12 * mag * 10);
    const double n2 = seqNormSquared(x);
    CHECK(n2 >= -1e-9);
    CHECK(sequenceIsoperimetricGap(x) >= -1e-9);
    CHECK(std::abs(sequenceIsoperimetricGap(x) - kPi * kPi / 4 * n2) <= 1e-9 * mag);
    if (x.constant() == 0.0) {
      CHECK(std::abs(reducedIsoperimetricGap(x) - 2.0 / kPi * sequenceIsoperimetricGap(x)) <= 1e-9 * mag);
    }
  }
}

TEST_CASE("polygons") {
  const DiangleExpansion square(0.0, {{0.0, 1.0}, {-kHalfPi, 1.0}});
  CHECK(isPolygon(square));
  // Side 2 square: perimeter 8, area 4.
  CHECK(polygonPerimeter(square) == doctest::Approx(8.0).epsilon(1e-15));
  CHECK(polygonArea(square) == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(!isPolygon(DiangleExpansion(1.0, {{0.0, 1.0}})));
  CHECK(!isPolygon(DiangleExpansion(0.0, {{0.0, -1.0}})));
  CHECK_THROWS_AS(polygonArea(DiangleExpansion(0.0, {{0.0, -1.0}})), DomainError);

  Rng rng(33);
  for (int i = 0; i < 100; ++i) {
    const DiangleExpansion x = randomExpansion(rng, false, true);
    const double o = polygonPerimeter(x);
    CHECK(o * o - 4 * kPi * polygonArea(x) >= -1e-9);
  }
}

TEST_CASE("sine form") {
  const DiangleExpansion x(0.0, {{-kPi / 4, 1.0}, {kPi / 4, 1.0}});
  CHECK(sineForm(x) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(sineForm(DiangleExpansion(3.0)) == 0.0);
}
