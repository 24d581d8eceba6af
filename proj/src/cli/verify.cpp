#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>

#include "isorkhs/cli.hpp"
#include "isorkhs/errors.hpp"
#include "isorkhs/random.hpp"
#include "isorkhs/seqmodel.hpp"

namespace isorkhs::cli {

namespace {

using quad::kHalfPi;
using quad::kPi;

constexpr double kInf = std::numeric_limits<double>::infinity();

const funcspace::Options kQuadrature{funcspace::Path::Quadrature, {}};

// Each suite owns a generator derived from the report seed and its own name,
// so one suite's draws do not depend on which suites ran before it.
std::uint64_t suiteSeed(std::uint64_t seed, const std::string& suite) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : suite) h = (h ^ c) * 1099511628211ULL;
  return seed ^ h;
}

class Battery {
 public:
  explicit Battery(std::vector<Check>& out) : out_(out) {}

  void atMost(const std::string& id, double tolerance, const std::function<double()>& measure) {
    add(id, "<=", tolerance, measure);
  }
  void atLeast(const std::string& id, double tolerance, const std::function<double()>& measure) {
    add(id, ">=", tolerance, measure);
  }

 private:
  void add(const std::string& id, const char* relation, double tolerance, const std::function<double()>& measure) {
    Check c;
    c.id = id;
    c.relation = relation;
    c.tolerance = tolerance;
    try {
      c.value = measure();
      c.passed = c.relation == "<=" ? c.value <= tolerance : c.value >= tolerance;
    } catch (const std::exception& e) {
      c.value = std::numeric_limits<double>::quiet_NaN();
      c.passed = false;
      c.detail = e.what();
    }
    out_.push_back(std::move(c));
  }

  std::vector<Check>& out_;
};

H1Function randomTrig(Rng& rng, int max_degree) {
  const int k = rng.integer(1, max_degree);
  std::vector<double> c(k + 1), s(k);
  for (double& v : c) v = rng.uniform(-1.0, 1.0);
  for (double& v : s) v = rng.uniform(-1.0, 1.0);
  return H1Function(TrigPoly::projected(std::move(c), std::move(s)));
}

DiangleExpansion randomExpansion(Rng& rng, int terms, bool constant, bool nonnegative) {
  std::vector<DiangleTerm> ts;
  for (int i = 0; i < terms; ++i) {
    ts.push_back({rng.uniform(-kHalfPi, kHalfPi), nonnegative ? rng.uniform(0.0, 2.0) : rng.uniform(-2.0, 2.0)});
  }
  return DiangleExpansion(constant ? rng.uniform(-2.0, 2.0) : 0.0, std::move(ts));
}

std::vector<double> randomNodes(Rng& rng, int n, double separation) {
  std::vector<double> y;
  while (static_cast<int>(y.size()) < n) {
    const double c = rng.uniform(-kHalfPi, kHalfPi);
    if (std::all_of(y.begin(), y.end(), [&](double v) { return std::abs(v - c) > separation; })) y.push_back(c);
  }
  return y;
}

convexgeo::SymmetricPolygon randomZonotope(Rng& rng) {
  std::vector<convexgeo::Generator> g;
  const int n = rng.integer(1, 8);
  for (int i = 0; i < n; ++i) g.push_back({rng.uniform(-kHalfPi, kHalfPi), rng.uniform(0.1, 2.0)});
  return convexgeo::zonotopeFromGenerators(g);
}

std::vector<double> uniformGrid(int n) {
  std::vector<double> x(n);
  for (int i = 0; i < n; ++i) x[i] = i == n - 1 ? kHalfPi : -kHalfPi + kPi * i / (n - 1);
  return x;
}

double maxReproducingResidual(const H1Function& f, const funcspace::Options& options) {
  double worst = 0.0;
  for (double y : uniformGrid(101)) worst = std::max(worst, kernel::reproducingResidual(f, y, options));
  return worst;
}

// --------------------------------------------------------------- suites

void positivity(Battery& b, Rng& rng) {
  b.atMost("unit-inner-exact", 0.0, [] {
    return std::abs(funcspace::innerProductIso(H1Function::one(), H1Function::one()) - 1.0);
  });
  b.atMost("unit-inner-quadrature", 1e-11, [] {
    return std::abs(funcspace::innerProductIso(H1Function::one(), H1Function::one(), kQuadrature) - 1.0);
  });

  std::vector<H1Function> population;
  for (int i = 0; i < 500; ++i) population.push_back(randomTrig(rng, 8));
  b.atLeast("energy-deficit-min", -1e-9, [&] {
    double m = kInf;
    for (const auto& f : population) m = std::min(m, funcspace::energyDeficit(f));
    return m;
  });
  b.atLeast("norm-squared-min", -1e-9, [&] {
    double m = kInf;
    for (const auto& f : population) m = std::min(m, funcspace::innerProductIso(f, f));
    return m;
  });
  b.atMost("energy-equals-pi-wirtinger", 1e-9, [&] {
    double m = 0.0;
    for (const auto& f : population) {
      m = std::max(m, std::abs(funcspace::energyDeficit(f) - kPi * funcspace::wirtingerDeficit(f)));
    }
    return m;
  });
  b.atMost("wirtinger-constant", 1e-12, [] { return std::abs(funcspace::wirtingerDeficit(H1Function::constant(2.5))); });
}

void reproducing(Battery& b, Rng& rng) {
  b.atMost("reproducing-one", 1e-10, [] { return maxReproducingResidual(H1Function::one(), {}); });
  b.atMost("reproducing-diangles", 1e-10, [] {
    double m = 0.0;
    for (double psi : {-kHalfPi, -0.7, 0.0, 0.45, 1.3}) {
      m = std::max(m, maxReproducingResidual(H1Function::diangle(psi), {}));
    }
    return m;
  });
  b.atMost("reproducing-kernel-functions", 1e-10, [] {
    double m = 0.0;
    for (double x : {-1.2, -0.3, 0.0, 0.8, kHalfPi}) {
      m = std::max(m, maxReproducingResidual(kernel::kernelFunction(2.0, x), {}));
    }
    return m;
  });
  std::vector<H1Function> spans;
  for (int i = 0; i < 20; ++i) spans.push_back(H1Function(randomExpansion(rng, 10, true, false)));
  b.atMost("reproducing-random-spans", 1e-10, [&] {
    double m = 0.0;
    for (const auto& f : spans) m = std::max(m, maxReproducingResidual(f, {}));
    return m;
  });
  b.atMost("reproducing-trig-quadrature", 1e-7, [] {
    const H1Function c2(TrigPoly({0.0, 0.0, 1.0}, {0.0, 0.3}));
    return std::max(maxReproducingResidual(H1Function::cosine(1), kQuadrature),
                    maxReproducingResidual(c2, kQuadrature));
  });

  std::vector<std::pair<double, double>> xh;
  for (int i = 0; i < 50; ++i) {
    const double x = rng.uniform(-kHalfPi, kHalfPi);
    xh.push_back({x, rng.uniform(-kHalfPi, kHalfPi) - x});
  }
  b.atMost("diangle-difference-norm", 1e-10, [&] {
    double m = 0.0;
    for (auto [x, h] : xh) {
      const H1Function d(DiangleExpansion::single(x + h) - DiangleExpansion::single(x));
      m = std::max(m, std::abs(funcspace::normIsoSquared(d) - 4.0 / kPi * std::sin(std::abs(h))));
    }
    return m;
  });
}

void gramPsd(Battery& b, Rng& rng) {
  std::vector<std::pair<double, std::vector<double>>> sets;
  const double thetas[] = {1.0, 1.5, 2.0, 5.0};
  for (int i = 0; i < 200; ++i) sets.push_back({thetas[i % 4], randomNodes(rng, rng.integer(1, 40), 1e-9)});
  b.atLeast("gram-min-over-max-eigenvalue", -1e-9, [&] {
    double m = kInf;
    for (const auto& [theta, nodes] : sets) {
      const auto g = kernel::gramMatrix(theta, nodes);
      m = std::min(m, g.min_eigenvalue / g.max_eigenvalue);
    }
    return m;
  });

  // Interpolation on nested node sets.
  const H1Function target(TrigPoly({0.3, -0.4, 0.8, 0.0, 0.2}, {0.0, 0.5, 0.0, -0.25}));
  std::vector<double> nodes;
  for (double y : randomNodes(rng, 24, 1e-3)) nodes.push_back(y);
  const auto grid = uniformGrid(201);
  double node_residual = 0.0;
  double power_at_nodes = 0.0;
  double power_min = kInf;
  double monotone_excess = -kInf;
  std::vector<double> previous(grid.size(), kInf);
  std::string failure;
  try {
    for (std::size_t n = 1; n <= nodes.size(); ++n) {
      const std::span<const double> active(nodes.data(), n);
      std::vector<double> values;
      for (double y : active) values.push_back(target(y));
      const auto s = kernel::interpolate(active, values);
      for (std::size_t j = 0; j < n; ++j) node_residual = std::max(node_residual, std::abs(s(active[j]) - values[j]));
      const auto g = kernel::gramMatrix(2.0, active);
      for (double y : active) power_at_nodes = std::max(power_at_nodes, kernel::powerFunction(g, y));
      for (std::size_t i = 0; i < grid.size(); ++i) {
        const double p = kernel::powerFunction(g, grid[i]);
        power_min = std::min(power_min, p);
        monotone_excess = std::max(monotone_excess, p - previous[i]);
        previous[i] = p;
      }
    }
  } catch (const std::exception& e) {
    failure = e.what();
  }
  auto rethrow = [&](double v) {
    if (!failure.empty()) throw std::runtime_error(failure);
    return v;
  };
  b.atMost("interpolation-node-residual", 1e-8, [&] { return rethrow(node_residual); });
  b.atMost("power-function-at-nodes", 1e-7, [&] { return rethrow(power_at_nodes); });
  b.atLeast("power-function-nonnegative", 0.0, [&] { return rethrow(power_min); });
  b.atMost("power-function-monotone", 1e-9, [&] { return rethrow(monotone_excess); });
}

void sequence(Battery& b, Rng& rng) {
  std::vector<std::pair<DiangleExpansion, DiangleExpansion>> pairs;
  for (int i = 0; i < 300; ++i) {
    pairs.push_back({randomExpansion(rng, rng.integer(1, 12), true, false),
                     randomExpansion(rng, rng.integer(1, 12), true, false)});
  }
  b.atMost("sequence-function-agreement", 1e-9, [&] {
    double m = 0.0;
    for (const auto& [x, y] : pairs) {
      m = std::max(m, std::abs(seqmodel::seqInner(x, y) -
                               funcspace::innerProductIso(seqmodel::toFunction(x), seqmodel::toFunction(y))));
    }
    return m;
  });
  b.atMost("rearrangement-identities", 1e-12, [&] {
    double m = 0.0;
    for (const auto& [x, y] : pairs) {
      for (const auto* e : {&x, &y}) {
        const auto f = seqmodel::normSquaredForms(*e);
        const double scale = 1.0 + std::abs(f.gram);
        m = std::max(m, std::max(std::abs(f.gram - f.completed_square), std::abs(f.gram - f.expanded)) / scale);
      }
    }
    return m;
  });
  b.atLeast("isoperimetric-gap-min", -1e-9, [&] {
    double m = kInf;
    for (const auto& [x, y] : pairs) {
      m = std::min({m, seqmodel::sequenceIsoperimetricGap(x), seqmodel::sequenceIsoperimetricGap(y)});
      const DiangleExpansion x_no_constant = x - DiangleExpansion(x.constant());
      m = std::min(m, seqmodel::reducedIsoperimetricGap(x_no_constant));
    }
    return m;
  });
  b.atMost("gap-equals-scaled-norm", 1e-9, [&] {
    double m = 0.0;
    for (const auto& [x, y] : pairs) {
      const double n2 = seqmodel::seqNormSquared(x);
      m = std::max(m, std::abs(seqmodel::sequenceIsoperimetricGap(x) - kPi * kPi / 4 * n2) / (1.0 + n2));
    }
    return m;
  });
}

void geometry(Battery& b, Rng& rng) {
  std::vector<convexgeo::BodyPair> pairs;
  for (int i = 0; i < 100; ++i) pairs.push_back({randomZonotope(rng), randomZonotope(rng)});
  b.atLeast("pair-deficit-min", -1e-9, [&] {
    double m = kInf;
    for (const auto& p : pairs) m = std::min(m, convexgeo::pairDeficit(p));
    return m;
  });
  b.atMost("isometry", 1e-7, [&] {
    double m = 0.0;
    for (const auto& p : pairs) {
      m = std::max(m, std::abs(convexgeo::convexNormSquared(p) -
                               funcspace::normIsoSquared(convexgeo::pairToFunction(p))));
    }
    return m;
  });
  b.atMost("cauchy-relative", 1e-8, [&] {
    double m = 0.0;
    for (const auto& p : pairs) {
      for (const auto* body : {&p.u, &p.v}) {
        m = std::max(m, convexgeo::cauchyCheck(*body) / (1.0 + convexgeo::perimeter(*body)));
      }
    }
    return m;
  });
  b.atMost("measure-as-integral", 1e-7, [&] {
    double m = 0.0;
    for (const auto& p : pairs) {
      const H1Function f = convexgeo::pairToFunction(p);
      const auto mo = funcspace::moments(f, f, quad::Interval::delta());
      m = std::max(m, std::abs(mo.integral_fg - mo.integral_dfdg - convexgeo::pairMeasure(p)));
    }
    return m;
  });

  const convexgeo::BodyPair disc{convexgeo::regularPolygon(64), convexgeo::SymmetricPolygon::point()};
  b.atMost("disc-norm-squared", 0.01, [&] { return std::abs(convexgeo::convexNormSquared(disc) - 1.0); });
  b.atMost("disc-function-is-one", 0.01, [&] {
    const H1Function f = convexgeo::pairToFunction(disc);
    double m = 0.0;
    for (double x : uniformGrid(721)) m = std::max(m, std::abs(f(x) - 1.0));
    return m;
  });
  b.atMost("isometry-scale-calibration", 0.0, [] {
    return std::abs(convexgeo::calibrateIsometryScale().chosen - convexgeo::kIsometryScale);
  });
  b.atMost("polygon-area-scale-calibration", 0.0, [] {
    return std::abs(convexgeo::calibratePolygonAreaScale().chosen - seqmodel::kPolygonAreaScale);
  });
}

void holder(Battery& b, Rng&) {
  const std::vector<H1Function> set = {
      H1Function::diangle(0.0), H1Function::diangle(0.9), H1Function::cosine(1), H1Function::cosine(2),
      H1Function(TrigPoly({0.0, 0.0, 1.0}, {0.0, 0.3})), kernel::kernelFunction(2.0, 0.4),
      H1Function(DiangleExpansion(0.5, {{-1.0, 1.0}, {0.3, -0.7}, {1.2, 0.4}}))};
  b.atMost("holder-ratio-max", 1.0 + 1e-9, [&] {
    double m = 0.0;
    const auto xs = uniformGrid(41);
    for (const auto& f : set) {
      for (double x : xs) {
        for (double h : {1e-6, 1e-3, 0.05, 0.3, 1.0, 2.0, kPi}) {
          for (double signed_h : {h, -h}) {
            const double y = x + signed_h;
            if (y < -kHalfPi || y > kHalfPi) continue;
            m = std::max(m, funcspace::holderRatio(f, x, signed_h));
          }
        }
      }
    }
    return m;
  });
  b.atLeast("cube-root-quotient", 20.0, [] {
    const auto u = [](double x) { return std::cbrt(std::abs(x)); };
    const double h = 1e-8;
    return std::abs(u(h) - u(0.0)) / std::sqrt(h);
  });
}

void classicalKernel(Battery& b, Rng&) {
  const std::vector<AcFunction> set = {
      {[](double x) { return std::cos(x); }, [](double x) { return -std::sin(x); }, {}},
      {[](double) { return 1.0; }, [](double) { return 0.0; }, {}},
      {[](double x) { return x; }, [](double) { return 1.0; }, {}},
      {[](double x) { return x * x - 0.5 * x; }, [](double x) { return 2 * x - 0.5; }, {}},
      {[](double x) { return x * x * x; }, [](double x) { return 3 * x * x; }, {}}};
  b.atMost("classical-reproducing", 1e-7, [&] {
    double m = 0.0;
    for (const auto& f : set) {
      for (int i = 0; i <= 20; ++i) {
        const double y = i / 20.0;
        const auto k = kernel::classicalKernelFunction(0.0, 1.0, y);
        m = std::max(m, std::abs(funcspace::innerProductClassical(f, k, {0.0, 1.0}) - f.value(y)));
      }
    }
    return m;
  });
  b.atMost("classical-kernel-symmetric", 1e-15, [] {
    double m = 0.0;
    for (double x : {0.0, 0.3, 0.77, 1.0}) {
      for (double y : {0.1, 0.5, 1.0}) {
        m = std::max(m, std::abs(kernel::classicalKernelEval(0.0, 1.0, x, y) - kernel::classicalKernelEval(0.0, 1.0, y, x)));
      }
    }
    return m;
  });
}

using Suite = void (*)(Battery&, Rng&);

const std::vector<std::pair<std::string, Suite>>& suites() {
  static const std::vector<std::pair<std::string, Suite>> s = {
      {"positivity", positivity}, {"reproducing", reproducing}, {"gram-psd", gramPsd},
      {"sequence", sequence},     {"geometry", geometry},       {"holder", holder},
      {"classical-kernel", classicalKernel}};
  return s;
}

}  // namespace

bool VerifyReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

const std::vector<std::string>& suiteNames() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [name, fn] : suites()) n.push_back(name);
    n.push_back("all");
    return n;
  }();
  return names;
}

VerifyReport runSuite(const std::string& suite, std::uint64_t seed) {
  const auto start = std::chrono::steady_clock::now();
  VerifyReport report;
  report.suite = suite;
  report.seed = seed;
  bool found = false;
  for (const auto& [name, fn] : suites()) {
    if (suite != "all" && suite != name) continue;
    found = true;
    std::vector<Check> checks;
    Battery battery(checks);
    Rng rng(suiteSeed(seed, name));
    fn(battery, rng);
    for (auto& c : checks) {
      c.id = name + "/" + c.id;
      report.checks.push_back(std::move(c));
    }
  }
  if (!found) throw InputError("unknown suite \"" + suite + "\"");
  report.duration_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

Json reportToJson(const VerifyReport& report, bool with_timing) {
  Json checks = Json::array();
  for (const auto& c : report.checks) {
    Json j{{"id", c.id},
           {"status", c.passed ? "pass" : "fail"},
           {"value", c.value},
           {"relation", c.relation},
           {"tolerance", c.tolerance}};
    if (!c.detail.empty()) j["detail"] = c.detail;
    checks.push_back(std::move(j));
  }
  Json doc{{"suite", report.suite},
           {"seed", report.seed},
           {"checks", checks},
           {"status", report.passed() ? "pass" : "fail"}};
  if (with_timing) doc["duration_s"] = report.duration_s;
  return doc;
}

}  // namespace isorkhs::cli
