#pragma once

#include <cstdint>
#include <random>

namespace isorkhs {

/// Portable seeded generator. The stream is std::mt19937_64 (fully specified
/// by the C++ standard) and the real mapping is fixed here instead of using
/// std::uniform_real_distribution, whose output differs between standard
/// libraries:
///   uniform()       = (next() >> 11) · 2⁻⁵³            ∈ [0, 1)
///   uniform(a, b)   = a + (b − a) · uniform()
///   integer(lo, hi) = lo + ⌊uniform() · (hi − lo + 1)⌋
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  int integer(int lo, int hi);

 private:
  std::mt19937_64 engine_;
};

}  // namespace isorkhs
