#include "isorkhs/random.hpp"

namespace isorkhs {

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

int Rng::integer(int lo, int hi) {
  const double span = static_cast<double>(hi) - static_cast<double>(lo) + 1.0;
  const int k = lo + static_cast<int>(uniform() * span);
  return k > hi ? hi : k;
}

}  // namespace isorkhs
