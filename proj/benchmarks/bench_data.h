#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "mapperscope/random.h"
#include "mapperscope/types.h"

namespace mapperscope::bench {

// Gaussian-ish cloud with a lens correlated to the first coordinate.
struct Cloud {
  Matrix points;
  std::vector<double> lens;
};

inline Cloud make_cloud(std::size_t n, std::size_t d, std::uint64_t seed = 1) {
  Rng rng(seed);
  Cloud c{Matrix(n, d), std::vector<double>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      c.points(i, j) = rng.uniform() + rng.uniform() + rng.uniform() - 1.5;
    }
    c.lens[i] = 1.0 / (1.0 + std::exp(-2.0 * c.points(i, 0)));
  }
  return c;
}

}  // namespace mapperscope::bench
