#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace mapperscope {

// Name of the generator contract, stored in session provenance so that drawn
// index sequences can be reproduced elsewhere.
inline constexpr std::string_view kGeneratorName =
    "mt19937_64; seeds derived by splitmix64(root ^ fnv1a64(purpose) + index); "
    "bounded draws by rejection on the top bits";

// Derives an independent stream seed for one purpose ("delta", "bootstrap")
// and iteration index. Results do not depend on evaluation order.
std::uint64_t derive_seed(std::uint64_t root, std::string_view purpose,
                          std::uint64_t index);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform integer in [0, bound). Platform independent (unlike
  // std::uniform_int_distribution).
  std::uint64_t below(std::uint64_t bound);

  // Uniform real in [0, 1) with 53 random bits.
  double uniform();

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

// n indices drawn uniformly with replacement from [0, n).
std::vector<std::size_t> bootstrap_indices(std::size_t n, std::uint64_t seed);

}  // namespace mapperscope
