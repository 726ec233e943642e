#include "mapperscope/random.h"

#include <bit>

namespace mapperscope {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a64(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t root, std::string_view purpose,
                          std::uint64_t index) {
  return splitmix64((root ^ fnv1a64(purpose)) + index);
}

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound <= 1) return 0;
  const int shift = std::countl_zero(bound - 1);
  for (;;) {
    const std::uint64_t candidate = engine_() >> shift;
    if (candidate < bound) return candidate;
  }
}

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::vector<std::size_t> bootstrap_indices(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::size_t> out(n);
  for (auto& idx : out) idx = static_cast<std::size_t>(rng.below(n));
  return out;
}

}  // namespace mapperscope
