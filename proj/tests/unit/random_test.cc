#include <gtest/gtest.h>

#include <set>

#include "mapperscope/random.h"

namespace mapperscope {
namespace {

// Reference derivation written out longhand.
std::uint64_t reference_seed(std::uint64_t root, const std::string& purpose, std::uint64_t index) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : purpose) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  std::uint64_t z = (root ^ h) + index + 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

TEST(DeriveSeed, MatchesDocumentedContract) {
  for (std::uint64_t root : {0ULL, 1ULL, 42ULL, 0xdeadbeefULL}) {
    for (std::uint64_t k = 0; k < 5; ++k) {
      EXPECT_EQ(derive_seed(root, "delta", k), reference_seed(root, "delta", k));
      EXPECT_EQ(derive_seed(root, "bootstrap", k), reference_seed(root, "bootstrap", k));
    }
  }
}

TEST(DeriveSeed, PurposesGiveDistinctStreams) {
  EXPECT_NE(derive_seed(7, "delta", 0), derive_seed(7, "bootstrap", 0));
  EXPECT_NE(derive_seed(7, "delta", 0), derive_seed(7, "delta", 1));
}

TEST(Rng, EngineIsStandardMt19937_64) {
  // The standard fixes the 10000th output of a default-seeded mt19937_64.
  Rng rng(5489u);
  std::uint64_t v = 0;
  for (int i = 0; i < 10000; ++i) v = rng.next();
  EXPECT_EQ(v, 9981545732273789042ULL);
}

TEST(Rng, BelowStaysInRangeAndCoversIt) {
  Rng rng(3);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 2000; ++i) {
    const auto v = rng.below(7);
    ASSERT_LT(v, 7u);
    seen.insert(v);
  }
  EXPECT_EQ(seen.size(), 7u);
  EXPECT_EQ(rng.below(1), 0u);
  EXPECT_EQ(rng.below(0), 0u);
}

TEST(Rng, UniformInUnitInterval) {
  Rng rng(11);
  for (int i = 0; i < 1000; ++i) {
    const double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

TEST(BootstrapIndices, DeterministicAndInRange) {
  const auto a = bootstrap_indices(50, 99);
  const auto b = bootstrap_indices(50, 99);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.size(), 50u);
  for (auto i : a) EXPECT_LT(i, 50u);
  EXPECT_NE(a, bootstrap_indices(50, 100));
}

}  // namespace
}  // namespace mapperscope
