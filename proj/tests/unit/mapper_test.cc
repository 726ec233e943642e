#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "fixtures.h"
#include "mapperscope/error.h"
#include "mapperscope/mapper.h"
#include "oracles.h"

namespace mapperscope {
namespace {

using testing::TestRng;

TEST(BuildCover, TwoIntervalsOnUnitRange) {
  const std::vector<double> lens{0.0, 1.0};
  const auto cover = build_cover(lens, 2, 0.4);
  ASSERT_EQ(cover.intervals.size(), 2u);
  EXPECT_DOUBLE_EQ(cover.intervals[0].start, 0.0);
  EXPECT_DOUBLE_EQ(cover.intervals[0].end, 0.625);
  EXPECT_DOUBLE_EQ(cover.intervals[1].start, 0.375);
  EXPECT_EQ(cover.intervals[1].end, 1.0);
}

TEST(BuildCover, SingleResolutionIsWholeRange) {
  const std::vector<double> lens{0.2, 0.7, 0.4};
  for (double gain : {0.1, 0.4, 0.9}) {
    const auto cover = build_cover(lens, 1, gain);
    ASSERT_EQ(cover.intervals.size(), 1u);
    EXPECT_EQ(cover.intervals[0], (Interval{0.2, 0.7}));
  }
}

TEST(BuildCover, DegenerateRange) {
  const std::vector<double> lens{0.5, 0.5, 0.5};
  const auto cover = build_cover(lens, 6, 0.4);
  ASSERT_EQ(cover.intervals.size(), 1u);
  EXPECT_EQ(cover.intervals[0], (Interval{0.5, 0.5}));
}

TEST(BuildCover, Errors) {
  const std::vector<double> empty;
  const std::vector<double> lens{0.0, 1.0};
  try {
    build_cover(empty, 2, 0.4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyLens);
  }
  EXPECT_THROW(build_cover(lens, 0, 0.4), Error);
  EXPECT_THROW(build_cover(lens, 3, 1.0), Error);
}

TEST(BuildCover, InvariantsOnRandomRanges) {
  TestRng rng(1);
  for (int t = 0; t < 200; ++t) {
    auto lens = testing::random_lens(rng, 10);
    const int r = 1 + static_cast<int>(rng.below(40));
    const double g = rng.uniform(0.05, 0.95);
    const auto cover = build_cover(lens, r, g);
    const double lo = *std::min_element(lens.begin(), lens.end());
    const double hi = *std::max_element(lens.begin(), lens.end());
    ASSERT_EQ(cover.intervals.size(), static_cast<std::size_t>(r));
    EXPECT_EQ(cover.intervals.front().start, lo);
    EXPECT_EQ(cover.intervals.back().end, hi);
    for (std::size_t i = 1; i < cover.intervals.size(); ++i) {
      EXPECT_LT(cover.intervals[i - 1].start, cover.intervals[i].start);
      EXPECT_LT(cover.intervals[i].start, cover.intervals[i - 1].end);
    }
  }
}

TEST(AssignBins, T1Lens) {
  const auto preds = testing::t1_preds().probs;
  const auto cover = build_cover(preds, 2, 0.4);
  const auto bins = assign_bins(preds, cover);
  ASSERT_EQ(bins.size(), 2u);
  EXPECT_EQ(bins[0], (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(bins[1], (std::vector<std::size_t>{2, 3}));
}

TEST(AssignBins, BoundaryValueInBothBins) {
  const std::vector<double> lens{0.0, 0.375, 1.0};
  const auto bins = assign_bins(lens, build_cover(lens, 2, 0.4));
  EXPECT_EQ(bins[0], (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(bins[1], (std::vector<std::size_t>{1, 2}));
}

TEST(AssignBins, EmptyBinKept) {
  const std::vector<double> lens{0.0, 0.01, 0.99, 1.0};
  const auto bins = assign_bins(lens, build_cover(lens, 5, 0.2));
  ASSERT_EQ(bins.size(), 5u);
  EXPECT_TRUE(bins[2].empty());
}

TEST(ClusterBin, Examples) {
  const Matrix pts = Matrix::from_rows({{0.0, 0.0}, {0.1, 0.0}});
  const std::vector<std::size_t> rows{0, 1};
  EXPECT_EQ(cluster_bin(pts, rows, 0.3), (std::vector<std::vector<std::size_t>>{{0, 1}}));
  EXPECT_EQ(cluster_bin(pts, rows, 0.05), (std::vector<std::vector<std::size_t>>{{0}, {1}}));
  EXPECT_EQ(cluster_bin(pts, rows, 0.0), (std::vector<std::vector<std::size_t>>{{0}, {1}}));
  EXPECT_TRUE(cluster_bin(pts, {}, 0.3).empty());
}

TEST(ClusterBin, ChainsThroughIntermediatePoints) {
  // 0 - 1 - 2 each 1 apart, 0 - 2 is 2 apart.
  const Matrix pts = Matrix::from_rows({{0.0}, {1.0}, {2.0}, {5.0}});
  const std::vector<std::size_t> rows{3, 2, 1, 0};
  EXPECT_EQ(cluster_bin(pts, rows, 1.0),
            (std::vector<std::vector<std::size_t>>{{0, 1, 2}, {3}}));
}

TEST(ClusterBin, ThresholdIsInclusive) {
  const Matrix pts = Matrix::from_rows({{0.0, 0.0}, {3.0, 4.0}});
  const std::vector<std::size_t> rows{0, 1};
  EXPECT_EQ(cluster_bin(pts, rows, 5.0).size(), 1u);
  EXPECT_EQ(cluster_bin(pts, rows, std::nextafter(5.0, 0.0)).size(), 2u);
}

TEST(BuildMapper, T1) {
  const auto a = testing::t1_method_a();
  const auto lens = testing::t1_preds().probs;
  const MapperGraph g = build_mapper(a, lens, {2, 0.4, 0.3, 0});
  ASSERT_EQ(g.nodes.size(), 2u);
  EXPECT_EQ(g.nodes[0].members, (std::vector<std::size_t>{0, 1}));
  EXPECT_DOUBLE_EQ(g.nodes[0].lens_value, 0.075);
  EXPECT_EQ(g.nodes[1].members, (std::vector<std::size_t>{2, 3}));
  EXPECT_DOUBLE_EQ(g.nodes[1].lens_value, 0.925);
  EXPECT_TRUE(g.edges.empty());
  EXPECT_EQ(g.method_name, "A");
  EXPECT_EQ(g.params.resolution, 2);
}

TEST(BuildMapper, CircleHasOneLoop) {
  const auto c = testing::circle(200);
  const MapperGraph g = build_mapper(c.points, c.lens, {8, 0.4, 0.2, 0});
  EXPECT_EQ(connected_components(g), 1u);
  EXPECT_EQ(cycle_rank(g), 1u);
}

TEST(BuildMapper, ResolutionOneHasNoEdges) {
  TestRng rng(5);
  const Matrix pts = testing::random_matrix(rng, 30, 2);
  const auto lens = testing::random_lens(rng, 30);
  const MapperGraph g = build_mapper(pts, lens, {1, 0.4, 0.15, 0});
  const std::vector<std::size_t> all = [] {
    std::vector<std::size_t> v(30);
    std::iota(v.begin(), v.end(), 0);
    return v;
  }();
  EXPECT_EQ(g.nodes.size(), cluster_bin(pts, all, 0.15).size());
  EXPECT_TRUE(g.edges.empty());
}

TEST(BuildMapper, ShapeAndLensErrors) {
  const Matrix pts(3, 2);
  const std::vector<double> lens{0.1, 0.2};
  const std::vector<double> empty;
  try {
    build_mapper(pts, lens, {2, 0.4, 0.3, 0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kShapeMismatch);
  }
  try {
    build_mapper(Matrix(0, 2), empty, {2, 0.4, 0.3, 0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyLens);
  }
}

TEST(BuildMapper, MatchesNaiveOracle) {
  TestRng rng(2024);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 1 + rng.below(50);
    const std::size_t d = 1 + rng.below(4);
    const int r = 1 + static_cast<int>(rng.below(6));
    const double g = rng.uniform(0.1, 0.6);
    const double delta = rng.uniform(0.0, 0.6);
    const Matrix pts = testing::random_matrix(rng, n, d);
    const auto lens = testing::random_lens(rng, n);
    const MapperGraph got = build_mapper(pts, lens, {r, g, delta, 0});
    const auto want = oracle::naive_mapper(pts, lens, r, g, delta);
    ASSERT_EQ(got.nodes.size(), want.nodes.size()) << "instance " << t;
    for (std::size_t i = 0; i < got.nodes.size(); ++i) {
      EXPECT_EQ(got.nodes[i].members, want.nodes[i]);
      EXPECT_EQ(got.nodes[i].interval_index, want.intervals[i]);
      EXPECT_EQ(got.nodes[i].id, i);
    }
    std::set<std::pair<std::size_t, std::size_t>> edges;
    for (const auto& e : got.edges) edges.emplace(e.source, e.target);
    EXPECT_EQ(edges, want.edges) << "instance " << t;
  }
}

TEST(BuildMapper, NerveProperty) {
  TestRng rng(77);
  for (int t = 0; t < 30; ++t) {
    const Matrix pts = testing::random_matrix(rng, 40, 2);
    const auto lens = testing::random_lens(rng, 40);
    const MapperGraph g = build_mapper(pts, lens, {5, 0.4, 0.2, 0});
    std::set<std::pair<std::size_t, std::size_t>> adj;
    for (const auto& e : g.edges) {
      ASSERT_LT(e.source, e.target);
      adj.emplace(e.source, e.target);
      std::vector<std::size_t> common;
      std::set_intersection(g.nodes[e.source].members.begin(), g.nodes[e.source].members.end(),
                            g.nodes[e.target].members.begin(), g.nodes[e.target].members.end(),
                            std::back_inserter(common));
      EXPECT_EQ(common.size(), e.shared);
      EXPECT_GT(e.shared, 0u);
    }
    for (std::size_t u = 0; u < g.nodes.size(); ++u) {
      for (std::size_t v = u + 1; v < g.nodes.size(); ++v) {
        if (adj.count({u, v})) continue;
        std::vector<std::size_t> common;
        std::set_intersection(g.nodes[u].members.begin(), g.nodes[u].members.end(),
                              g.nodes[v].members.begin(), g.nodes[v].members.end(),
                              std::back_inserter(common));
        EXPECT_TRUE(common.empty());
      }
    }
  }
}

TEST(BuildMapper, Deterministic) {
  TestRng rng(9);
  const Matrix pts = testing::random_matrix(rng, 50, 3);
  const auto lens = testing::random_lens(rng, 50);
  EXPECT_EQ(build_mapper(pts, lens, {4, 0.4, 0.3, 0}), build_mapper(pts, lens, {4, 0.4, 0.3, 0}));
}

TEST(GraphMetrics, ComponentsAndCycleRank) {
  MapperGraph g;
  g.nodes.resize(5);
  g.edges = {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}, {3, 4, 1}};
  EXPECT_EQ(connected_components(g), 2u);
  EXPECT_EQ(cycle_rank(g), 1u);
}

}  // namespace
}  // namespace mapperscope
