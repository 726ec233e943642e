#include <gtest/gtest.h>

#include <algorithm>

#include "fixtures.h"
#include "mapperscope/mapper.h"
#include "mapperscope/session.h"

namespace mapperscope {
namespace {

bool has(const std::vector<std::string>& v, const std::string& needle) {
  return std::any_of(v.begin(), v.end(),
                     [&](const std::string& s) { return s.find(needle) != std::string::npos; });
}

TEST(ValidateSession, T1IsClean) {
  EXPECT_EQ(validate_session(testing::t1_session()), std::vector<std::string>{});
}

TEST(ValidateSession, ProbabilityOutOfRange) {
  Session s = testing::t1_session();
  s.preds.probs = {0.05, 1.2, 0.9, 0.95};
  EXPECT_EQ(validate_session(s), std::vector<std::string>{"prob out of [0,1]"});
}

TEST(ValidateSession, ShortAttributionSet) {
  Session s = testing::t1_session();
  s.methods[1].attributions = Matrix::from_rows({{0, 0}, {1, 1}, {2, 2}});
  const auto v = validate_session(s);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_NE(v[0].find("row count mismatch"), std::string::npos);
}

TEST(ValidateSession, ReportsEachFault) {
  Session s = testing::t1_session();
  s.labels.labels[0] = 3;
  s.distances(0, 1) = 0.25;
  s.graphs[1].method_name = "other";
  s.projections[0].coords = Matrix(3, 2);
  const auto v = validate_session(s);
  EXPECT_TRUE(has(v, "label not binary"));
  EXPECT_TRUE(has(v, "distance matrix is not symmetric"));
  EXPECT_TRUE(has(v, "not aligned"));
  EXPECT_TRUE(has(v, "projection 'pca'"));

  Session missing = testing::t1_session();
  missing.preds.probs.pop_back();
  EXPECT_TRUE(has(validate_session(missing), "prediction count mismatch"));

  Session dup = testing::t1_session();
  dup.methods[1].method_name = dup.methods[0].method_name;
  EXPECT_TRUE(has(validate_session(dup), "duplicate method name"));
}

TEST(ValidateSession, NeverThrowsOnEmpty) {
  Session s;
  EXPECT_NO_THROW(validate_session(s));
  EXPECT_FALSE(validate_session(s).empty());
}

TEST(ValidateGraph, CatchesEdgeAndMemberFaults) {
  const Session s = testing::t1_session();
  EXPECT_TRUE(validate_graph(s.graphs[0], s.preds).empty());

  MapperGraph g = s.graphs[0];
  ASSERT_EQ(g.nodes.size(), 2u);
  g.edges.push_back({0, 1, 0});  // disjoint members
  EXPECT_FALSE(validate_graph(g, s.preds).empty());

  MapperGraph overlapping = s.graphs[0];
  overlapping.nodes[1].members = {1, 2, 3};
  overlapping.nodes[1].lens_value = (0.10 + 0.90 + 0.95) / 3.0;
  EXPECT_FALSE(validate_graph(overlapping, s.preds).empty());  // edge missing
  overlapping.edges.push_back({0, 1, 1});
  EXPECT_TRUE(validate_graph(overlapping, s.preds).empty());
  overlapping.edges.back().shared = 2;
  EXPECT_FALSE(validate_graph(overlapping, s.preds).empty());

  MapperGraph unsorted = s.graphs[0];
  unsorted.nodes[0].members = {1, 0};
  EXPECT_FALSE(validate_graph(unsorted, s.preds).empty());

  MapperGraph out_of_range = s.graphs[0];
  out_of_range.nodes[1].members = {2, 7};
  EXPECT_FALSE(validate_graph(out_of_range, s.preds).empty());

  MapperGraph bad_lens = s.graphs[0];
  bad_lens.nodes[0].lens_value = 0.5;
  EXPECT_FALSE(validate_graph(bad_lens, s.preds).empty());
}

TEST(ValidateGraph, RandomMapperGraphsPassExhaustiveRecheck) {
  testing::TestRng rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 5 + rng.below(60);
    AttributionSet a{"m", testing::random_matrix(rng, n, 1 + rng.below(4))};
    PredictionVector lens{testing::random_lens(rng, n)};
    const CoverParams p{1 + static_cast<int>(rng.below(8)), rng.uniform(0.1, 0.6),
                        rng.uniform(0.0, 0.5), 0};
    const MapperGraph g = build_mapper(a, lens.probs, p);
    EXPECT_TRUE(validate_graph(g, lens).empty()) << "trial " << trial;
  }
}

}  // namespace
}  // namespace mapperscope
