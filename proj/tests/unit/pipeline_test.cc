#include <gtest/gtest.h>

#include <algorithm>
#include <limits>
#include <set>

#include "fixtures.h"
#include "mapperscope/pipeline.h"
#include "mapperscope/session.h"

namespace mapperscope {
namespace {

std::set<std::string> stages(const std::vector<StageTiming>& timings) {
  std::set<std::string> out;
  for (const auto& t : timings) {
    EXPECT_GE(t.seconds, 0.0);
    out.insert(t.stage);
  }
  return out;
}

TEST(Pipeline, T1EndToEnd) {
  const Session s = testing::t1_session();
  ASSERT_EQ(s.graphs.size(), 2u);
  ASSERT_EQ(s.diagrams.size(), 2u);
  ASSERT_EQ(s.distances.rows(), 2u);
  ASSERT_EQ(s.distances.cols(), 2u);
  EXPECT_EQ(s.distances(0, 0), 0.0);
  EXPECT_EQ(s.distances(1, 1), 0.0);
  EXPECT_EQ(s.distances(0, 1), s.distances(1, 0));
  EXPECT_TRUE(validate_session(s).empty());

  const MapperGraph& a = s.graphs[0];
  ASSERT_EQ(a.nodes.size(), 2u);
  EXPECT_EQ(a.nodes[0].members, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(a.nodes[1].members, (std::vector<std::size_t>{2, 3}));
  EXPECT_TRUE(a.edges.empty());
  EXPECT_TRUE(s.diagrams[0].points.empty());
  ASSERT_EQ(s.projections.size(), 1u);
  EXPECT_EQ(s.projections[0].kind, "pca");
}

TEST(Pipeline, OverridesSkipSelectionAndAreRecorded) {
  const Session s = testing::t1_session();
  EXPECT_EQ(s.provenance.seed, 7u);
  ASSERT_EQ(s.provenance.methods.size(), 2u);
  for (std::size_t i = 0; i < 2; ++i) {
    const auto& mp = s.provenance.methods[i];
    EXPECT_EQ(mp.method, s.methods[i].method_name);
    EXPECT_FALSE(mp.delta_estimated);
    EXPECT_FALSE(mp.resolution_searched);
    EXPECT_FALSE(mp.stability);
    EXPECT_EQ(s.graphs[i].params, (CoverParams{2, 0.4, 0.3, 7}));
    const auto st = stages(mp.timings);
    EXPECT_TRUE(st.count("mapper:" + mp.method));
    EXPECT_TRUE(st.count("persistence:" + mp.method));
    EXPECT_FALSE(st.count("delta:" + mp.method));
  }
  EXPECT_TRUE(stages(s.provenance.timings).count("distances"));
}

TEST(Pipeline, AutoSelectionRecordsSearch) {
  BuildOptions o;
  o.grid_low = 2;
  o.grid_high = 4;
  o.bootstrap = 4;
  o.subsamples = 6;
  o.seed = 3;
  std::vector<std::string> progress;
  const Session s = build_session(testing::t1_inputs(), o,
                                  [&](std::string_view m) { progress.emplace_back(m); });
  EXPECT_FALSE(progress.empty());
  for (const auto& mp : s.provenance.methods) {
    EXPECT_TRUE(mp.delta_estimated);
    EXPECT_TRUE(mp.resolution_searched);
    ASSERT_TRUE(mp.stability);
    EXPECT_EQ(mp.stability->grid, (std::vector<int>{2, 3, 4}));
    EXPECT_EQ(mp.stability->scores.size(), 3u);
    EXPECT_EQ(mp.stability->seed, 3u);
    EXPECT_EQ(mp.stability->subsample_count, 6);
    const auto st = stages(mp.timings);
    EXPECT_TRUE(st.count("delta:" + mp.method));
    EXPECT_TRUE(st.count("bootstrap:" + mp.method));
  }
}

TEST(Pipeline, RepeatsExactlyUnderFixedSeed) {
  BuildOptions o;
  o.grid_low = 2;
  o.grid_high = 5;
  o.bootstrap = 5;
  o.seed = 99;
  auto strip = [](Session s) {
    for (auto& mp : s.provenance.methods) mp.timings.clear();
    s.provenance.timings.clear();
    return s;
  };
  EXPECT_EQ(strip(build_session(testing::t1_inputs(), o)),
            strip(build_session(testing::t1_inputs(), o)));
}

TEST(Pipeline, ManifestErrorsCarryLoadStage) {
  const auto dir = testing::scratch_dir("pipe_load");
  auto m = testing::write_t1_manifest(dir);
  m.attributions.pop_back();
  try {
    build_session(m);
    FAIL();
  } catch (const PipelineError& e) {
    EXPECT_EQ(e.stage(), "load");
    EXPECT_EQ(e.code(), ErrorCode::kInvalidArgument);
    EXPECT_STREQ(e.what(), "load: at least two methods required");
  }
}

TEST(Pipeline, ManifestBuildMatchesInMemoryBuild) {
  const auto dir = testing::scratch_dir("pipe_manifest");
  auto m = testing::write_t1_manifest(dir);
  m.options = testing::t1_options();
  Session from_files = build_session(m);
  Session in_memory = testing::t1_session();
  EXPECT_TRUE(stages(from_files.provenance.timings).count("load"));
  for (Session* s : {&from_files, &in_memory}) {
    for (auto& mp : s->provenance.methods) mp.timings.clear();
    s->provenance.timings.clear();
  }
  EXPECT_EQ(from_files, in_memory);
}

TEST(Pipeline, StageNamedOnMapperFailure) {
  SessionInputs in = testing::t1_inputs();
  in.preds.probs[0] = std::numeric_limits<double>::quiet_NaN();  // rejected by the cover
  try {
    build_session(std::move(in), testing::t1_options());
    FAIL();
  } catch (const PipelineError& e) {
    EXPECT_EQ(e.stage(), "mapper:A");
  }
}

}  // namespace
}  // namespace mapperscope
