#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "mapperscope/ingestion.h"
#include "mapperscope/topology.h"
#include "mapperscope/types.h"

namespace mapperscope::testing {

// Small deterministic generator for test data (splitmix64). Kept separate
// from the library RNG so fixtures do not move when the library's draws do.
class TestRng {
 public:
  explicit TestRng(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  double uniform();                             // [0, 1)
  double uniform(double lo, double hi);
  std::size_t below(std::size_t bound);         // [0, bound)
  double normal();                              // Box-Muller
  bool coin(double p) { return uniform() < p; }

 private:
  std::uint64_t state_;
};

// The four-row fixture: p0=(0,0) p1=(0.1,0) p2=(0.9,1) p3=(1,1).
FeatureTable t1_table();
PredictionVector t1_preds();
LabelVector t1_labels();
AttributionSet t1_method_a();  // equal to the feature matrix
AttributionSet t1_method_b();  // a second, different explanation
SessionInputs t1_inputs();

// T1 built with resolution 2, gain 0.4, delta 0.3 and seed 7.
BuildOptions t1_options();
Session t1_session();

// Writes the T1 CSVs into `dir` and returns a two-method manifest over them.
SessionManifest write_t1_manifest(const std::filesystem::path& dir);

// Fresh empty directory under the system temp dir.
std::filesystem::path scratch_dir(const std::string& name);

Matrix random_matrix(TestRng& rng, std::size_t rows, std::size_t cols,
                     double lo = 0.0, double hi = 1.0);
std::vector<double> random_lens(TestRng& rng, std::size_t n);

// Simple graph with uniform heights. With `levels` > 0 the heights are
// quantised to that many values so ties occur.
FilteredGraph random_filtered_graph(TestRng& rng, std::size_t vertices,
                                    double edge_probability, int levels = 0);

// Random diagram of `count` points over dims 0/1 and all subtypes, values in
// [0, 1). Ext1 points are stored (upper, lower).
PersistenceDiagram random_diagram(TestRng& rng, std::size_t count);

// Two-regime attribution cloud over three features: the regime feature's
// attribution bumps up in the low-value regime across the middle of the
// prediction range and is flat in the other regime, so the two branches
// split and rejoin. With `two_regimes` false only the flat regime exists.
struct LensedCloud {
  Matrix points;
  std::vector<double> lens;
};
LensedCloud loop_scenario(std::uint64_t seed, bool two_regimes, std::size_t n = 400);

// Two Gaussian blobs at (+-3, 0) with sd 0.5; lens = logistic(x).
LensedCloud two_blobs(std::uint64_t seed, std::size_t n = 200);

// Points evenly spaced on the unit circle, lens = (y + 1) / 2.
LensedCloud circle(std::size_t n = 200);

}  // namespace mapperscope::testing
