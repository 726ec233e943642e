#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "mapperscope/param_select.h"
#include "mapperscope/summarize.h"
#include "mapperscope/types.h"

namespace mapperscope {

struct AttributionEntry {
  std::string method;
  std::filesystem::path path;
};

struct ProjectionEntry {
  std::string kind;  // "tsne", "umap" or "external"
  std::filesystem::path path;
};

// Pipeline knobs. Unset resolution/delta mean "select automatically".
struct BuildOptions {
  double gain = kDefaultGain;
  std::optional<int> resolution;
  std::optional<double> delta;
  int grid_low = kDefaultGridLow;
  int grid_high = kDefaultGridHigh;
  int bootstrap = kDefaultBootstrap;
  int subsamples = kDefaultSubsamples;
  std::uint64_t seed = 0;
  bool summarize = true;
  bool summarize_fixpoint = false;
  double similarity_threshold = kDefaultSimilarityThreshold;
};

struct SessionManifest {
  std::filesystem::path data;
  std::filesystem::path preds;
  std::filesystem::path labels;
  std::vector<AttributionEntry> attributions;
  std::vector<ProjectionEntry> projections;
  BuildOptions options;
};

// Throws Error(kInvalidArgument) when fewer than two attribution methods are
// given ("at least two methods required"), method names repeat, paths repeat,
// a projection kind is unknown, or an option is out of range.
void check_manifest(const SessionManifest& manifest);

struct SessionInputs {
  FeatureTable table;
  PredictionVector preds;
  LabelVector labels;
  std::vector<AttributionSet> methods;
  std::vector<Projection> projections;
};

// Reads and cross-validates every input file:
//   data         header = feature names, n >= 2 rows
//   preds        single column `pred`, values in [0, 1]
//   labels       single column `label`, values in {0, 1}
//   attributions header identical (same order) to the data header
//   projections  columns `x`,`y`, n rows
// Errors: kMissingFile, kParseError, kNonNumericCell, kShapeMismatch.
SessionInputs load_session_inputs(const SessionManifest& manifest);

}  // namespace mapperscope
