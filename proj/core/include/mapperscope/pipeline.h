#pragma once

#include <functional>
#include <string>
#include <string_view>

#include "mapperscope/error.h"
#include "mapperscope/ingestion.h"
#include "mapperscope/types.h"

namespace mapperscope {

// An upstream Error annotated with the pipeline stage that raised it
// ("load", "delta:<method>", "resolution:<method>", ...).
class PipelineError : public Error {
 public:
  PipelineError(std::string stage, const Error& cause)
      : Error(cause.code(), stage + ": " + cause.what(), cause.where()),
        stage_(std::move(stage)) {}

  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

// Progress messages, one line each; may be empty.
using ProgressSink = std::function<void(std::string_view)>;

// Per method: estimate delta, search resolution, build Mapper, summarise,
// filtration and extended persistence; then the distance matrix and PCA.
// Stage wall-clock times land in the provenance.
Session build_session(SessionInputs inputs, const BuildOptions& options,
                      const ProgressSink& progress = {});

// check_manifest + load_session_inputs + build_session. Loading faults are
// reported with stage "load".
Session build_session(const SessionManifest& manifest,
                      const ProgressSink& progress = {});

}  // namespace mapperscope
