#include "mapperscope/pipeline.h"

#include <chrono>

#include "mapperscope/analytics.h"
#include "mapperscope/mapper.h"
#include "mapperscope/param_select.h"
#include "mapperscope/random.h"
#include "mapperscope/summarize.h"
#include "mapperscope/topology.h"

namespace mapperscope {
namespace {

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

template <typename F>
auto run_stage(const std::string& stage, std::vector<StageTiming>& timings, F&& body) {
  Stopwatch watch;
  try {
    if constexpr (std::is_void_v<decltype(body())>) {
      body();
      timings.push_back({stage, watch.seconds()});
    } else {
      auto result = body();
      timings.push_back({stage, watch.seconds()});
      return result;
    }
  } catch (const PipelineError&) {
    throw;
  } catch (const Error& e) {
    throw PipelineError(stage, e);
  }
}

void report(const ProgressSink& progress, const std::string& line) {
  if (progress) progress(line);
}

}  // namespace

Session build_session(SessionInputs inputs, const BuildOptions& options,
                      const ProgressSink& progress) {
  Session s;
  s.table = std::move(inputs.table);
  s.preds = std::move(inputs.preds);
  s.labels = std::move(inputs.labels);
  s.methods = std::move(inputs.methods);
  s.provenance.seed = options.seed;
  s.provenance.generator = std::string(kGeneratorName);

  const std::span<const double> lens = s.preds.probs;
  for (const auto& method : s.methods) {
    const std::string& name = method.method_name;
    MethodProvenance mp;
    mp.method = name;
    mp.summarized = options.summarize;
    mp.summarize_fixpoint = options.summarize && options.summarize_fixpoint;

    double delta = 0.0;
    if (options.delta) {
      delta = *options.delta;
    } else {
      const auto est = run_stage("delta:" + name, mp.timings, [&] {
        return estimate_delta(method.attributions, options.subsamples, options.seed);
      });
      delta = est.delta;
      mp.delta_estimated = true;
      report(progress, name + ": delta = " + std::to_string(delta) +
                           (est.degenerate ? " (degenerate cloud)" : ""));
    }

    int resolution = 0;
    if (options.resolution) {
      resolution = *options.resolution;
    } else {
      const auto grid = resolution_grid(options.grid_low, options.grid_high);
      StabilityReport rep = run_stage("bootstrap:" + name, mp.timings, [&] {
        return select_resolution(method.attributions, lens, grid, options.gain, delta,
                                 options.bootstrap, options.seed);
      });
      rep.subsample_count = mp.delta_estimated ? options.subsamples : 0;
      resolution = rep.chosen;
      mp.resolution_searched = true;
      mp.stability = std::move(rep);
      report(progress, name + ": resolution = " + std::to_string(resolution));
    }

    const CoverParams params{resolution, options.gain, delta, options.seed};
    MapperGraph graph = run_stage("mapper:" + name, mp.timings, [&] {
      return build_mapper(method, lens, params);
    });
    mp.raw_node_count = graph.nodes.size();
    if (options.summarize) {
      graph = run_stage("summarize:" + name, mp.timings, [&] {
        return summarize_graph(graph, lens, options.similarity_threshold,
                               options.summarize_fixpoint);
      });
    }
    PersistenceDiagram diagram = run_stage("persistence:" + name, mp.timings, [&] {
      return mapper_diagram(graph, lens);
    });
    report(progress, name + ": " + std::to_string(graph.nodes.size()) + " nodes, " +
                         std::to_string(graph.edges.size()) + " edges, " +
                         std::to_string(diagram.points.size()) + " diagram points");
    s.graphs.push_back(std::move(graph));
    s.diagrams.push_back(std::move(diagram));
    s.provenance.methods.push_back(std::move(mp));
  }

  s.distances = run_stage("distances", s.provenance.timings,
                          [&] { return distance_matrix(s.diagrams); });
  if (s.table.d() >= 2) {
    Matrix coords = run_stage("pca", s.provenance.timings, [&] { return pca_project(s.table); });
    s.projections.push_back({"pca", std::move(coords)});
  }
  for (auto& p : inputs.projections) s.projections.push_back(std::move(p));
  return s;
}

Session build_session(const SessionManifest& manifest, const ProgressSink& progress) {
  std::vector<StageTiming> load_timing;
  SessionInputs inputs = run_stage("load", load_timing, [&] {
    check_manifest(manifest);
    return load_session_inputs(manifest);
  });
  Session s = build_session(std::move(inputs), manifest.options, progress);
  s.provenance.timings.insert(s.provenance.timings.begin(), load_timing.begin(),
                              load_timing.end());
  return s;
}

}  // namespace mapperscope
