#include "cli.h"

#include <CLI11.hpp>
#include <charconv>
#include <atomic>
#include <csignal>
#include <iostream>
#include <numeric>
#include <optional>
#include <pthread.h>
#include <thread>

#include "mapperscope/analytics.h"
#include "mapperscope/artifact.h"
#include "mapperscope/error.h"
#include "mapperscope/pipeline.h"
#include "mapperscope/query.h"
#include "mapperscope/server.h"

namespace mapperscope::cli {
namespace {

std::string fmt(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

// "name=path" -> {name, path}
std::pair<std::string, std::string> split_assignment(const std::string& text,
                                                     const std::string& flag) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0 || eq + 1 == text.size()) {
    throw Error(ErrorCode::kInvalidArgument, flag + " expects name=path, got '" + text + "'");
  }
  return {text.substr(0, eq), text.substr(eq + 1)};
}

template <typename T>
T parse_number(const std::string& text, const std::string& flag) {
  T value{};
  const auto* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, value);
  if (res.ec != std::errc() || res.ptr != end) {
    throw Error(ErrorCode::kInvalidArgument, flag + ": '" + text + "' is not a number");
  }
  return value;
}

struct BuildArgs {
  std::string data, pred, labels, out;
  std::vector<std::string> attrs, projections;
  double gain = kDefaultGain;
  std::string resolution = "auto", delta = "auto", grid;
  int bootstrap = kDefaultBootstrap;
  int subsamples = kDefaultSubsamples;
  std::uint64_t seed = 0;
  bool no_summarize = false;
  bool fixpoint = false;
};

SessionManifest manifest_from(const BuildArgs& a) {
  SessionManifest m;
  m.data = a.data;
  m.preds = a.pred;
  m.labels = a.labels;
  for (const auto& s : a.attrs) {
    auto [name, path] = split_assignment(s, "--attr");
    m.attributions.push_back({name, path});
  }
  for (const auto& s : a.projections) {
    auto [kind, path] = split_assignment(s, "--projection");
    m.projections.push_back({kind, path});
  }
  BuildOptions& o = m.options;
  o.gain = a.gain;
  if (a.resolution != "auto") o.resolution = parse_number<int>(a.resolution, "--resolution");
  if (a.delta != "auto") o.delta = parse_number<double>(a.delta, "--delta");
  if (!a.grid.empty()) {
    const auto colon = a.grid.find(':');
    if (colon == std::string::npos) {
      throw Error(ErrorCode::kInvalidArgument, "--grid expects LO:HI, got '" + a.grid + "'");
    }
    o.grid_low = parse_number<int>(a.grid.substr(0, colon), "--grid");
    o.grid_high = parse_number<int>(a.grid.substr(colon + 1), "--grid");
  }
  o.bootstrap = a.bootstrap;
  o.subsamples = a.subsamples;
  o.seed = a.seed;
  o.summarize = !a.no_summarize;
  o.summarize_fixpoint = a.fixpoint;
  return m;
}

int cmd_build(const BuildArgs& a, std::ostream& out, std::ostream& err) {
  const SessionManifest manifest = manifest_from(a);
  const Session s = build_session(manifest, [&](std::string_view msg) { err << msg << '\n'; });
  save_session(s, a.out);
  out << "wrote " << a.out << " (" << s.methods.size() << " methods, " << s.table.n()
      << " rows)\n";
  return kOk;
}

int cmd_distances(const Session& s, std::ostream& out) {
  out << "method";
  for (const auto& g : s.graphs) out << ',' << g.method_name;
  out << '\n';
  for (std::size_t i = 0; i < s.graphs.size(); ++i) {
    out << s.graphs[i].method_name;
    for (std::size_t j = 0; j < s.graphs.size(); ++j) out << ',' << fmt(s.distances(i, j));
    out << '\n';
  }
  return kOk;
}

int cmd_diagram(const Session& s, const std::string& method, std::ostream& out) {
  const auto idx = s.method_index(method);
  if (!idx) throw Error(ErrorCode::kUnknownMethod, "unknown method '" + method + "'");
  out << "dim,subtype,birth,death\n";
  for (const auto& p : s.diagrams[*idx].points) {
    out << p.dim << ',' << pair_kind_name(p.kind) << ',' << fmt(p.birth) << ','
        << fmt(p.death) << '\n';
  }
  return kOk;
}

int cmd_query(const Session& s, const std::string& where, std::ostream& out) {
  const Selection sel = run_query(where, s.table, s.preds, s.labels);
  out << sel.indices.size() << (sel.indices.size() == 1 ? " row\n" : " rows\n");
  out << "indices:";
  for (std::size_t i : sel.indices) out << ' ' << i;
  out << '\n';

  Matrix table(s.table.n(), s.table.d() + 2);
  std::vector<std::string> names = s.table.column_names;
  names.push_back("pred");
  names.push_back("label");
  for (std::size_t r = 0; r < s.table.n(); ++r) {
    for (std::size_t c = 0; c < s.table.d(); ++c) table(r, c) = s.table.values(r, c);
    table(r, s.table.d()) = s.preds.probs[r];
    table(r, s.table.d() + 1) = s.labels.labels[r];
  }
  const TableAverages avg = table_averages(table, sel.indices);
  out << "column,selection_mean,global_mean\n";
  for (std::size_t c = 0; c < names.size(); ++c) {
    out << names[c] << ',' << (avg.selection ? fmt((*avg.selection)[c]) : "NA") << ','
        << fmt(avg.global[c]) << '\n';
  }
  return kOk;
}

int cmd_serve(const std::string& artifact, const std::string& host, int port,
              std::ostream& out) {
  auto session = std::make_shared<const Session>(load_session(artifact));
  HttpService service(session);
  const int bound = service.bind(host, port);
  out << "serving " << artifact << " on http://" << host << ':' << bound << '\n' << std::flush;

  // Signals are taken synchronously on this thread while a worker serves;
  // SIGUSR1 wakes us if the listener ends on its own.
  sigset_t signals, previous;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  sigaddset(&signals, SIGUSR1);
  pthread_sigmask(SIG_BLOCK, &signals, &previous);
  const pthread_t waiter = pthread_self();
  std::atomic<bool> stopping = false;
  std::thread listener([&] {
    service.listen();
    if (!stopping) pthread_kill(waiter, SIGUSR1);
  });
  int received = 0;
  sigwait(&signals, &received);
  stopping = true;
  service.stop();
  listener.join();
  pthread_sigmask(SIG_SETMASK, &previous, nullptr);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Compare explanation methods through Mapper graphs and persistence", "mapperscope"};
  app.require_subcommand(1);

  BuildArgs b;
  auto* build = app.add_subcommand("build", "run the pipeline and write a session artifact");
  build->add_option("--data", b.data, "feature table CSV")->required();
  build->add_option("--pred", b.pred, "prediction CSV (column pred)")->required();
  build->add_option("--labels", b.labels, "label CSV (column label)")->required();
  build->add_option("--attr", b.attrs, "attribution CSV as name=path (repeatable)")->required();
  build->add_option("--projection", b.projections, "precomputed projection as kind=path");
  build->add_option("--out", b.out, "artifact path")->required();
  build->add_option("--gain", b.gain, "cover overlap")->capture_default_str();
  build->add_option("--resolution", b.resolution, "auto or an interval count")->capture_default_str();
  build->add_option("--delta", b.delta, "auto or a clustering radius")->capture_default_str();
  build->add_option("--grid", b.grid, "resolution search range LO:HI (default 5:40)");
  build->add_option("--bootstrap", b.bootstrap, "resamples per resolution")->capture_default_str();
  build->add_option("--subsamples", b.subsamples, "resamples for delta")->capture_default_str();
  build->add_option("--seed", b.seed, "root seed")->capture_default_str();
  build->add_flag("--no-summarize", b.no_summarize, "keep the raw Mapper graph");
  build->add_flag("--summarize-fixpoint", b.fixpoint, "merge until no pair qualifies");

  std::string artifact, method, where, host = "127.0.0.1";
  int port = 8080;
  auto* serve = app.add_subcommand("serve", "serve a session artifact over HTTP");
  serve->add_option("artifact", artifact)->required();
  serve->add_option("--port", port)->capture_default_str();
  serve->add_option("--host", host)->capture_default_str();

  auto* distances = app.add_subcommand("distances", "print the bottleneck distance matrix");
  distances->add_option("artifact", artifact)->required();

  auto* diagram = app.add_subcommand("diagram", "print a persistence diagram as CSV");
  diagram->add_option("artifact", artifact)->required();
  diagram->add_option("--method", method)->required();

  auto* query = app.add_subcommand("query", "evaluate a filter expression");
  query->add_option("artifact", artifact)->required();
  query->add_option("--where", where)->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }

  try {
    if (build->parsed()) return cmd_build(b, out, err);
    if (serve->parsed()) return cmd_serve(artifact, host, port, out);
    const Session s = load_session(artifact);
    if (distances->parsed()) return cmd_distances(s, out);
    if (diagram->parsed()) return cmd_diagram(s, method, out);
    return cmd_query(s, where, out);
  } catch (const PipelineError& e) {
    err << "error [" << error_code_name(e.code()) << "] " << e.what() << '\n';
    return e.stage() == "load" ? kInputError : kPipelineError;
  } catch (const Error& e) {
    err << "error [" << error_code_name(e.code()) << "]: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kPipelineError;
  }
}

}  // namespace mapperscope::cli
