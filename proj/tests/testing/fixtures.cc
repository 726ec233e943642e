#include "fixtures.h"

#include <cmath>
#include <numbers>

#include "mapperscope/csv.h"
#include "mapperscope/pipeline.h"

namespace mapperscope::testing {

std::uint64_t TestRng::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double TestRng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double TestRng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

std::size_t TestRng::below(std::size_t bound) {
  return static_cast<std::size_t>(uniform() * static_cast<double>(bound));
}

double TestRng::normal() {
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

FeatureTable t1_table() {
  FeatureTable t;
  t.column_names = {"f0", "f1"};
  t.values = Matrix::from_rows({{0.0, 0.0}, {0.1, 0.0}, {0.9, 1.0}, {1.0, 1.0}});
  return t;
}

PredictionVector t1_preds() { return {{0.05, 0.10, 0.90, 0.95}}; }

LabelVector t1_labels() { return {{0, 0, 1, 1}}; }

AttributionSet t1_method_a() { return {"A", t1_table().values}; }

AttributionSet t1_method_b() {
  return {"B", Matrix::from_rows({{0.0, 0.5}, {-0.1, 0.0}, {0.3, -1.0}, {1.0, 0.2}})};
}

SessionInputs t1_inputs() {
  SessionInputs in;
  in.table = t1_table();
  in.preds = t1_preds();
  in.labels = t1_labels();
  in.methods = {t1_method_a(), t1_method_b()};
  return in;
}

BuildOptions t1_options() {
  BuildOptions o;
  o.resolution = 2;
  o.gain = 0.4;
  o.delta = 0.3;
  o.seed = 7;
  return o;
}

Session t1_session() { return build_session(t1_inputs(), t1_options()); }

std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("mapperscope_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

SessionManifest write_t1_manifest(const std::filesystem::path& dir) {
  const auto in = t1_inputs();
  write_csv(dir / "data.csv", in.table.column_names, in.table.values);
  Matrix preds(4, 1), labels(4, 1);
  for (std::size_t i = 0; i < 4; ++i) {
    preds(i, 0) = in.preds.probs[i];
    labels(i, 0) = in.labels.labels[i];
  }
  write_csv(dir / "pred.csv", {"pred"}, preds);
  write_csv(dir / "labels.csv", {"label"}, labels);
  write_csv(dir / "A.csv", in.table.column_names, in.methods[0].attributions);
  write_csv(dir / "B.csv", in.table.column_names, in.methods[1].attributions);
  SessionManifest m;
  m.data = dir / "data.csv";
  m.preds = dir / "pred.csv";
  m.labels = dir / "labels.csv";
  m.attributions = {{"A", dir / "A.csv"}, {"B", dir / "B.csv"}};
  return m;
}

Matrix random_matrix(TestRng& rng, std::size_t rows, std::size_t cols, double lo,
                     double hi) {
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rng.uniform(lo, hi);
  }
  return m;
}

std::vector<double> random_lens(TestRng& rng, std::size_t n) {
  std::vector<double> lens(n);
  for (auto& v : lens) v = rng.uniform();
  return lens;
}

FilteredGraph random_filtered_graph(TestRng& rng, std::size_t vertices,
                                    double edge_probability, int levels) {
  FilteredGraph g;
  g.heights.resize(vertices);
  for (auto& h : g.heights) {
    h = levels > 0 ? static_cast<double>(rng.below(levels)) / levels : rng.uniform();
  }
  for (std::size_t u = 0; u < vertices; ++u) {
    for (std::size_t v = u + 1; v < vertices; ++v) {
      if (rng.coin(edge_probability)) g.edges.emplace_back(u, v);
    }
  }
  return g;
}

PersistenceDiagram random_diagram(TestRng& rng, std::size_t count) {
  PersistenceDiagram d;
  for (std::size_t i = 0; i < count; ++i) {
    double a = rng.uniform(), b = rng.uniform();
    if (a > b) std::swap(a, b);
    PersistencePoint p;
    p.dim = static_cast<int>(rng.below(2));
    const std::size_t kind = rng.below(3);
    p.kind = kind == 0 ? PairKind::kOrdinary : kind == 1 ? PairKind::kExtended : PairKind::kRelative;
    if (p.dim == 1 && p.kind == PairKind::kExtended) {
      p.birth = b;
      p.death = a;
    } else {
      p.birth = a;
      p.death = b;
    }
    d.points.push_back(p);
  }
  return d;
}

LensedCloud loop_scenario(std::uint64_t seed, bool two_regimes, std::size_t n) {
  TestRng rng(seed);
  LensedCloud c;
  c.points = Matrix(n, 3);
  c.lens.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    // Stratified lens: the estimated delta tracks sampling gaps, and uniform
    // draws leave gaps wider than it on a 1-d curve.
    const double p = 0.02 + 0.96 * (static_cast<double>(i) + rng.uniform(0.25, 0.75)) /
                                static_cast<double>(n);
    // Regime feature: a bump over the middle of the prediction range in the
    // low-value regime, flat otherwise; both coincide near the extremes.
    double bump = 0.0;
    if (two_regimes && i % 2 == 0 && p > 0.15 && p < 0.85) {
      const double s = std::sin(std::numbers::pi * (p - 0.15) / 0.7);
      bump = s * s;
    }
    c.points(i, 0) = bump + 0.002 * rng.normal();
    c.points(i, 1) = 2.0 * p + 0.002 * rng.normal();
    c.points(i, 2) = 0.002 * rng.normal();
    c.lens[i] = p;
  }
  return c;
}

LensedCloud two_blobs(std::uint64_t seed, std::size_t n) {
  TestRng rng(seed);
  LensedCloud c;
  c.points = Matrix(n, 2);
  c.lens.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double cx = i % 2 == 0 ? -3.0 : 3.0;
    c.points(i, 0) = cx + 0.5 * rng.normal();
    c.points(i, 1) = 0.5 * rng.normal();
    c.lens[i] = 1.0 / (1.0 + std::exp(-c.points(i, 0)));
  }
  return c;
}

LensedCloud circle(std::size_t n) {
  LensedCloud c;
  c.points = Matrix(n, 2);
  c.lens.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n);
    c.points(i, 0) = std::cos(t);
    c.points(i, 1) = std::sin(t);
    c.lens[i] = (std::sin(t) + 1.0) / 2.0;
  }
  return c;
}

}  // namespace mapperscope::testing
