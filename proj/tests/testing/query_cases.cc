#include "query_cases.h"

#include <algorithm>
#include <iterator>

#include "mapperscope/query.h"

namespace mapperscope::testing {
namespace {

// Hand-derived from the grammar: OR < AND < NOT < comparison, left
// associative, parentheses kept as PAREN nodes.
const GoldenQuery kGolden[] = {
    {"age > 50 AND glucose >= 120", "(AND (> age 50) (>= glucose 120))"},
    {"pred > 0.5 OR (label = 1 AND NOT f0 < 0)",
     "(OR (> pred 0.5) (PAREN (AND (= label 1) (NOT (< f0 0)))))"},
    {"a < 1", "(< a 1)"},
    {"a <= -2.5", "(<= a -2.5)"},
    {"a != 3", "(!= a 3)"},
    {"a == 3", "(= a 3)"},
    {"a = +4", "(= a 4)"},
    {"a>1 and b<2 or c>=3", "(OR (AND (> a 1) (< b 2)) (>= c 3))"},
    {"a>1 or b<2 and c>=3", "(OR (> a 1) (AND (< b 2) (>= c 3)))"},
    {"a > 1 OR b > 2 OR c > 3", "(OR (OR (> a 1) (> b 2)) (> c 3))"},
    {"a > 1 AND b > 2 AND c > 3", "(AND (AND (> a 1) (> b 2)) (> c 3))"},
    {"NOT a > 1", "(NOT (> a 1))"},
    {"not a > 1 and b > 2", "(AND (NOT (> a 1)) (> b 2))"},
    {"NOT (a > 1 OR b > 2)", "(NOT (PAREN (OR (> a 1) (> b 2))))"},
    {"((a > 1))", "(PAREN (PAREN (> a 1)))"},
    {"\"blood pressure\" > 80", "(> \"blood pressure\" 80)"},
    {"\"and\" = 1", "(= \"and\" 1)"},
    {"x.y >= 1e3", "(>= x.y 1000)"},
    {"_v < .5", "(< _v 0.5)"},
    {"a>-1", "(> a -1)"},
    {"A > 1 aNd B > 2", "(AND (> A 1) (> B 2))"},
    {"a > 1 OR NOT b > 2 AND c > 3", "(OR (> a 1) (AND (NOT (> b 2)) (> c 3)))"},
    {"(a > 1 OR b > 2) AND c > 3", "(AND (PAREN (OR (> a 1) (> b 2))) (> c 3))"},
    {"  a   >   1  ", "(> a 1)"},
    {"a > 1 AND (b > 2 OR (c > 3 AND d > 4))",
     "(AND (> a 1) (PAREN (OR (> b 2) (PAREN (AND (> c 3) (> d 4))))))"},
    {"f0 > 100", "(> f0 100)"},
    {"label = 0 OR label = 1", "(OR (= label 0) (= label 1))"},
    {"pred >= 0.25 AND pred <= 0.75", "(AND (>= pred 0.25) (<= pred 0.75))"},
    {"a < 1.5e-3", "(< a 0.0015)"},
    {"NOT (NOT (a > 1))", "(NOT (PAREN (NOT (PAREN (> a 1)))))"},
};

}  // namespace

std::span<const GoldenQuery> golden_queries() { return kGolden; }

// Random query text drawn from the grammar.
std::string random_query(TestRng& rng, int depth) {
  static const char* kOps[] = {"<", "<=", ">", ">=", "=", "!="};
  static const char* kCols[] = {"c0", "c1", "c2", "pred", "label"};
  const std::size_t pick = depth <= 0 ? 0 : rng.below(5);
  switch (pick) {
    case 0:
    case 1: {
      const double v = static_cast<double>(rng.below(5)) / 4.0;
      return std::string(kCols[rng.below(5)]) + " " + kOps[rng.below(6)] + " " + std::to_string(v);
    }
    case 2: return random_query(rng, depth - 1) + " AND " + random_query(rng, depth - 1);
    case 3: return random_query(rng, depth - 1) + " or " + random_query(rng, depth - 1);
    default:
      return (rng.coin(0.5) ? "NOT (" : "(") + random_query(rng, depth - 1) + ")";
  }
}

std::vector<std::size_t> set_and(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  std::vector<std::size_t> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<std::size_t> set_or(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  std::vector<std::size_t> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<std::size_t> complement(const std::vector<std::size_t>& a, std::size_t n) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::binary_search(a.begin(), a.end(), i)) out.push_back(i);
  }
  return out;
}

RandomTable random_table(TestRng& rng) {
  RandomTable r;
  const std::size_t n = 1 + rng.below(30);
  r.table.column_names = {"c0", "c1", "c2"};
  r.table.values = Matrix(n, 3);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < 3; ++c) r.table.values(i, c) = static_cast<double>(rng.below(5)) / 4.0;
    r.preds.probs.push_back(static_cast<double>(rng.below(5)) / 4.0);
    r.labels.labels.push_back(static_cast<int>(rng.below(2)));
  }
  return r;
}

bool laws_hold(const FilterExpr& e, const RandomTable& t) {
  using Kind = FilterExpr::Kind;
  const auto got = eval_filter(e, t.table, t.preds, t.labels);
  const std::size_t n = t.table.n();
  auto child = [&](std::size_t i) { return eval_filter(e.children[i], t.table, t.preds, t.labels); };
  bool ok = std::is_sorted(got.begin(), got.end()) && got.size() <= n;
  switch (e.kind) {
    case Kind::kAnd: ok = ok && got == set_and(child(0), child(1)); break;
    case Kind::kOr: ok = ok && got == set_or(child(0), child(1)); break;
    case Kind::kNot: ok = ok && got == complement(child(0), n); break;
    case Kind::kParen: ok = ok && got == child(0); break;
    case Kind::kComparison: break;
  }
  for (const auto& c : e.children) ok = ok && laws_hold(c, t);
  return ok;
}

bool de_morgan_holds(const std::string& a, const std::string& b, const RandomTable& t) {
  const auto lhs = run_query("NOT ((" + a + ") AND (" + b + "))", t.table, t.preds, t.labels);
  const auto rhs = run_query("NOT (" + a + ") OR NOT (" + b + ")", t.table, t.preds, t.labels);
  return lhs.indices == rhs.indices;
}

}  // namespace mapperscope::testing
