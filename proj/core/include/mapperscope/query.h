#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mapperscope/types.h"

namespace mapperscope {

enum class CompareOp { kLt, kLe, kGt, kGe, kEq, kNe };

std::string_view compare_op_text(CompareOp op);

// Expression tree of the filter language:
//
//   expr := or
//   or   := and (OR and)*
//   and  := not (AND not)*
//   not  := [NOT] cmp
//   cmp  := column op number | '(' expr ')'
//
// Keywords are case-insensitive; columns may be double-quoted to include
// spaces or keyword spellings. Explicit parentheses are kept as kParen nodes
// so that printing and re-parsing is lossless.
struct FilterExpr {
  enum class Kind { kComparison, kAnd, kOr, kNot, kParen };

  Kind kind = Kind::kComparison;
  std::string column;
  CompareOp op = CompareOp::kEq;
  double value = 0.0;
  std::vector<FilterExpr> children;

  static FilterExpr comparison(std::string column, CompareOp op, double value);
  static FilterExpr conjunction(FilterExpr lhs, FilterExpr rhs);
  static FilterExpr disjunction(FilterExpr lhs, FilterExpr rhs);
  static FilterExpr negation(FilterExpr operand);
  static FilterExpr parenthesized(FilterExpr inner);

  bool operator==(const FilterExpr&) const = default;
};

// Throws QuerySyntaxError.
FilterExpr parse_filter(std::string_view text);

// As above, and every column must be one of `columns` or "pred" / "label";
// throws Error(kUnknownColumn) otherwise.
FilterExpr parse_filter(std::string_view text,
                        std::span<const std::string> columns);

// Canonical text; parse_filter(to_string(e)) == e for parser output.
std::string to_string(const FilterExpr& expr);

// Fully parenthesised S-expression form, e.g. (AND (> age 50) (>= glucose 120)).
std::string to_sexpr(const FilterExpr& expr);

// Row-wise evaluation. Columns resolve to dataset features first, then the
// pseudo-columns "pred" and "label". Comparisons are exact on the stored
// doubles.
std::vector<std::size_t> eval_filter(const FilterExpr& expr,
                                     const FeatureTable& table,
                                     const PredictionVector& preds,
                                     const LabelVector& labels);

// Parses, resolves and evaluates; the Selection carries the query text.
Selection run_query(std::string_view text, const FeatureTable& table,
                    const PredictionVector& preds, const LabelVector& labels);

}  // namespace mapperscope
