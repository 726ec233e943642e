#include "mapperscope/query.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <optional>

#include "mapperscope/analytics.h"
#include "mapperscope/error.h"

namespace mapperscope {

std::string_view compare_op_text(CompareOp op) {
  switch (op) {
    case CompareOp::kLt: return "<";
    case CompareOp::kLe: return "<=";
    case CompareOp::kGt: return ">";
    case CompareOp::kGe: return ">=";
    case CompareOp::kEq: return "=";
    case CompareOp::kNe: return "!=";
  }
  return "?";
}

FilterExpr FilterExpr::comparison(std::string column, CompareOp op, double value) {
  FilterExpr e;
  e.kind = Kind::kComparison;
  e.column = std::move(column);
  e.op = op;
  e.value = value;
  return e;
}

FilterExpr FilterExpr::conjunction(FilterExpr lhs, FilterExpr rhs) {
  FilterExpr e;
  e.kind = Kind::kAnd;
  e.children.push_back(std::move(lhs));
  e.children.push_back(std::move(rhs));
  return e;
}

FilterExpr FilterExpr::disjunction(FilterExpr lhs, FilterExpr rhs) {
  FilterExpr e;
  e.kind = Kind::kOr;
  e.children.push_back(std::move(lhs));
  e.children.push_back(std::move(rhs));
  return e;
}

FilterExpr FilterExpr::negation(FilterExpr operand) {
  FilterExpr e;
  e.kind = Kind::kNot;
  e.children.push_back(std::move(operand));
  return e;
}

FilterExpr FilterExpr::parenthesized(FilterExpr inner) {
  FilterExpr e;
  e.kind = Kind::kParen;
  e.children.push_back(std::move(inner));
  return e;
}

namespace {

enum class TokenKind { kIdent, kNumber, kOp, kLParen, kRParen, kAnd, kOr, kNot, kEnd };

struct Token {
  TokenKind kind = TokenKind::kEnd;
  std::size_t pos = 0;
  std::string text;
  double number = 0.0;
  CompareOp op = CompareOp::kEq;
};

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) ==
                  std::tolower(static_cast<unsigned char>(y));
         });
}

bool ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.';
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
    Token t;
    t.pos = pos_;
    if (pos_ >= text_.size()) return t;
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      t.kind = TokenKind::kLParen;
      return t;
    }
    if (c == ')') {
      ++pos_;
      t.kind = TokenKind::kRParen;
      return t;
    }
    if (c == '<' || c == '>' || c == '=' || c == '!') {
      t.kind = TokenKind::kOp;
      const bool eq_next = pos_ + 1 < text_.size() && text_[pos_ + 1] == '=';
      switch (c) {
        case '<': t.op = eq_next ? CompareOp::kLe : CompareOp::kLt; break;
        case '>': t.op = eq_next ? CompareOp::kGe : CompareOp::kGt; break;
        case '=': t.op = CompareOp::kEq; break;
        case '!':
          if (!eq_next) throw QuerySyntaxError(pos_, "'!='", "expected '!=' at position " + std::to_string(pos_));
          t.op = CompareOp::kNe;
          break;
      }
      pos_ += eq_next ? 2 : 1;  // "==" is accepted as "="
      return t;
    }
    if (c == '"') {
      const std::size_t close = text_.find('"', pos_ + 1);
      if (close == std::string_view::npos) {
        throw QuerySyntaxError(text_.size(), "'\"'",
                               "unterminated quoted column starting at position " +
                                   std::to_string(pos_));
      }
      t.kind = TokenKind::kIdent;
      t.text = std::string(text_.substr(pos_ + 1, close - pos_ - 1));
      pos_ = close + 1;
      return t;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == '-' || c == '+') {
      return number(t);
    }
    if (ident_start(c)) {
      std::size_t end = pos_;
      while (end < text_.size() && ident_char(text_[end])) ++end;
      const std::string_view word = text_.substr(pos_, end - pos_);
      pos_ = end;
      if (iequals(word, "and")) {
        t.kind = TokenKind::kAnd;
      } else if (iequals(word, "or")) {
        t.kind = TokenKind::kOr;
      } else if (iequals(word, "not")) {
        t.kind = TokenKind::kNot;
      } else {
        t.kind = TokenKind::kIdent;
        t.text = std::string(word);
      }
      return t;
    }
    throw QuerySyntaxError(pos_, "token",
                           "unexpected character '" + std::string(1, c) +
                               "' at position " + std::to_string(pos_));
  }

 private:
  Token number(Token t) {
    std::size_t begin = pos_;
    if (text_[begin] == '+') ++begin;  // from_chars rejects a leading '+'
    const char* first = text_.data() + begin;
    const char* last = text_.data() + text_.size();
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr == first) {
      throw QuerySyntaxError(pos_, "number", "malformed number at position " + std::to_string(pos_));
    }
    t.kind = TokenKind::kNumber;
    t.number = value;
    t.text = std::string(text_.substr(pos_, static_cast<std::size_t>(ptr - text_.data()) - pos_));
    pos_ = static_cast<std::size_t>(ptr - text_.data());
    return t;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

std::string describe(const Token& t) {
  switch (t.kind) {
    case TokenKind::kEnd: return "end of input";
    case TokenKind::kIdent: return "column '" + t.text + "'";
    case TokenKind::kNumber: return "number " + t.text;
    case TokenKind::kOp: return "operator";
    case TokenKind::kLParen: return "'('";
    case TokenKind::kRParen: return "')'";
    case TokenKind::kAnd: return "AND";
    case TokenKind::kOr: return "OR";
    case TokenKind::kNot: return "NOT";
  }
  return "token";
}

class Parser {
 public:
  explicit Parser(std::string_view text) : lexer_(text) { advance(); }

  FilterExpr parse() {
    FilterExpr e = parse_or();
    if (current_.kind != TokenKind::kEnd) fail("AND, OR or end of input");
    return e;
  }

 private:
  void advance() { current_ = lexer_.next(); }

  [[noreturn]] void fail(const std::string& expected) {
    throw QuerySyntaxError(current_.pos, expected,
                           "expected " + expected + " at position " +
                               std::to_string(current_.pos) + ", found " +
                               describe(current_));
  }

  FilterExpr parse_or() {
    FilterExpr lhs = parse_and();
    while (current_.kind == TokenKind::kOr) {
      advance();
      lhs = FilterExpr::disjunction(std::move(lhs), parse_and());
    }
    return lhs;
  }

  FilterExpr parse_and() {
    FilterExpr lhs = parse_not();
    while (current_.kind == TokenKind::kAnd) {
      advance();
      lhs = FilterExpr::conjunction(std::move(lhs), parse_not());
    }
    return lhs;
  }

  FilterExpr parse_not() {
    if (current_.kind == TokenKind::kNot) {
      advance();
      return FilterExpr::negation(parse_cmp());
    }
    return parse_cmp();
  }

  FilterExpr parse_cmp() {
    if (current_.kind == TokenKind::kLParen) {
      advance();
      FilterExpr inner = parse_or();
      if (current_.kind != TokenKind::kRParen) fail("')'");
      advance();
      return FilterExpr::parenthesized(std::move(inner));
    }
    if (current_.kind != TokenKind::kIdent) fail("column or '('");
    std::string column = current_.text;
    advance();
    if (current_.kind != TokenKind::kOp) fail("comparison operator");
    const CompareOp op = current_.op;
    advance();
    if (current_.kind != TokenKind::kNumber) fail("number");
    const double value = current_.number;
    advance();
    return FilterExpr::comparison(std::move(column), op, value);
  }

  Lexer lexer_;
  Token current_;
};

void collect_columns(const FilterExpr& e, std::vector<const std::string*>& out) {
  if (e.kind == FilterExpr::Kind::kComparison) out.push_back(&e.column);
  for (const auto& c : e.children) collect_columns(c, out);
}

bool needs_quotes(const std::string& name) {
  if (name.empty() || !ident_start(name.front())) return true;
  if (!std::all_of(name.begin(), name.end(), ident_char)) return true;
  return iequals(name, "and") || iequals(name, "or") || iequals(name, "not");
}

std::string format_number(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::string format_column(const std::string& name) {
  return needs_quotes(name) ? "\"" + name + "\"" : name;
}

bool compare(double lhs, CompareOp op, double rhs) {
  switch (op) {
    case CompareOp::kLt: return lhs < rhs;
    case CompareOp::kLe: return lhs <= rhs;
    case CompareOp::kGt: return lhs > rhs;
    case CompareOp::kGe: return lhs >= rhs;
    case CompareOp::kEq: return lhs == rhs;
    case CompareOp::kNe: return lhs != rhs;
  }
  return false;
}

class Evaluator {
 public:
  Evaluator(const FeatureTable& table, const PredictionVector& preds,
            const LabelVector& labels)
      : table_(table), preds_(preds), labels_(labels) {}

  std::vector<char> eval(const FilterExpr& e) {
    using Kind = FilterExpr::Kind;
    switch (e.kind) {
      case Kind::kComparison: {
        const auto& values = column(e.column);
        std::vector<char> mask(values.size());
        for (std::size_t i = 0; i < values.size(); ++i) {
          mask[i] = compare(values[i], e.op, e.value);
        }
        return mask;
      }
      case Kind::kAnd: {
        auto lhs = eval(e.children[0]);
        const auto rhs = eval(e.children[1]);
        for (std::size_t i = 0; i < lhs.size(); ++i) lhs[i] = lhs[i] && rhs[i];
        return lhs;
      }
      case Kind::kOr: {
        auto lhs = eval(e.children[0]);
        const auto rhs = eval(e.children[1]);
        for (std::size_t i = 0; i < lhs.size(); ++i) lhs[i] = lhs[i] || rhs[i];
        return lhs;
      }
      case Kind::kNot: {
        auto mask = eval(e.children[0]);
        for (auto& m : mask) m = !m;
        return mask;
      }
      case Kind::kParen:
        return eval(e.children[0]);
    }
    return {};
  }

 private:
  const std::vector<double>& column(const std::string& name) {
    auto it = cache_.find(name);
    if (it == cache_.end()) {
      it = cache_.emplace(name, attribute_values(table_, preds_, labels_, name)).first;
    }
    return it->second;
  }

  const FeatureTable& table_;
  const PredictionVector& preds_;
  const LabelVector& labels_;
  std::map<std::string, std::vector<double>> cache_;
};

}  // namespace

FilterExpr parse_filter(std::string_view text) { return Parser(text).parse(); }

FilterExpr parse_filter(std::string_view text, std::span<const std::string> columns) {
  FilterExpr e = parse_filter(text);
  std::vector<const std::string*> used;
  collect_columns(e, used);
  for (const std::string* name : used) {
    const bool known = *name == "pred" || *name == "label" ||
                       std::find(columns.begin(), columns.end(), *name) != columns.end();
    if (!known) {
      throw Error(ErrorCode::kUnknownColumn, "unknown column '" + *name + "'");
    }
  }
  return e;
}

std::string to_string(const FilterExpr& e) {
  using Kind = FilterExpr::Kind;
  switch (e.kind) {
    case Kind::kComparison:
      return format_column(e.column) + " " + std::string(compare_op_text(e.op)) +
             " " + format_number(e.value);
    case Kind::kAnd:
      return to_string(e.children[0]) + " AND " + to_string(e.children[1]);
    case Kind::kOr:
      return to_string(e.children[0]) + " OR " + to_string(e.children[1]);
    case Kind::kNot:
      return "NOT " + to_string(e.children[0]);
    case Kind::kParen:
      return "(" + to_string(e.children[0]) + ")";
  }
  return {};
}

std::string to_sexpr(const FilterExpr& e) {
  using Kind = FilterExpr::Kind;
  switch (e.kind) {
    case Kind::kComparison:
      return "(" + std::string(compare_op_text(e.op)) + " " + format_column(e.column) +
             " " + format_number(e.value) + ")";
    case Kind::kAnd:
      return "(AND " + to_sexpr(e.children[0]) + " " + to_sexpr(e.children[1]) + ")";
    case Kind::kOr:
      return "(OR " + to_sexpr(e.children[0]) + " " + to_sexpr(e.children[1]) + ")";
    case Kind::kNot:
      return "(NOT " + to_sexpr(e.children[0]) + ")";
    case Kind::kParen:
      return "(PAREN " + to_sexpr(e.children[0]) + ")";
  }
  return {};
}

std::vector<std::size_t> eval_filter(const FilterExpr& expr,
                                     const FeatureTable& table,
                                     const PredictionVector& preds,
                                     const LabelVector& labels) {
  const auto mask = Evaluator(table, preds, labels).eval(expr);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (mask[i]) out.push_back(i);
  }
  return out;
}

Selection run_query(std::string_view text, const FeatureTable& table,
                    const PredictionVector& preds, const LabelVector& labels) {
  const FilterExpr expr = parse_filter(text, table.column_names);
  Selection sel;
  sel.indices = eval_filter(expr, table, preds, labels);
  sel.provenance = QuerySource{std::string(text)};
  return sel;
}

}  // namespace mapperscope
