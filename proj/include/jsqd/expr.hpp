#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>

#include "jsqd/choice.hpp"

namespace jsqd {

/// Arithmetic expression in the single variable n.
///
/// Grammar (whitespace ignored):
///
///   expr    := term (('+' | '-') term)*
///   term    := unary (('*' | '/') unary)*
///   unary   := ('+' | '-') unary | power
///   power   := primary ('^' unary)?            right-associative
///   primary := number | 'n' | func primary | '(' expr ')'
///   func    := 'log' | 'sqrt' | 'loglog'
///
/// '×' and '−' are accepted as aliases of '*' and '-'. A function binds to
/// the primary that follows it, so `log n` and `log(n)` are the same and
/// `log n^2` is `(log n)^2`. `log` is the natural logarithm and
/// `loglog x` is `log(log x)`.
class Expression {
 public:
  static Expression parse(std::string_view text);

  double evaluate(double n) const;
  const std::string& text() const { return text_; }

  struct Node;

 private:
  std::string text_;
  std::shared_ptr<const Node> root_;
};

/// Sequence rule n -> (d(n), lambda(n)). d(n) is rounded to the nearest
/// integer and clamped to [1, n].
class ParameterRule {
 public:
  ParameterRule(Expression d, Expression lambda) : d_(std::move(d)), lambda_(std::move(lambda)) {}
  static ParameterRule parse(std::string_view d_text, std::string_view lambda_text);

  SystemParams at(std::int64_t n) const;
  const Expression& d_expr() const { return d_; }
  const Expression& lambda_expr() const { return lambda_; }

 private:
  Expression d_;
  Expression lambda_;
};

}  // namespace jsqd
