#include "jsqd/expr.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <vector>

namespace jsqd {

struct Expression::Node {
  enum class Kind { Number, Variable, Neg, Add, Sub, Mul, Div, Pow, Log, Sqrt, LogLog };
  Kind kind;
  double value = 0.0;
  std::shared_ptr<const Node> lhs;
  std::shared_ptr<const Node> rhs;
};

namespace {

using Node = Expression::Node;
using NodePtr = std::shared_ptr<const Node>;

NodePtr leaf(Node::Kind kind, double value = 0.0) {
  return std::make_shared<const Node>(Node{kind, value, nullptr, nullptr});
}

NodePtr unary(Node::Kind kind, NodePtr arg) {
  return std::make_shared<const Node>(Node{kind, 0.0, std::move(arg), nullptr});
}

NodePtr binary(Node::Kind kind, NodePtr lhs, NodePtr rhs) {
  return std::make_shared<const Node>(Node{kind, 0.0, std::move(lhs), std::move(rhs)});
}

// Replaces the UTF-8 aliases with their ASCII operators.
std::string normalize(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size();) {
    if (text.compare(i, 2, "\xC3\x97") == 0) {  // ×
      out.push_back('*');
      i += 2;
    } else if (text.compare(i, 3, "\xE2\x88\x92") == 0) {  // −
      out.push_back('-');
      i += 3;
    } else {
      out.push_back(text[i]);
      ++i;
    }
  }
  return out;
}

class Parser {
 public:
  explicit Parser(std::string src) : src_(std::move(src)) {}

  NodePtr parse() {
    NodePtr root = expr();
    skip_space();
    if (pos_ != src_.size()) fail("unexpected trailing input");
    return root;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("expression '" + src_ + "': " + what + " at offset " + std::to_string(pos_));
  }

  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      if (accept('+')) {
        lhs = binary(Node::Kind::Add, lhs, term());
      } else if (accept('-')) {
        lhs = binary(Node::Kind::Sub, lhs, term());
      } else {
        return lhs;
      }
    }
  }

  NodePtr term() {
    NodePtr lhs = unary_expr();
    for (;;) {
      if (accept('*')) {
        lhs = binary(Node::Kind::Mul, lhs, unary_expr());
      } else if (accept('/')) {
        lhs = binary(Node::Kind::Div, lhs, unary_expr());
      } else {
        return lhs;
      }
    }
  }

  NodePtr unary_expr() {
    if (accept('-')) return unary(Node::Kind::Neg, unary_expr());
    if (accept('+')) return unary_expr();
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    if (accept('^')) return binary(Node::Kind::Pow, base, unary_expr());
    return base;
  }

  NodePtr primary() {
    skip_space();
    if (pos_ >= src_.size()) fail("unexpected end of input");
    const char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const char* begin = src_.c_str() + pos_;
      char* end = nullptr;
      const double v = std::strtod(begin, &end);
      if (end == begin) fail("bad number");
      pos_ += static_cast<std::size_t>(end - begin);
      return leaf(Node::Kind::Number, v);
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < src_.size() && std::isalnum(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      const std::string word = src_.substr(start, pos_ - start);
      if (word == "n") return leaf(Node::Kind::Variable);
      if (word == "log") return unary(Node::Kind::Log, primary());
      if (word == "sqrt") return unary(Node::Kind::Sqrt, primary());
      if (word == "loglog") return unary(Node::Kind::LogLog, primary());
      pos_ = start;
      fail("unknown identifier '" + word + "'");
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  std::string src_;
  std::size_t pos_ = 0;
};

double eval(const Node& node, double n) {
  switch (node.kind) {
    case Node::Kind::Number: return node.value;
    case Node::Kind::Variable: return n;
    case Node::Kind::Neg: return -eval(*node.lhs, n);
    case Node::Kind::Add: return eval(*node.lhs, n) + eval(*node.rhs, n);
    case Node::Kind::Sub: return eval(*node.lhs, n) - eval(*node.rhs, n);
    case Node::Kind::Mul: return eval(*node.lhs, n) * eval(*node.rhs, n);
    case Node::Kind::Div: return eval(*node.lhs, n) / eval(*node.rhs, n);
    case Node::Kind::Pow: return std::pow(eval(*node.lhs, n), eval(*node.rhs, n));
    case Node::Kind::Log: return std::log(eval(*node.lhs, n));
    case Node::Kind::Sqrt: return std::sqrt(eval(*node.lhs, n));
    case Node::Kind::LogLog: return std::log(std::log(eval(*node.lhs, n)));
  }
  return 0.0;
}

}  // namespace

Expression Expression::parse(std::string_view text) {
  Expression e;
  e.text_ = std::string(text);
  e.root_ = Parser(normalize(text)).parse();
  return e;
}

double Expression::evaluate(double n) const { return eval(*root_, n); }

ParameterRule ParameterRule::parse(std::string_view d_text, std::string_view lambda_text) {
  return ParameterRule(Expression::parse(d_text), Expression::parse(lambda_text));
}

SystemParams ParameterRule::at(std::int64_t n) const {
  const double nd = static_cast<double>(n);
  const double d_raw = d_.evaluate(nd);
  const double lam = lambda_.evaluate(nd);
  if (!std::isfinite(d_raw) || !std::isfinite(lam)) {
    throw std::invalid_argument("ParameterRule: non-finite value at n = " + std::to_string(n));
  }
  SystemParams p;
  p.n = n;
  p.d = std::clamp<std::int64_t>(std::llround(d_raw), 1, n);
  p.lambda = lam;
  p.validate();
  return p;
}

}  // namespace jsqd
