#include "lvstage/profile.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace lvstage {
namespace detail {

enum class Op { Number, Var, Neg, Cos, Sin, Exp, Add, Sub, Mul, Div };

struct ExprNode {
  Op op;
  double number = 0.0;
  std::shared_ptr<const ExprNode> lhs, rhs;
};

using NodePtr = std::shared_ptr<const ExprNode>;

namespace {

NodePtr make_number(double v) {
  auto n = std::make_shared<ExprNode>();
  n->op = Op::Number;
  n->number = v;
  return n;
}

NodePtr make_unary(Op op, NodePtr child) {
  auto n = std::make_shared<ExprNode>();
  n->op = op;
  n->lhs = std::move(child);
  return n;
}

NodePtr make_binary(Op op, NodePtr l, NodePtr r) {
  auto n = std::make_shared<ExprNode>();
  n->op = op;
  n->lhs = std::move(l);
  n->rhs = std::move(r);
  return n;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  NodePtr run() {
    skip_ws();
    require(pos_ < text_.size(), ErrorCode::ParseError,
            "empty expression (offset 0)");
    NodePtr e = expr();
    skip_ws();
    if (pos_ < text_.size()) error("unexpected trailing input");
    return e;
  }

 private:
  [[noreturn]] void error(const std::string& what) const {
    fail(ErrorCode::ParseError,
         "parse error at offset " + std::to_string(pos_) + ": " + what);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool consume(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr expr() {
    NodePtr e = term();
    for (;;) {
      if (consume('+')) {
        e = make_binary(Op::Add, e, term());
      } else if (consume('-')) {
        e = make_binary(Op::Sub, e, term());
      } else {
        return e;
      }
    }
  }

  NodePtr term() {
    NodePtr e = factor();
    for (;;) {
      if (consume('*')) {
        e = make_binary(Op::Mul, e, factor());
      } else if (consume('/')) {
        e = make_binary(Op::Div, e, factor());
      } else {
        return e;
      }
    }
  }

  NodePtr factor() {
    skip_ws();
    if (pos_ >= text_.size()) error("expected a factor");
    const char c = text_[pos_];
    if (c == '-') {
      ++pos_;
      return make_unary(Op::Neg, factor());
    }
    if (c == '(') {
      ++pos_;
      NodePtr e = expr();
      if (!consume(')')) error("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
    error(std::string("unexpected character '") + c + "'");
  }

  NodePtr number() {
    // Decimal literal with optional fraction and exponent.
    size_t end = pos_;
    while (end < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[end])) || text_[end] == '.')) ++end;
    if (end < text_.size() && (text_[end] == 'e' || text_[end] == 'E')) {
      size_t e = end + 1;
      if (e < text_.size() && (text_[e] == '+' || text_[e] == '-')) ++e;
      if (e < text_.size() && std::isdigit(static_cast<unsigned char>(text_[e]))) {
        ++e;
        while (e < text_.size() && std::isdigit(static_cast<unsigned char>(text_[e]))) ++e;
        end = e;
      }
    }
    double value = 0.0;
    auto res = std::from_chars(text_.data() + pos_, text_.data() + end, value);
    if (res.ec != std::errc{} || res.ptr != text_.data() + end) error("malformed number");
    pos_ = end;
    return make_number(value);
  }

  NodePtr identifier() {
    size_t end = pos_;
    while (end < text_.size() && std::isalpha(static_cast<unsigned char>(text_[end]))) ++end;
    std::string_view name = text_.substr(pos_, end - pos_);
    if (name == "x") {
      pos_ = end;
      auto n = std::make_shared<ExprNode>();
      n->op = Op::Var;
      return n;
    }
    Op op;
    if (name == "cos") {
      op = Op::Cos;
    } else if (name == "sin") {
      op = Op::Sin;
    } else if (name == "exp") {
      op = Op::Exp;
    } else {
      fail(ErrorCode::ParseError, "parse error at offset " + std::to_string(pos_) +
                                      ": unknown identifier '" + std::string(name) + "'");
    }
    pos_ = end;
    if (!consume('(')) error("expected '(' after function name");
    NodePtr arg = expr();
    if (!consume(')')) error("expected ')'");
    return make_unary(op, std::move(arg));
  }

  std::string_view text_;
  size_t pos_ = 0;
};

double eval_node(const ExprNode& n, double x) {
  switch (n.op) {
    case Op::Number: return n.number;
    case Op::Var: return x;
    case Op::Neg: return -eval_node(*n.lhs, x);
    case Op::Cos: return std::cos(eval_node(*n.lhs, x));
    case Op::Sin: return std::sin(eval_node(*n.lhs, x));
    case Op::Exp: return std::exp(eval_node(*n.lhs, x));
    case Op::Add: return eval_node(*n.lhs, x) + eval_node(*n.rhs, x);
    case Op::Sub: return eval_node(*n.lhs, x) - eval_node(*n.rhs, x);
    case Op::Mul: return eval_node(*n.lhs, x) * eval_node(*n.rhs, x);
    case Op::Div: return eval_node(*n.lhs, x) / eval_node(*n.rhs, x);
  }
  fail(ErrorCode::Internal, "corrupt expression node");
}

void print_node(const ExprNode& n, std::string& out) {
  char buf[32];
  switch (n.op) {
    case Op::Number:
      std::snprintf(buf, sizeof buf, "%.17g", n.number);
      out += buf;
      return;
    case Op::Var: out += 'x'; return;
    case Op::Neg:
      out += "-(";
      print_node(*n.lhs, out);
      out += ')';
      return;
    case Op::Cos:
    case Op::Sin:
    case Op::Exp:
      out += (n.op == Op::Cos ? "cos(" : n.op == Op::Sin ? "sin(" : "exp(");
      print_node(*n.lhs, out);
      out += ')';
      return;
    case Op::Add:
    case Op::Sub:
    case Op::Mul:
    case Op::Div: {
      const char op = n.op == Op::Add ? '+' : n.op == Op::Sub ? '-' : n.op == Op::Mul ? '*' : '/';
      out += '(';
      print_node(*n.lhs, out);
      out += op;
      print_node(*n.rhs, out);
      out += ')';
      return;
    }
  }
}

}  // namespace
}  // namespace detail

Profile Profile::parse(std::string_view text) {
  require(!text.empty(), ErrorCode::ParseError, "empty expression (offset 0)");
  Profile p;
  p.ast_ = detail::Parser(text).run();
  return p;
}

Profile Profile::tabulated(std::vector<double> xs, std::vector<double> ys) {
  require(xs.size() == ys.size() && xs.size() >= 2, ErrorCode::InvalidArgument,
          "tabulated profile needs at least two samples");
  for (size_t i = 0; i + 1 < xs.size(); ++i)
    require(xs[i] < xs[i + 1], ErrorCode::InvalidArgument,
            "tabulated profile abscissae must be strictly increasing");
  Profile p;
  p.table_ = std::make_shared<const std::pair<std::vector<double>, std::vector<double>>>(
      std::move(xs), std::move(ys));
  return p;
}

double Profile::eval(double x) const {
  if (ast_) return detail::eval_node(*ast_, x);
  const auto& [xs, ys] = *table_;
  if (x <= xs.front()) return ys.front();
  if (x >= xs.back()) return ys.back();
  // Binary search for the bracketing segment.
  size_t lo = 0, hi = xs.size() - 1;
  while (hi - lo > 1) {
    const size_t mid = (lo + hi) / 2;
    (xs[mid] <= x ? lo : hi) = mid;
  }
  const double t = (x - xs[lo]) / (xs[lo + 1] - xs[lo]);
  return ys[lo] + t * (ys[lo + 1] - ys[lo]);
}

std::string Profile::print() const {
  require(ast_ != nullptr, ErrorCode::InvalidArgument,
          "tabulated profiles have no expression form");
  std::string out;
  detail::print_node(*ast_, out);
  return out;
}

Field Profile::sample(const Grid& grid) const {
  Field f(grid);
  for (int j = 0; j < grid.size(); ++j) f[j] = eval(grid.node(j));
  require(f.finite(), ErrorCode::InvalidArgument,
          "profile evaluates to a non-finite value on the grid");
  return f;
}

Field Profile::sample(const Grid& grid, MplusMode mode, std::string* warning) const {
  Field f = sample(grid);
  if (mode == MplusMode::None) return f;

  std::vector<int> nonpositive, zero;
  for (int j = 0; j < grid.size(); ++j) {
    if (f[j] < 0.0 || (mode == MplusMode::Strict && f[j] == 0.0)) nonpositive.push_back(j);
    if (f[j] == 0.0) zero.push_back(j);
  }
  if (!nonpositive.empty()) {
    std::ostringstream msg;
    msg << (mode == MplusMode::Strict ? "profile must be positive on the closed domain"
                                      : "profile must be nonnegative in relaxed mode")
        << "; offending nodes:";
    for (size_t i = 0; i < nonpositive.size() && i < 8; ++i) msg << ' ' << nonpositive[i];
    if (nonpositive.size() > 8) msg << " ... (" << nonpositive.size() << " total)";
    fail(ErrorCode::MplusViolation, msg.str());
  }
  if (mode == MplusMode::Relaxed && !zero.empty() && warning) {
    std::ostringstream msg;
    if (!warning->empty()) *warning += "; ";
    msg << "profile touches zero at " << zero.size()
        << " node(s) (relaxed positivity mode); first at node " << zero.front();
    *warning += msg.str();
  }
  return f;
}

}  // namespace lvstage
