#include "idect/funcparse.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <set>

#include "idect/errors.hpp"
#include "idect/special_functions.hpp"

namespace idect {

namespace {

using Node = Expr::Node;
using NodePtr = std::shared_ptr<const Node>;

const std::set<std::string, std::less<>> kVariables = {"t", "x", "s", "u"};

struct FunctionInfo {
  std::string_view name;
  std::size_t arity;
  std::size_t literal_args;  // leading arguments that must be integer literals
};

constexpr FunctionInfo kFunctions[] = {
    {"exp", 1, 0},  {"log", 1, 0},     {"sqrt", 1, 0},     {"sin", 1, 0},  {"cos", 1, 0},
    {"tan", 1, 0},  {"sinh", 1, 0},    {"cosh", 1, 0},     {"tanh", 1, 0}, {"erf", 1, 0},
    {"abs", 1, 0},  {"pow", 2, 0},     {"besselj", 2, 1},  {"besseljx", 3, 2},
};

const FunctionInfo* find_function(std::string_view name) {
  for (const auto& f : kFunctions) {
    if (f.name == name) return &f;
  }
  return nullptr;
}

NodePtr make_number(double v) {
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::Number;
  n->value = v;
  return n;
}

NodePtr make_node(Node::Kind kind, std::vector<NodePtr> children, std::string name = {}) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->children = std::move(children);
  n->name = std::move(name);
  return n;
}

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  NodePtr parse_all() {
    NodePtr e = parse_expr();
    skip_space();
    if (pos_ != src_.size()) fail({"operator", "end of input"});
    return e;
  }

 private:
  [[noreturn]] void fail(std::vector<std::string> expected) {
    std::string msg = "syntax error at offset " + std::to_string(pos_) + ": expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i) msg += " or ";
      msg += expected[i];
    }
    if (pos_ < src_.size()) {
      msg += ", found '";
      msg += src_[pos_];
      msg += "'";
    } else {
      msg += ", found end of input";
    }
    throw SyntaxError(pos_, std::move(expected), msg);
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

  void expect(char c) {
    if (!accept(c)) fail({std::string("'") + c + "'"});
  }

  NodePtr parse_expr() {
    NodePtr lhs = parse_term();
    for (;;) {
      if (accept('+')) {
        lhs = make_node(Node::Kind::Add, {lhs, parse_term()});
      } else if (accept('-')) {
        lhs = make_node(Node::Kind::Subtract, {lhs, parse_term()});
      } else {
        return lhs;
      }
    }
  }

  NodePtr parse_term() {
    NodePtr lhs = parse_unary();
    for (;;) {
      if (accept('*')) {
        lhs = make_node(Node::Kind::Multiply, {lhs, parse_unary()});
      } else if (accept('/')) {
        lhs = make_node(Node::Kind::Divide, {lhs, parse_unary()});
      } else {
        return lhs;
      }
    }
  }

  NodePtr parse_unary() {
    if (accept('-')) return make_node(Node::Kind::Negate, {parse_unary()});
    if (accept('+')) return parse_unary();
    return parse_power();
  }

  NodePtr parse_power() {
    NodePtr base = parse_primary();
    if (accept('^')) return make_node(Node::Kind::Power, {base, parse_unary()});
    return base;
  }

  NodePtr parse_number() {
    const std::size_t begin = pos_;
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(src_.data() + pos_, src_.data() + src_.size(), v,
                                     std::chars_format::general);
    if (ec != std::errc() || ptr == src_.data() + begin) fail({"number"});
    pos_ = static_cast<std::size_t>(ptr - src_.data());
    return make_number(v);
  }

  NodePtr parse_primary() {
    skip_space();
    if (pos_ >= src_.size()) fail({"number", "name", "'('"});
    const char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (accept('(')) {
      NodePtr e = parse_expr();
      expect(')');
      return e;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t begin = pos_;
      while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
                                    src_[pos_] == '_')) {
        ++pos_;
      }
      const std::string name(src_.substr(begin, pos_ - begin));
      skip_space();
      if (pos_ < src_.size() && src_[pos_] == '(') return parse_call(name, begin);
      if (name == "pi") return make_number(std::numbers::pi);
      if (kVariables.count(name)) return make_node(Node::Kind::Variable, {}, name);
      throw UnknownFunction("unknown identifier '" + name + "' at offset " +
                            std::to_string(begin));
    }
    fail({"number", "name", "'('"});
  }

  NodePtr parse_call(const std::string& name, std::size_t name_offset) {
    const FunctionInfo* info = find_function(name);
    if (!info) {
      throw UnknownFunction("unknown function '" + name + "' at offset " +
                            std::to_string(name_offset));
    }
    expect('(');
    std::vector<NodePtr> args;
    args.push_back(parse_expr());
    while (accept(',')) args.push_back(parse_expr());
    expect(')');
    if (args.size() != info->arity) {
      throw ArityError("function '" + name + "' takes " + std::to_string(info->arity) +
                       " argument(s), got " + std::to_string(args.size()));
    }
    for (std::size_t i = 0; i < info->literal_args; ++i) {
      const Node& a = *args[i];
      if (a.kind != Node::Kind::Number || a.value < 0.0 || a.value != std::floor(a.value)) {
        throw ArityError("argument " + std::to_string(i + 1) + " of '" + name +
                         "' must be a non-negative integer literal");
      }
    }
    return make_node(Node::Kind::Call, std::move(args), name);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

double checked(double v, const char* what) {
  if (std::isnan(v)) throw EvalError(std::string(what) + " is undefined here");
  return v;
}

double eval_node(const Node& n, double t) {
  switch (n.kind) {
    case Node::Kind::Number:
      return n.value;
    case Node::Kind::Variable:
      return t;
    case Node::Kind::Negate:
      return -eval_node(*n.children[0], t);
    case Node::Kind::Add:
      return eval_node(*n.children[0], t) + eval_node(*n.children[1], t);
    case Node::Kind::Subtract:
      return eval_node(*n.children[0], t) - eval_node(*n.children[1], t);
    case Node::Kind::Multiply:
      return eval_node(*n.children[0], t) * eval_node(*n.children[1], t);
    case Node::Kind::Divide: {
      const double den = eval_node(*n.children[1], t);
      if (den == 0.0) throw EvalError("division by zero at t = " + std::to_string(t));
      return eval_node(*n.children[0], t) / den;
    }
    case Node::Kind::Power:
      return checked(std::pow(eval_node(*n.children[0], t), eval_node(*n.children[1], t)),
                     "power");
    case Node::Kind::Call:
      break;
  }
  const std::string& f = n.name;
  const double a = eval_node(*n.children.back(), t);
  if (f == "besselj") return bessel_j(static_cast<int>(n.children[0]->value), a);
  if (f == "besseljx") {
    return bessel_j_over_power(static_cast<int>(n.children[0]->value),
                               static_cast<int>(n.children[1]->value), a);
  }
  if (f == "pow") return checked(std::pow(eval_node(*n.children[0], t), a), "pow");
  if (f == "exp") return std::exp(a);
  if (f == "log") {
    if (!(a > 0.0)) throw EvalError("log of non-positive value " + std::to_string(a));
    return std::log(a);
  }
  if (f == "sqrt") {
    if (a < 0.0) throw EvalError("sqrt of negative value " + std::to_string(a));
    return std::sqrt(a);
  }
  if (f == "sin") return std::sin(a);
  if (f == "cos") return std::cos(a);
  if (f == "tan") return std::tan(a);
  if (f == "sinh") return std::sinh(a);
  if (f == "cosh") return std::cosh(a);
  if (f == "tanh") return std::tanh(a);
  if (f == "erf") return idect::erf(a);
  if (f == "abs") return std::abs(a);
  throw UnknownFunction("unknown function '" + f + "'");
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string print_node(const Node& n) {
  auto binary = [&](const char* op) {
    return "(" + print_node(*n.children[0]) + " " + op + " " + print_node(*n.children[1]) + ")";
  };
  switch (n.kind) {
    case Node::Kind::Number:
      return format_number(n.value);
    case Node::Kind::Variable:
      return n.name;
    case Node::Kind::Negate:
      return "(-" + print_node(*n.children[0]) + ")";
    case Node::Kind::Add:
      return binary("+");
    case Node::Kind::Subtract:
      return binary("-");
    case Node::Kind::Multiply:
      return binary("*");
    case Node::Kind::Divide:
      return binary("/");
    case Node::Kind::Power:
      return binary("^");
    case Node::Kind::Call: {
      std::string s = n.name + "(";
      for (std::size_t i = 0; i < n.children.size(); ++i) {
        if (i) s += ", ";
        s += print_node(*n.children[i]);
      }
      return s + ")";
    }
  }
  return {};
}

bool has_variable(const Node& n) {
  if (n.kind == Node::Kind::Variable) return true;
  for (const auto& c : n.children) {
    if (has_variable(*c)) return true;
  }
  return false;
}

}  // namespace

Expr parse(std::string_view source) { return Expr(Parser(source).parse_all()); }

double eval_expr(const Expr& e, double t) { return eval_node(e.root(), t); }

double Expr::operator()(double t) const { return eval_node(*root_, t); }

std::string Expr::to_string() const { return print_node(*root_); }

bool Expr::is_constant() const { return !has_variable(*root_); }

}  // namespace idect
