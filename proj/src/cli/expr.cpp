#include "lcs/cli/expr.hpp"

#include <cctype>
#include <cmath>
#include <memory>
#include <numbers>
#include <optional>

namespace lcs::cli {

namespace {

struct Node {
  enum Kind { Num, Var, Neg, Add, Sub, Mul, Div, Pow, Call } kind;
  double value = 0.0;
  int var = -1;
  std::string func;
  std::unique_ptr<Node> a, b;
};
using NodePtr = std::unique_ptr<Node>;

NodePtr make(Node::Kind k) {
  auto n = std::make_unique<Node>();
  n->kind = k;
  return n;
}

class Parser {
 public:
  Parser(const std::string& s, const std::vector<std::string>& names) : s_(s), names_(names) {}

  NodePtr parse() {
    NodePtr n = expr();
    skip();
    if (i_ != s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
    return n;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ExprError(msg + " at position " + std::to_string(i_) + " in \"" + s_ + "\"", i_);
  }
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool eat(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }

  NodePtr binary(Node::Kind k, NodePtr a, NodePtr b) {
    NodePtr n = make(k);
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
  }

  NodePtr expr() {
    NodePtr n = term();
    while (true) {
      if (eat('+')) {
        n = binary(Node::Add, std::move(n), term());
      } else if (eat('-')) {
        n = binary(Node::Sub, std::move(n), term());
      } else {
        return n;
      }
    }
  }
  NodePtr term() {
    NodePtr n = unary();
    while (true) {
      if (eat('*')) {
        n = binary(Node::Mul, std::move(n), unary());
      } else if (eat('/')) {
        n = binary(Node::Div, std::move(n), unary());
      } else {
        return n;
      }
    }
  }
  NodePtr unary() {
    if (eat('-')) {
      NodePtr n = make(Node::Neg);
      n->a = unary();
      return n;
    }
    return power();
  }
  NodePtr power() {
    NodePtr n = atom();
    if (eat('^')) return binary(Node::Pow, std::move(n), unary());
    return n;
  }
  NodePtr atom() {
    skip();
    if (i_ >= s_.size()) fail("unexpected end of expression");
    const char c = s_[i_];
    if (c == '(') {
      ++i_;
      NodePtr n = expr();
      if (!eat(')')) fail("missing ')'");
      return n;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(s_.substr(i_), &used);
      } catch (const std::exception&) {
        fail("bad number");
      }
      i_ += used;
      NodePtr n = make(Node::Num);
      n->value = v;
      return n;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = i_;
      while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
      const std::string id = s_.substr(start, i_ - start);
      if (id == "sin" || id == "cos" || id == "exp" || id == "log") {
        if (!eat('(')) fail("expected '(' after " + id);
        NodePtr n = make(Node::Call);
        n->func = id;
        n->a = expr();
        if (!eat(')')) fail("missing ')'");
        return n;
      }
      for (std::size_t k = 0; k < names_.size(); ++k) {
        if (names_[k] == id) {
          NodePtr n = make(Node::Var);
          n->var = static_cast<int>(k);
          return n;
        }
      }
      if (id == "pi" || id == "e") {
        NodePtr n = make(Node::Num);
        n->value = id == "pi" ? std::numbers::pi : std::numbers::e;
        return n;
      }
      i_ = start;
      fail("unknown identifier '" + id + "'");
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  const std::string& s_;
  const std::vector<std::string>& names_;
  std::size_t i_ = 0;
};

std::optional<double> constant_value(const Node& n) {
  auto ca = [&] { return constant_value(*n.a); };
  auto cb = [&] { return constant_value(*n.b); };
  switch (n.kind) {
    case Node::Num:
      return n.value;
    case Node::Var:
      return std::nullopt;
    case Node::Neg:
      if (auto a = ca()) return -*a;
      return std::nullopt;
    case Node::Call: {
      auto a = ca();
      if (!a) return std::nullopt;
      if (n.func == "sin") return std::sin(*a);
      if (n.func == "cos") return std::cos(*a);
      if (n.func == "exp") return std::exp(*a);
      if (!(*a > 0.0)) throw DomainError("log of a nonpositive constant");
      return std::log(*a);
    }
    default: {
      auto a = ca(), b = cb();
      if (!a || !b) return std::nullopt;
      switch (n.kind) {
        case Node::Add:
          return *a + *b;
        case Node::Sub:
          return *a - *b;
        case Node::Mul:
          return *a * *b;
        case Node::Div:
          return *a / *b;
        default:
          return std::pow(*a, *b);
      }
    }
  }
}

ScalarField compile(const Node& n, const ModelManifold& m) {
  if (auto c = constant_value(n)) return ScalarField::constant(m, *c);
  switch (n.kind) {
    case Node::Var:
      return ScalarField::coordinate(m, n.var);
    case Node::Neg:
      return -compile(*n.a, m);
    case Node::Call: {
      const ScalarField a = compile(*n.a, m);
      if (n.func == "sin") return sin(a);
      if (n.func == "cos") return cos(a);
      if (n.func == "exp") return exp(a);
      return log(a);
    }
    case Node::Add:
      return compile(*n.a, m) + compile(*n.b, m);
    case Node::Sub:
      return compile(*n.a, m) - compile(*n.b, m);
    case Node::Mul:
      return compile(*n.a, m) * compile(*n.b, m);
    case Node::Div:
      return compile(*n.a, m) / compile(*n.b, m);
    case Node::Pow:
      if (auto r = constant_value(*n.b)) return pow(compile(*n.a, m), *r);
      return pow(compile(*n.a, m), compile(*n.b, m));
    default:
      return ScalarField::constant(m, n.value);
  }
}

}  // namespace

ScalarField parse_expression(const std::string& text, const ModelManifold& domain,
                             const std::vector<std::string>& names) {
  if (static_cast<int>(names.size()) != domain.dim()) throw DimensionError("one name per coordinate is required");
  Parser p(text, names);
  const NodePtr root = p.parse();
  return compile(*root, domain);
}

double parse_constant(const std::string& text) {
  const std::vector<std::string> none;
  Parser p(text, none);
  const NodePtr root = p.parse();
  return *constant_value(*root);
}

}  // namespace lcs::cli
