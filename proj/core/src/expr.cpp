#include "weyl/expr.hpp"

#include "weyl/errors.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

namespace weyl {

namespace {
enum class Op { Const, Var, Add, Sub, Mul, Div, Pow, Neg, Sin, Cos, Exp, Log };
}

struct Expr::Node {
  Op op;
  double value = 0;  // Const
  int var = 0;       // Var
  std::shared_ptr<const Node> a, b;
};

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;

NodePtr make_const(double v) {
  auto n = std::make_shared<Expr::Node>();
  n->op = Op::Const;
  n->value = v;
  return n;
}

NodePtr make_var(int idx) {
  auto n = std::make_shared<Expr::Node>();
  n->op = Op::Var;
  n->var = idx;
  return n;
}

bool is_const(const NodePtr& n, double v) {
  return n->op == Op::Const && n->value == v;
}

NodePtr make_node(Op op, NodePtr a, NodePtr b = nullptr);

NodePtr make_binary(Op op, NodePtr a, NodePtr b) {
  if (a->op == Op::Const && b->op == Op::Const) {
    switch (op) {
      case Op::Add: return make_const(a->value + b->value);
      case Op::Sub: return make_const(a->value - b->value);
      case Op::Mul: return make_const(a->value * b->value);
      case Op::Div:
        if (b->value != 0) return make_const(a->value / b->value);
        break;
      case Op::Pow: return make_const(std::pow(a->value, b->value));
      default: break;
    }
  }
  switch (op) {
    case Op::Add:
      if (is_const(a, 0)) return b;
      if (is_const(b, 0)) return a;
      break;
    case Op::Sub:
      if (is_const(b, 0)) return a;
      if (is_const(a, 0)) return make_node(Op::Neg, b);
      break;
    case Op::Mul:
      if (is_const(a, 0) || is_const(b, 0)) return make_const(0);
      if (is_const(a, 1)) return b;
      if (is_const(b, 1)) return a;
      break;
    case Op::Div:
      if (is_const(a, 0)) return make_const(0);
      if (is_const(b, 1)) return a;
      break;
    case Op::Pow:
      if (is_const(b, 1)) return a;
      if (is_const(b, 0)) return make_const(1);
      break;
    default:
      break;
  }
  auto n = std::make_shared<Expr::Node>();
  n->op = op;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

NodePtr make_node(Op op, NodePtr a, NodePtr b) {
  if (b) return make_binary(op, std::move(a), std::move(b));
  if (a->op == Op::Const) {
    switch (op) {
      case Op::Neg: return make_const(-a->value);
      case Op::Sin: return make_const(std::sin(a->value));
      case Op::Cos: return make_const(std::cos(a->value));
      case Op::Exp: return make_const(std::exp(a->value));
      case Op::Log:
        if (a->value > 0) return make_const(std::log(a->value));
        break;
      default: break;
    }
  }
  if (op == Op::Neg && a->op == Op::Neg) return a->a;
  auto n = std::make_shared<Expr::Node>();
  n->op = op;
  n->a = std::move(a);
  return n;
}

double eval_node(const Expr::Node& n, const std::vector<double>& x) {
  switch (n.op) {
    case Op::Const: return n.value;
    case Op::Var:
      if (n.var < 0 || n.var >= static_cast<int>(x.size()))
        throw ParseError("expression variable x" + std::to_string(n.var + 1) +
                         " out of range for the evaluation point");
      return x[static_cast<std::size_t>(n.var)];
    case Op::Add: return eval_node(*n.a, x) + eval_node(*n.b, x);
    case Op::Sub: return eval_node(*n.a, x) - eval_node(*n.b, x);
    case Op::Mul: return eval_node(*n.a, x) * eval_node(*n.b, x);
    case Op::Div: return eval_node(*n.a, x) / eval_node(*n.b, x);
    case Op::Pow: return std::pow(eval_node(*n.a, x), eval_node(*n.b, x));
    case Op::Neg: return -eval_node(*n.a, x);
    case Op::Sin: return std::sin(eval_node(*n.a, x));
    case Op::Cos: return std::cos(eval_node(*n.a, x));
    case Op::Exp: return std::exp(eval_node(*n.a, x));
    case Op::Log: return std::log(eval_node(*n.a, x));
  }
  return 0;
}

NodePtr diff_node(const NodePtr& n, int var) {
  switch (n->op) {
    case Op::Const: return make_const(0);
    case Op::Var: return make_const(n->var == var ? 1 : 0);
    case Op::Add: return make_node(Op::Add, diff_node(n->a, var), diff_node(n->b, var));
    case Op::Sub: return make_node(Op::Sub, diff_node(n->a, var), diff_node(n->b, var));
    case Op::Mul:
      return make_node(Op::Add, make_node(Op::Mul, diff_node(n->a, var), n->b),
                       make_node(Op::Mul, n->a, diff_node(n->b, var)));
    case Op::Div:
      // (a/b)' = a'/b - a b' / b^2
      return make_node(
          Op::Sub, make_node(Op::Div, diff_node(n->a, var), n->b),
          make_node(Op::Div, make_node(Op::Mul, n->a, diff_node(n->b, var)),
                    make_node(Op::Pow, n->b, make_const(2))));
    case Op::Pow: {
      if (n->b->op == Op::Const) {
        // c a^(c-1) a'
        const double c = n->b->value;
        return make_node(
            Op::Mul, make_const(c),
            make_node(Op::Mul, make_node(Op::Pow, n->a, make_const(c - 1)),
                      diff_node(n->a, var)));
      }
      // a^b (b' ln a + b a'/a)
      auto lhs = make_node(Op::Mul, diff_node(n->b, var), make_node(Op::Log, n->a));
      auto rhs = make_node(Op::Mul, n->b, make_node(Op::Div, diff_node(n->a, var), n->a));
      return make_node(Op::Mul, n, make_node(Op::Add, lhs, rhs));
    }
    case Op::Neg: return make_node(Op::Neg, diff_node(n->a, var));
    case Op::Sin: return make_node(Op::Mul, make_node(Op::Cos, n->a), diff_node(n->a, var));
    case Op::Cos:
      return make_node(Op::Neg,
                       make_node(Op::Mul, make_node(Op::Sin, n->a), diff_node(n->a, var)));
    case Op::Exp: return make_node(Op::Mul, n, diff_node(n->a, var));
    case Op::Log: return make_node(Op::Div, diff_node(n->a, var), n->a);
  }
  return make_const(0);
}

void print_node(const Expr::Node& n, std::ostream& os) {
  switch (n.op) {
    case Op::Const: os << n.value; return;
    case Op::Var: os << "x" << (n.var + 1); return;
    case Op::Add: os << "("; print_node(*n.a, os); os << " + "; print_node(*n.b, os); os << ")"; return;
    case Op::Sub: os << "("; print_node(*n.a, os); os << " - "; print_node(*n.b, os); os << ")"; return;
    case Op::Mul: os << "("; print_node(*n.a, os); os << " * "; print_node(*n.b, os); os << ")"; return;
    case Op::Div: os << "("; print_node(*n.a, os); os << " / "; print_node(*n.b, os); os << ")"; return;
    case Op::Pow: os << "("; print_node(*n.a, os); os << " ^ "; print_node(*n.b, os); os << ")"; return;
    case Op::Neg: os << "(-"; print_node(*n.a, os); os << ")"; return;
    case Op::Sin: os << "sin("; print_node(*n.a, os); os << ")"; return;
    case Op::Cos: os << "cos("; print_node(*n.a, os); os << ")"; return;
    case Op::Exp: os << "exp("; print_node(*n.a, os); os << ")"; return;
    case Op::Log: os << "ln("; print_node(*n.a, os); os << ")"; return;
  }
}

class Parser {
 public:
  Parser(const std::string& src, int nvars) : src_(src), nvars_(nvars) {}

  NodePtr run() {
    auto n = parse_sum();
    skip_ws();
    if (pos_ != src_.size())
      throw ParseError("expression: unexpected input at offset " + std::to_string(pos_) +
                       " in \"" + src_ + "\"");
    return n;
  }

 private:
  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < src_.size() ? src_[pos_] : '\0';
  }

  NodePtr parse_sum() {
    auto lhs = parse_product();
    for (;;) {
      if (eat('+'))
        lhs = make_node(Op::Add, lhs, parse_product());
      else if (eat('-'))
        lhs = make_node(Op::Sub, lhs, parse_product());
      else
        return lhs;
    }
  }

  NodePtr parse_product() {
    auto lhs = parse_unary();
    for (;;) {
      if (eat('*'))
        lhs = make_node(Op::Mul, lhs, parse_unary());
      else if (eat('/'))
        lhs = make_node(Op::Div, lhs, parse_unary());
      else
        return lhs;
    }
  }

  NodePtr parse_unary() {
    if (eat('-')) return make_node(Op::Neg, parse_unary());
    return parse_power();
  }

  NodePtr parse_power() {
    auto base = parse_primary();
    if (eat('^')) return make_node(Op::Pow, base, parse_unary());  // right assoc
    return base;
  }

  NodePtr parse_primary() {
    skip_ws();
    if (pos_ >= src_.size()) throw ParseError("expression: unexpected end of input");
    const char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      auto n = parse_sum();
      if (!eat(')')) throw ParseError("expression: missing closing parenthesis");
      return n;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c))) return parse_ident();
    throw ParseError(std::string("expression: unexpected character '") + c + "'");
  }

  NodePtr parse_number() {
    std::size_t end = pos_;
    while (end < src_.size() &&
           (std::isdigit(static_cast<unsigned char>(src_[end])) || src_[end] == '.'))
      ++end;
    // scientific suffix
    if (end < src_.size() && (src_[end] == 'e' || src_[end] == 'E')) {
      std::size_t e = end + 1;
      if (e < src_.size() && (src_[e] == '+' || src_[e] == '-')) ++e;
      if (e < src_.size() && std::isdigit(static_cast<unsigned char>(src_[e]))) {
        ++e;
        while (e < src_.size() && std::isdigit(static_cast<unsigned char>(src_[e]))) ++e;
        end = e;
      }
    }
    const std::string tok = src_.substr(pos_, end - pos_);
    try {
      const double v = std::stod(tok);
      pos_ = end;
      return make_const(v);
    } catch (const std::exception&) {
      throw ParseError("expression: bad number \"" + tok + "\"");
    }
  }

  NodePtr parse_ident() {
    std::size_t end = pos_;
    while (end < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[end])) || src_[end] == '_'))
      ++end;
    const std::string name = src_.substr(pos_, end - pos_);
    pos_ = end;
    if (name == "pi") return make_const(3.14159265358979323846);
    if (name == "sin" || name == "cos" || name == "exp" || name == "ln") {
      if (!eat('(')) throw ParseError("expression: " + name + " needs parentheses");
      auto arg = parse_sum();
      if (!eat(')')) throw ParseError("expression: missing closing parenthesis");
      if (name == "sin") return make_node(Op::Sin, arg);
      if (name == "cos") return make_node(Op::Cos, arg);
      if (name == "exp") return make_node(Op::Exp, arg);
      return make_node(Op::Log, arg);
    }
    if (name.size() >= 2 && name[0] == 'x') {
      try {
        const int idx = std::stoi(name.substr(1));
        if (idx >= 1 && idx <= nvars_) return make_var(idx - 1);
      } catch (const std::exception&) {
      }
      throw ParseError("expression: variable \"" + name + "\" outside x1..x" +
                       std::to_string(nvars_));
    }
    throw ParseError("expression: unknown identifier \"" + name + "\"");
  }

  const std::string& src_;
  int nvars_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr::Expr() : node_(make_const(0)) {}

Expr Expr::parse(const std::string& src, int nvars) {
  return Expr(Parser(src, nvars).run());
}

Expr Expr::constant(double value) { return Expr(make_const(value)); }

Expr Expr::variable(int index) {
  if (index < 0) throw ParseError("expression: negative variable index");
  return Expr(make_var(index));
}

double Expr::eval(const std::vector<double>& x) const { return eval_node(*node_, x); }

Expr Expr::diff(int var) const { return Expr(diff_node(node_, var)); }

bool Expr::is_zero() const { return is_const(node_, 0); }

std::string Expr::str() const {
  std::ostringstream os;
  os.precision(17);  // constants must survive a print/parse round trip
  print_node(*node_, os);
  return os.str();
}

Expr operator+(const Expr& a, const Expr& b) {
  return Expr(make_node(Op::Add, a.node_, b.node_));
}
Expr operator-(const Expr& a, const Expr& b) {
  return Expr(make_node(Op::Sub, a.node_, b.node_));
}
Expr operator*(const Expr& a, const Expr& b) {
  return Expr(make_node(Op::Mul, a.node_, b.node_));
}
Expr operator/(const Expr& a, const Expr& b) {
  return Expr(make_node(Op::Div, a.node_, b.node_));
}
Expr operator-(const Expr& a) { return Expr(make_node(Op::Neg, a.node_)); }
Expr pow(const Expr& a, const Expr& b) {
  return Expr(make_node(Op::Pow, a.node_, b.node_));
}
Expr sin(const Expr& a) { return Expr(make_node(Op::Sin, a.node_)); }
Expr cos(const Expr& a) { return Expr(make_node(Op::Cos, a.node_)); }
Expr exp(const Expr& a) { return Expr(make_node(Op::Exp, a.node_)); }
Expr log(const Expr& a) { return Expr(make_node(Op::Log, a.node_)); }

}  // namespace weyl
