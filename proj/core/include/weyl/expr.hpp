#ifndef WEYL_EXPR_HPP
#define WEYL_EXPR_HPP

#include <memory>
#include <string>
#include <vector>

namespace weyl {

/// Immutable arithmetic expression over chart coordinates x1..xn.
/// Grammar: decimal literals, x1..xn, pi, + - * / ^, sin cos exp ln,
/// parentheses, unary minus.
class Expr {
 public:
  Expr();  // the constant 0

  static Expr parse(const std::string& src, int nvars);
  static Expr constant(double value);
  static Expr variable(int index);  // zero-based

  double eval(const std::vector<double>& x) const;
  Expr diff(int var) const;

  bool is_zero() const;
  std::string str() const;

  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr operator/(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a);
  friend Expr pow(const Expr& a, const Expr& b);
  friend Expr sin(const Expr& a);
  friend Expr cos(const Expr& a);
  friend Expr exp(const Expr& a);
  friend Expr log(const Expr& a);

  struct Node;

 private:
  explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

}  // namespace weyl

#endif
