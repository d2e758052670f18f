#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <variant>

namespace logcvx {

// Expression trees for user-defined representers.
//
// Grammar:
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := '-'? power
//   power  := atom ('^' factor)?
//   atom   := number | 'x' | ident | ident '(' expr ')' | '(' expr ')'
//
// Functions: exp, log, sin, cos, sqrt. Named constants: pi, phi, e. Any other
// identifier is a parameter and must be bound before evaluation.

class Expr;
using ExprPtr = std::shared_ptr<const Expr>;

enum class UnaryOp { Neg, Exp, Log, Sin, Cos, Sqrt };
enum class BinaryOp { Add, Sub, Mul, Div, Pow };

struct Constant {
  double value;
  std::string name;  // "pi", "phi", "e" or empty for literals
};
struct Variable {};
struct Parameter {
  std::string name;
};
struct Unary {
  UnaryOp op;
  ExprPtr arg;
};
struct Binary {
  BinaryOp op;
  ExprPtr lhs;
  ExprPtr rhs;
};

class Expr {
 public:
  using Node = std::variant<Constant, Variable, Parameter, Unary, Binary>;

  explicit Expr(Node node) : node_(std::move(node)) {}
  const Node& node() const noexcept { return node_; }

 private:
  Node node_;
};

/// Parses `src` without simplifying, so printing and reparsing reproduces the tree.
ExprPtr parse_expression(std::string_view src);

/// Fully parenthesised text that parses back to a structurally identical tree.
std::string to_string(const ExprPtr& e);

bool structurally_equal(const ExprPtr& a, const ExprPtr& b);

std::set<std::string> free_parameters(const ExprPtr& e);

/// Replaces parameters by constants; throws UnboundParameter listing every missing name.
ExprPtr substitute(const ExprPtr& e, const std::map<std::string, double>& params);

/// Throws DomainError for log/sqrt of invalid arguments and for a negative base
/// raised to a non-integer power; UnboundParameter if a parameter remains.
double evaluate(const ExprPtr& e, double x);

/// d/dx with light constant folding.
ExprPtr differentiate(const ExprPtr& e);

bool depends_on_x(const ExprPtr& e);

namespace ex {

ExprPtr constant(double v);
ExprPtr named(double v, std::string name);
ExprPtr x();
ExprPtr parameter(std::string name);

// Builders with constant folding and the obvious identities (0+a, 1*a, a^1, ...).
ExprPtr neg(ExprPtr a);
ExprPtr unary(UnaryOp op, ExprPtr a);
ExprPtr add(ExprPtr a, ExprPtr b);
ExprPtr sub(ExprPtr a, ExprPtr b);
ExprPtr mul(ExprPtr a, ExprPtr b);
ExprPtr div(ExprPtr a, ExprPtr b);
ExprPtr pow(ExprPtr a, ExprPtr b);

}  // namespace ex

}  // namespace logcvx
