#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "logcvx/expr.hpp"
#include "logcvx/funcore.hpp"

namespace logcvx {

/// The function g of f(x+1) = g(x) f(x), together with the interval on
/// which it is positive. Construction spot-checks positivity on 64 interior
/// points of that interval and throws NonPositiveError on failure.
class Representer {
 public:
  Representer(std::string name, RealFunction g, Interval positivity_domain, ExprPtr ast = nullptr);

  const std::string& name() const noexcept { return name_; }
  const RealFunction& g() const noexcept { return g_; }
  const Interval& positivity_domain() const noexcept { return positivity_; }
  /// Non-null when g came from an expression (parsed or builtin).
  const ExprPtr& ast() const noexcept { return ast_; }

  double operator()(double x) const { return g_(x); }

 private:
  std::string name_;
  RealFunction g_;
  Interval positivity_;
  ExprPtr ast_;
};

/// RealFunction whose d1/d2 are the symbolic derivatives of `e`.
RealFunction function_from_expr(const ExprPtr& e, Interval domain = {});

Representer parse_representer(std::string_view src, const std::map<std::string, double>& params = {},
                              Interval positivity_domain = {0.0, kInf});

namespace builtin {

Representer identity();
/// x^c for real c; defined for x > 0 only when c is not an integer.
Representer power(double c);
/// f(x+1)/f(x) for the real Fibonacci extension f. PoleError where
/// |phi^x - cos(pi x) phi^-x| < 1e-12 (x = 0 among others).
Representer fibonacci();
Representer constant(double v);

}  // namespace builtin

/// CLI representer spec: "identity", "fibonacci", "power:c=<v>", "const:<v>",
/// otherwise an expression in x.
Representer representer_from_spec(std::string_view spec);

/// g_1..g_n with g_k = (g_{k-1} f^(k-1))' / f^(k).
///
/// The recursion telescopes to g_k = (g_0 f)^(k) / f^(k), which is what this
/// overload evaluates via Leibniz' rule. Derivatives come from the exact
/// d1/d2 when present and from central differences otherwise; n <= 3.
std::vector<RealFunction> artinian_chain(const Representer& g0, const RealFunction& f, int n);

/// Same recursion carried out symbolically; g0 must have an expression.
std::vector<RealFunction> artinian_chain(const Representer& g0, const ExprPtr& f, int n);

}  // namespace logcvx
