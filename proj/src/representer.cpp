#include "logcvx/representer.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <utility>

#include "logcvx/errors.hpp"
#include "logcvx/special.hpp"

namespace logcvx {

namespace {

std::vector<double> spot_points(const Interval& dom) {
  constexpr int kPoints = 64;
  std::vector<double> xs;
  xs.reserve(kPoints);
  const bool lo_finite = std::isfinite(dom.lo);
  const bool hi_finite = std::isfinite(dom.hi);
  for (int i = 0; i < kPoints; ++i) {
    const double t = i + 0.5;
    if (lo_finite && hi_finite) {
      xs.push_back(dom.lo + t * (dom.hi - dom.lo) / kPoints);
    } else if (lo_finite) {
      xs.push_back(dom.lo + t);
    } else if (hi_finite) {
      xs.push_back(dom.hi - t);
    } else {
      xs.push_back(t - kPoints / 2.0);
    }
  }
  return xs;
}

double parse_number(std::string_view text, std::string_view spec) {
  double v = 0.0;
  auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    const std::size_t offset = static_cast<std::size_t>(text.data() - spec.data()) +
                               static_cast<std::size_t>(res.ptr - text.data());
    throw ParseError("malformed number in representer spec '" + std::string(spec) + "'", offset,
                     {"number"});
  }
  return v;
}

double nth_derivative(const RealFunction& f, double x, int k) {
  if (k <= 2) return f.derivative(x, k);
  if (k != 3) throw DomainError("numeric Artinian chain is limited to n <= 3");
  constexpr double eps = std::numeric_limits<double>::epsilon();
  const double scale = std::max(1.0, std::abs(x));
  if (f.has_d2()) {
    const double h = std::cbrt(eps) * scale;
    return (f.d2_fn()(x + h) - f.d2_fn()(x - h)) / (2.0 * h);
  }
  const double h = std::pow(eps, 0.2) * scale;
  return (f.value(x + 2 * h) - 2.0 * f.value(x + h) + 2.0 * f.value(x - h) - f.value(x - 2 * h)) /
         (2.0 * h * h * h);
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

void require_nonzero_derivative(double v, int k, double x) {
  if (std::abs(v) < 1e-12) {
    std::ostringstream os;
    os << "f^(" << k << ")(" << x << ") = " << v << " vanishes";
    throw ZeroDerivative(os.str());
  }
}

}  // namespace

Representer::Representer(std::string name, RealFunction g, Interval positivity_domain, ExprPtr ast)
    : name_(std::move(name)), g_(std::move(g)), positivity_(positivity_domain), ast_(std::move(ast)) {
  for (double x : spot_points(positivity_)) {
    const double v = g_(x);
    if (!(v > 0.0)) {
      std::ostringstream os;
      os << "representer '" << name_ << "' is not positive at x=" << x << " (g=" << v << ")";
      throw NonPositiveError(os.str());
    }
  }
}

RealFunction function_from_expr(const ExprPtr& e, Interval domain) {
  const ExprPtr d1 = differentiate(e);
  const ExprPtr d2 = differentiate(d1);
  return RealFunction([e](double x) { return evaluate(e, x); }, domain,
                      [d1](double x) { return evaluate(d1, x); },
                      [d2](double x) { return evaluate(d2, x); });
}

Representer parse_representer(std::string_view src, const std::map<std::string, double>& params,
                              Interval positivity_domain) {
  if (src.empty()) throw ParseError("empty representer expression at offset 0", 0, {"expression"});
  const ExprPtr ast = substitute(parse_expression(src), params);
  return Representer(std::string(src), function_from_expr(ast), positivity_domain, ast);
}

namespace builtin {

Representer identity() {
  const ExprPtr ast = ex::x();
  return Representer("identity", function_from_expr(ast), {0.0, kInf}, ast);
}

Representer power(double c) {
  if (!std::isfinite(c)) throw DomainError("power representer needs a finite exponent");
  const ExprPtr ast = ex::pow(ex::x(), ex::constant(c));
  std::ostringstream name;
  name << "power:c=" << c;
  return Representer(name.str(), function_from_expr(ast), {0.0, kInf}, ast);
}

Representer constant(double v) {
  if (!(v > 0.0) || !std::isfinite(v)) throw DomainError("constant representer needs v > 0");
  const ExprPtr ast = ex::constant(v);
  std::ostringstream name;
  name << "const:" << v;
  return Representer(name.str(), function_from_expr(ast), {-kInf, kInf}, ast);
}

Representer fibonacci() {
  // sqrt(5) cancels: g = w(x+1)/w(x) with w = phi^x - cos(pi x) phi^-x.
  auto denominator = [](double x) {
    const double w = fib_real(x);
    if (std::abs(w * std::sqrt(5.0)) < 1e-12) {
      std::ostringstream os;
      os << "fibonacci representer has a pole at x=" << x;
      throw PoleError(os.str());
    }
    return w;
  };
  auto g = [denominator](double x) { return fib_real(x + 1.0) / denominator(x); };
  auto d1 = [denominator](double x) {
    const double v = denominator(x);
    return (fib_real_d1(x + 1.0) * v - fib_real(x + 1.0) * fib_real_d1(x)) / (v * v);
  };
  auto d2 = [denominator](double x) {
    const double v = denominator(x);
    const double u = fib_real(x + 1.0);
    const double u1 = fib_real_d1(x + 1.0);
    const double u2 = fib_real_d2(x + 1.0);
    const double v1 = fib_real_d1(x);
    const double v2 = fib_real_d2(x);
    return (u2 * v - u * v2) / (v * v) - 2.0 * v1 * (u1 * v - u * v1) / (v * v * v);
  };
  return Representer("fibonacci", RealFunction(g, {}, d1, d2), {0.0, kInf});
}

}  // namespace builtin

Representer representer_from_spec(std::string_view spec) {
  if (spec == "identity") return builtin::identity();
  if (spec == "fibonacci") return builtin::fibonacci();
  constexpr std::string_view power_prefix = "power:c=";
  constexpr std::string_view const_prefix = "const:";
  if (spec.starts_with(power_prefix)) return builtin::power(parse_number(spec.substr(power_prefix.size()), spec));
  if (spec.starts_with(const_prefix)) return builtin::constant(parse_number(spec.substr(const_prefix.size()), spec));
  return parse_representer(spec);
}

std::vector<RealFunction> artinian_chain(const Representer& g0, const RealFunction& f, int n) {
  if (n < 1) throw DomainError("artinian_chain: need n >= 1");
  if (n > 3) throw DomainError("artinian_chain: numeric derivatives are limited to n <= 3");
  std::vector<RealFunction> chain;
  for (int k = 1; k <= n; ++k) {
    chain.emplace_back([g = g0.g(), f, k](double x) {
      const double fk = nth_derivative(f, x, k);
      require_nonzero_derivative(fk, k, x);
      double leibniz = 0.0;
      for (int j = 0; j <= k; ++j)
        leibniz += binomial(k, j) * nth_derivative(g, x, j) * nth_derivative(f, x, k - j);
      return leibniz / fk;
    });
  }
  return chain;
}

std::vector<RealFunction> artinian_chain(const Representer& g0, const ExprPtr& f, int n) {
  if (n < 1) throw DomainError("artinian_chain: need n >= 1");
  if (!g0.ast()) throw DomainError("artinian_chain: symbolic route needs an expression representer");
  std::vector<RealFunction> chain;
  ExprPtr g_prev = g0.ast();
  ExprPtr f_prev = f;
  for (int k = 1; k <= n; ++k) {
    ExprPtr fk = differentiate(f_prev);
    ExprPtr gk = ex::div(differentiate(ex::mul(g_prev, f_prev)), fk);
    const ExprPtr d1 = differentiate(gk);
    const ExprPtr d2 = differentiate(d1);
    chain.emplace_back(
        [gk, fk, k](double x) {
          require_nonzero_derivative(evaluate(fk, x), k, x);
          return evaluate(gk, x);
        },
        Interval{}, [d1](double x) { return evaluate(d1, x); },
        [d2](double x) { return evaluate(d2, x); });
    g_prev = gk;
    f_prev = fk;
  }
  return chain;
}

}  // namespace logcvx
