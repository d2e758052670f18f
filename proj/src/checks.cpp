#include "logcvx/checks.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <numbers>
#include <random>
#include <sstream>

#include "logcvx/bohr_mollerup.hpp"
#include "logcvx/convexity.hpp"
#include "logcvx/errors.hpp"
#include "logcvx/expr.hpp"
#include "logcvx/representer.hpp"
#include "logcvx/special.hpp"

namespace logcvx {

namespace {

struct Verdict_ {
  bool passed;
  std::string detail;
};

class Detail {
 public:
  Detail() { os_ << std::setprecision(10); }
  template <class T>
  Detail& operator<<(const T& v) {
    os_ << v;
    return *this;
  }
  std::string str() const { return os_.str(); }

 private:
  std::ostringstream os_;
};

double rel_err(double got, double want) { return std::abs(got - want) / std::abs(want); }

Verdict_ gamma_normalization(const CheckOptions& o) {
  const double g1 = gamma_quadrature(1.0, o.tol).value;
  double worst = 0.0;
  double worst_x = 0.0;
  for (int i = 0; i < 20; ++i) {
    const double x = 0.1 + (i + 0.5) * 4.9 / 20.0;
    const double gx = gamma_quadrature(x, o.tol).value;
    const double gx1 = gamma_quadrature(x + 1.0, o.tol).value;
    const double r = std::abs(gx1 - x * gx) / gx1;
    if (r > worst) {
      worst = r;
      worst_x = x;
    }
  }
  const bool ok = std::abs(g1 - 1.0) <= 1e-8 && worst <= 1e-6;
  return {ok, (Detail() << "Gamma(1)=" << g1 << " (want 1 +- 1e-8); max |G(x+1)-xG(x)|/G(x+1)="
                        << worst << " at x=" << worst_x << " (want <= 1e-6)")
                  .str()};
}

Verdict_ factorial_interpolation(const CheckOptions& o) {
  const Representer id = builtin::identity();
  double factorial = 1.0;
  double worst = 0.0;
  for (int n = 2; n <= 10; ++n) {
    factorial *= (n - 1);
    worst = std::max(worst, rel_err(extend(id, n, o.tol), factorial));
  }
  return {worst <= 1e-5,
          (Detail() << "max relative error vs (n-1)! over n=2..10: " << worst << " (want <= 1e-5)").str()};
}

Verdict_ product_quadrature_agreement(const CheckOptions& o) {
  const Representer id = builtin::identity();
  double worst = 0.0;
  for (double x : {0.25, 0.5, 1.5, 3.7}) {
    const double q = gamma_quadrature(x, o.tol).value;
    worst = std::max(worst, std::abs(extend(id, x, o.tol) - q) / q);
  }
  constexpr double kHalf = 1.7724539;
  const double prod_half = extend(id, 0.5, o.tol);
  const double quad_half = gamma_quadrature(0.5, o.tol).value;
  const bool ok = worst <= 1e-4 && std::abs(prod_half - kHalf) <= 1e-5 &&
                  std::abs(quad_half - kHalf) <= 1e-5;
  return {ok, (Detail() << "max |product-quadrature|/Gamma=" << worst << " (want <= 1e-4); Gamma(0.5): "
                        << "product " << prod_half << ", quadrature " << quad_half
                        << " (want 1.7724539 +- 1e-5)")
                  .str()};
}

Verdict_ sandwich(const CheckOptions& o) {
  const Representer id = builtin::identity();
  for (double x : {0.25, 0.5, 0.75}) {
    const double q = gamma_quadrature(x, o.tol).value;
    double prev_width = kInf;
    for (long n = 2; n <= 1024; n *= 2) {
      const Bounds b = sandwich_bounds(id, x, n);
      const double width = b.upper - b.lower;
      if (!(b.lower <= q && q <= b.upper))
        return {false, (Detail() << "x=" << x << " n=" << n << ": [" << b.lower << ", " << b.upper
                                 << "] misses Gamma=" << q)
                           .str()};
      if (!(width < prev_width))
        return {false, (Detail() << "x=" << x << " n=" << n << ": width " << width
                                 << " did not shrink from " << prev_width)
                           .str()};
      prev_width = width;
    }
  }
  return {true, "lower <= Gamma(x) <= upper and shrinking widths for x in {0.25,0.5,0.75}, n=2..1024"};
}

Verdict_ series_criterion(const CheckOptions& o) {
  const Representer id = builtin::identity();
  const double series = logconvexity_series(id, 1.0, 1e-8);
  const double fd = d2_log(artin_function(id, o.tol), 1.0);
  const bool ok = std::abs(series - 1.644934) <= 1e-5 && std::abs(series - fd) <= 1e-3;
  return {ok, (Detail() << "series(1)=" << series << " (want 1.644934 +- 1e-5); d2_log of product Gamma="
                        << fd << " (want within 1e-3 of the series)")
                  .str()};
}

Verdict_ fibonacci(const CheckOptions& o) {
  double prev = 0.0;
  double cur = 1.0;
  double worst_int = std::abs(fib_real(0.0) - prev);
  for (int n = 1; n <= 30; ++n) {
    worst_int = std::max(worst_int, std::abs(fib_real(n) - cur));
    const double next = prev + cur;
    prev = cur;
    cur = next;
  }
  std::mt19937_64 rng(o.seed);
  std::uniform_real_distribution<double> pick(-5.0, 5.0);
  double worst_rec = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double x = pick(rng);
    worst_rec = std::max(worst_rec, std::abs(fib_real(x + 2.0) - fib_real(x + 1.0) - fib_real(x)));
  }
  const auto changes = fib_d2_signchanges(0.0, 4.0, 4000);
  const RealFunction f = fibonacci_function();
  bool pos = false;
  bool neg = false;
  for (double x : uniform_points(0.1, 4.0, 512)) {
    if (!(f(x) > 0.0)) continue;
    const double d = d2_log(f, x);
    pos = pos || d > 0.0;
    neg = neg || d < 0.0;
  }
  const bool ok = worst_int <= 1e-9 && worst_rec <= 1e-10 && changes.size() == 4 && pos && neg;
  return {ok, (Detail() << "integers max err " << worst_int << " (<= 1e-9); recursion max err " << worst_rec
                        << " (<= 1e-10); f'' sign changes on [0,4]: " << changes.size()
                        << " (want 4); d2_log signs on (0.1,4): " << (pos ? "+" : "") << (neg ? "-" : ""))
                  .str()};
}

Verdict_ convexity_calculus(const CheckOptions& o) {
  std::mt19937_64 rng(o.seed + 1);
  std::uniform_real_distribution<double> coef(-3.0, 3.0);
  std::uniform_real_distribution<double> pt(-5.0, 5.0);
  int asym = 0;
  for (int i = 0; i < 1000; ++i) {
    const RealFunction f = fn::quadratic(coef(rng), coef(rng), coef(rng));
    const double x1 = pt(rng);
    const double x2 = pt(rng);
    if (std::abs(x1 - x2) < 1e-6) continue;
    if (diff_quotient(f, x1, x2) != diff_quotient(f, x2, x1)) ++asym;
  }
  int sign_mismatch = 0;
  std::uniform_real_distribution<double> curv(0.1, 5.0);
  for (int i = 0; i < 200; ++i) {
    const double a = (i % 2 == 0 ? 1.0 : -1.0) * curv(rng);
    const RealFunction f = fn::quadratic(a, coef(rng), coef(rng));
    std::array<double, 3> xs{};
    do {
      xs = {pt(rng), pt(rng), pt(rng)};
    } while (std::abs(xs[0] - xs[1]) < 1e-3 || std::abs(xs[0] - xs[2]) < 1e-3 ||
             std::abs(xs[1] - xs[2]) < 1e-3);
    std::sort(xs.begin(), xs.end());
    do {
      const double v = iter_diff_quotient(f, xs[0], xs[1], xs[2]);
      if ((v > 0.0) != (a > 0.0) || v == 0.0) ++sign_mismatch;
    } while (std::next_permutation(xs.begin(), xs.end()));
  }
  const RealFunction e = fn::exponential();
  double q_exp = 0.0;
  for (double x : {-2.0, 0.0, 1.0, 3.0}) q_exp = std::max(q_exp, std::abs(q_determinant(e, x)));
  const double q_sq = q_determinant(fn::square(), 1.0);
  const bool ok = asym == 0 && sign_mismatch == 0 && q_exp <= 1e-8 && std::abs(q_sq + 2.0) <= 1e-6;
  return {ok, (Detail() << "asymmetric quotients " << asym << "/1000; sign mismatches " << sign_mismatch
                        << "/1200; max |q(exp)|=" << q_exp << "; q(x^2)(1)=" << q_sq)
                  .str()};
}

Verdict_ closure(const CheckOptions& o) {
  std::mt19937_64 rng(o.seed + 2);
  std::uniform_real_distribution<double> a_dist(0.0, 2.0);
  std::uniform_real_distribution<double> bc_dist(-1.0, 1.0);
  const std::vector<double> xs = uniform_points(-1.5, 1.5, 16);
  double worst = kInf;
  for (int i = 0; i < 20; ++i) {
    const RealFunction f = fn::exp_quadratic(a_dist(rng), bc_dist(rng), bc_dist(rng));
    const RealFunction g = fn::exp_quadratic(a_dist(rng), bc_dist(rng), bc_dist(rng));
    const RealFunction s = fn::sum(f, g);
    const RealFunction p = fn::product(f, g);
    for (double x : xs) worst = std::min({worst, d2_log(s, x), d2_log(p, x)});
    for (double c : {0.5, -0.5, 2.0}) {
      const RealFunction t = fn::shifted(f, c);
      const RealFunction sc = fn::scaled(f, c);
      for (double x : xs) worst = std::min({worst, d2_log(t, x - c), d2_log(sc, x / c)});
    }
  }
  return {worst >= -1e-8, (Detail() << "smallest d2_log over sums, products, shifts and scalings: " << worst
                                    << " (want >= -1e-8)")
                              .str()};
}

Verdict_ curvature_check(const CheckOptions&) {
  const Representer id = builtin::identity();
  const RealFunction h([](double x) { return x * x; });
  double worst = 0.0;
  for (double x : {0.5, 1.0, 2.0}) {
    const double k = curvature(id, fn::identity(), x);
    const double h1 = fd_derivative(h, x, 1);
    const double h2 = fd_derivative(h, x, 2);
    const double classical = h2 / std::pow(1.0 + h1 * h1, 1.5);
    worst = std::max(worst, rel_err(k, classical));
  }
  return {worst <= 1e-5, (Detail() << "max relative difference to the curvature of x^2: " << worst
                                   << " (want <= 1e-5)")
                             .str()};
}

// Five-point central differences, fourth order in h.
double five_point(const RealFunction& f, double x, int order) {
  const double h = 1e-3 * std::max(1.0, std::abs(x));
  const double m2 = f(x - 2.0 * h), m1 = f(x - h), p1 = f(x + h), p2 = f(x + 2.0 * h);
  if (order == 1) return (-p2 + 8.0 * p1 - 8.0 * m1 + m2) / (12.0 * h);
  return (-p2 + 16.0 * p1 - 30.0 * f(x) + 16.0 * m1 - m2) / (12.0 * h * h);
}

template <class E>
bool raises(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const E&) {
    return true;
  } catch (const std::exception&) {
    return false;
  }
  return false;
}

Verdict_ divergence(const CheckOptions& o) {
  const Representer ex = parse_representer("exp(x)");
  const Representer id = builtin::identity();
  const bool div = raises<DivergenceError>([&] { evaluate(ex, 0.5, o.tol, kDefaultMaxN); });
  const bool pole0 = raises<PoleError>([&] { extend(id, 0.0, o.tol); });
  const bool pole1 = raises<PoleError>([&] { extend(id, -1.0, o.tol); });
  return {div && pole0 && pole1, (Detail() << "exp(x): DivergenceError " << (div ? "raised" : "missing")
                                           << "; Gamma pole at 0: " << (pole0 ? "raised" : "missing")
                                           << "; at -1: " << (pole1 ? "raised" : "missing"))
                                     .str()};
}

Verdict_ parser(const CheckOptions&) {
  const std::map<std::string, double> params = {{"c", 1.5}, {"a", 0.3}, {"b", -0.2}};
  int round_trip_failures = 0;
  double worst = 0.0;
  std::string worst_src;
  const std::vector<double> xs = uniform_points(0.55, 7.95, 16);
  for (const auto& src : parser_corpus()) {
    const ExprPtr tree = parse_expression(src);
    if (!structurally_equal(tree, parse_expression(to_string(tree)))) ++round_trip_failures;
    const RealFunction f = function_from_expr(substitute(tree, params));
    for (double x : xs) {
      for (int order : {1, 2}) {
        const double sym = f.derivative(x, order);
        const double num = five_point(f, x, order);
        const double err = std::abs(sym - num) / std::max(1.0, std::abs(sym));
        if (err > worst) {
          worst = err;
          worst_src = src;
        }
      }
    }
  }
  int offset_failures = 0;
  for (const auto& bad : malformed_corpus()) {
    try {
      parse_expression(bad.src);
      ++offset_failures;
    } catch (const ParseError& e) {
      if (e.offset() != bad.offset) ++offset_failures;
    }
  }
  const bool ok = round_trip_failures == 0 && worst <= 1e-6 && offset_failures == 0;
  return {ok, (Detail() << "round-trip failures " << round_trip_failures << "/" << parser_corpus().size()
                        << "; worst symbolic vs finite-difference error " << worst << " ('" << worst_src
                        << "'); malformed offset failures " << offset_failures << "/"
                        << malformed_corpus().size())
                  .str()};
}

struct Criterion {
  int id;
  const char* tag;
  const char* name;
  double max_seconds;  // 0: no runtime bound
  std::function<Verdict_(const CheckOptions&)> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all = {
      {1, "gamma", "Gamma normalization and recursion", 5.0, gamma_normalization},
      {2, "factorial", "factorial interpolation", 10.0, factorial_interpolation},
      {3, "cross-oracle", "product/quadrature agreement", 0.0, product_quadrature_agreement},
      {4, "sandwich", "sandwich bounds bracket Gamma", 0.0, sandwich},
      {5, "series", "(log f)'' series", 0.0, series_criterion},
      {6, "fibonacci", "Fibonacci real extension", 0.0, fibonacci},
      {7, "convexity", "convexity calculus", 0.0, convexity_calculus},
      {8, "closure", "closure of log-convexity", 0.0, closure},
      {9, "curvature", "curvature of Artin functions", 0.0, curvature_check},
      {10, "divergence", "divergence and pole handling", 0.0, divergence},
      {11, "parser", "expression parser", 0.0, parser},
  };
  return all;
}

}  // namespace

std::vector<std::string> check_tags() {
  std::vector<std::string> out;
  for (const auto& c : criteria()) out.emplace_back(c.tag);
  return out;
}

std::vector<CheckOutcome> run_checks(const CheckOptions& options) {
  std::vector<CheckOutcome> out;
  for (const auto& c : criteria()) {
    if (options.only && *options.only != c.tag) continue;
    CheckOutcome r{c.id, c.tag, c.name, false, {}, 0.0};
    const auto start = std::chrono::steady_clock::now();
    try {
      const Verdict_ v = c.run(options);
      r.passed = v.passed;
      r.detail = v.detail;
    } catch (const ToleranceNotMet& e) {
      r.detail = std::string("ToleranceNotMet: ") + e.what();
    } catch (const std::exception& e) {
      r.detail = std::string("error: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.max_seconds > 0.0 && r.seconds >= c.max_seconds) {
      r.passed = false;
      r.detail += (Detail() << "; runtime " << r.seconds << " s exceeds " << c.max_seconds << " s").str();
    }
    out.push_back(std::move(r));
  }
  return out;
}

nlohmann::json to_json(const std::vector<CheckOutcome>& outcomes) {
  auto checks = nlohmann::json::array();
  int passed = 0;
  for (const auto& o : outcomes) {
    checks.push_back({{"id", o.id}, {"tag", o.tag}, {"name", o.name}, {"passed", o.passed}, {"detail", o.detail}});
    passed += o.passed ? 1 : 0;
  }
  return {{"checks", checks},
          {"passed", passed},
          {"failed", static_cast<int>(outcomes.size()) - passed},
          {"all_passed", passed == static_cast<int>(outcomes.size())}};
}

const std::vector<std::string>& parser_corpus() {
  static const std::vector<std::string> corpus = {
      "x",
      "x^2",
      "2+3*x^2",
      "x^c",
      "-x^2 + 4*x",
      "exp(x)",
      "exp(-x)",
      "log(x)",
      "sin(x)",
      "cos(x)",
      "sqrt(x)",
      "x*(x+1)",
      "(x+1)/x",
      "1/x",
      "x^-1",
      "2^x",
      "x^x",
      "phi^x - cos(pi*x)*phi^(-x)",
      "e^x",
      "x^(1/2)",
      "-(x-3)^2",
      "exp(-x^2/8)",
      "log(1+x^2)",
      "sin(x)*cos(x)",
      "x/(1+x)",
      "a*x^2 + b*x + 1",
      "sqrt(x^2 + 1)",
      "x^2^0.5",
      "(x - 1)*(x - 2)*(x - 3)",
      "exp(sin(x)) / x",
      "3.5e-1*x + .25",
      "2^-x",
  };
  return corpus;
}

const std::vector<MalformedCase>& malformed_corpus() {
  static const std::vector<MalformedCase> cases = {
      {"x^(2", 4}, {"x^(", 3},    {"2+", 2},     {"(x", 2},      {"x)", 1},
      {"3*/x", 2}, {"sin x", 4}, {"foo(x)", 0}, {"x $ 2", 2}, {"sqrt()", 5},
  };
  return cases;
}

}  // namespace logcvx
