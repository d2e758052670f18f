#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <vector>

namespace logcvx {

using ScalarFn = std::function<double(double)>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Open interval (lo, hi); either end may be infinite.
struct Interval {
  double lo = -kInf;
  double hi = kInf;

  bool contains(double x) const noexcept { return x > lo && x < hi; }
  bool contains(double a, double b) const noexcept { return contains(a) && contains(b); }
};

/// A scalar function of one real variable with optional exact derivatives.
///
/// Callers needing f' or f'' go through derivative(), which uses the exact
/// derivative when one was supplied and a central difference otherwise.
class RealFunction {
 public:
  explicit RealFunction(ScalarFn eval, Interval domain = {}, ScalarFn d1 = {}, ScalarFn d2 = {});

  /// Raw evaluation, no checks.
  double operator()(double x) const { return eval_(x); }

  /// Evaluation that throws NonFiniteError on NaN/inf.
  double value(double x) const;

  const Interval& domain() const noexcept { return domain_; }
  bool has_d1() const noexcept { return static_cast<bool>(d1_); }
  bool has_d2() const noexcept { return static_cast<bool>(d2_); }
  bool has_exact_derivatives() const noexcept { return has_d1() && has_d2(); }

  /// order 0, 1 or 2.
  double derivative(double x, int order) const;

  const ScalarFn& eval_fn() const noexcept { return eval_; }
  const ScalarFn& d1_fn() const noexcept { return d1_; }
  const ScalarFn& d2_fn() const noexcept { return d2_; }

 private:
  ScalarFn eval_;
  Interval domain_;
  ScalarFn d1_;
  ScalarFn d2_;
};

/// cbrt(eps)*max(1,|x|) for order 1, eps^(1/4)*max(1,|x|) for order 2.
double default_step(double x, int order);

/// Central difference of order 1 or 2 with step h.
double fd_derivative(const RealFunction& f, double x, int order, double h);
double fd_derivative(const RealFunction& f, double x, int order);

struct GridPoint {
  double x;
  double y;
};

struct Grid {
  double a = 0.0;
  double b = 0.0;
  int n = 0;
  std::vector<GridPoint> points;
};

/// n uniformly spaced samples on [a,b], both endpoints included.
Grid sample_grid(const RealFunction& f, double a, double b, int n);

/// Abscissae a + i(b-a)/(n-1), last one pinned to b.
std::vector<double> uniform_points(double a, double b, int n);

namespace fn {

RealFunction identity();
RealFunction constant(double v);
RealFunction square();
RealFunction exponential();
/// exp(a x^2 + b x + c); log-convex whenever a >= 0.
RealFunction exp_quadratic(double a, double b, double c);
/// a x^2 + b x + c
RealFunction quadratic(double a, double b, double c);

RealFunction sum(const RealFunction& f, const RealFunction& g);
RealFunction product(const RealFunction& f, const RealFunction& g);
/// x -> f(x + c)
RealFunction shifted(const RealFunction& f, double c);
/// x -> f(c x), c != 0
RealFunction scaled(const RealFunction& f, double c);
/// x -> exp(f(x))
RealFunction exp_of(const RealFunction& f);

}  // namespace fn

}  // namespace logcvx
