#include "logcvx/funcore.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "logcvx/errors.hpp"

namespace logcvx {

namespace {

double checked(double v, double x, const char* what) {
  if (!std::isfinite(v)) {
    std::ostringstream os;
    os << what << " is not finite at x=" << x;
    throw NonFiniteError(os.str(), x);
  }
  return v;
}

}  // namespace

RealFunction::RealFunction(ScalarFn eval, Interval domain, ScalarFn d1, ScalarFn d2)
    : eval_(std::move(eval)), domain_(domain), d1_(std::move(d1)), d2_(std::move(d2)) {
  if (!eval_) throw DomainError("RealFunction needs an evaluator");
}

double RealFunction::value(double x) const { return checked(eval_(x), x, "f(x)"); }

double RealFunction::derivative(double x, int order) const {
  switch (order) {
    case 0:
      return value(x);
    case 1:
      return d1_ ? checked(d1_(x), x, "f'(x)") : fd_derivative(*this, x, 1);
    case 2:
      return d2_ ? checked(d2_(x), x, "f''(x)") : fd_derivative(*this, x, 2);
    default:
      throw DomainError("derivative order must be 0, 1 or 2");
  }
}

double default_step(double x, int order) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  const double scale = std::max(1.0, std::abs(x));
  return (order == 1 ? std::cbrt(eps) : std::sqrt(std::sqrt(eps))) * scale;
}

double fd_derivative(const RealFunction& f, double x, int order, double h) {
  if (order != 1 && order != 2) throw DomainError("fd_derivative: order must be 1 or 2");
  if (!(h > 0.0)) throw DomainError("fd_derivative: step must be positive");
  if (!f.domain().contains(x - h, x + h)) {
    std::ostringstream os;
    os << "fd_derivative: stencil [" << x - h << ", " << x + h << "] leaves the domain";
    throw DomainError(os.str());
  }
  const double fp = f.value(x + h);
  const double fm = f.value(x - h);
  if (order == 1) return (fp - fm) / (2.0 * h);
  const double f0 = f.value(x);
  return (fp - 2.0 * f0 + fm) / (h * h);
}

double fd_derivative(const RealFunction& f, double x, int order) {
  return fd_derivative(f, x, order, default_step(x, order));
}

std::vector<double> uniform_points(double a, double b, int n) {
  std::vector<double> xs(static_cast<std::size_t>(n));
  const double step = (b - a) / (n - 1);
  for (int i = 0; i < n; ++i) xs[static_cast<std::size_t>(i)] = a + i * step;
  xs.back() = b;
  return xs;
}

Grid sample_grid(const RealFunction& f, double a, double b, int n) {
  if (!(a < b)) throw DomainError("sample_grid: need a < b");
  if (n < 2) throw DomainError("sample_grid: need n >= 2");
  if (!f.domain().contains(a, b)) throw DomainError("sample_grid: [a,b] not inside the domain");
  Grid grid{a, b, n, {}};
  grid.points.reserve(static_cast<std::size_t>(n));
  for (double x : uniform_points(a, b, n)) grid.points.push_back({x, f.value(x)});
  return grid;
}

namespace fn {

RealFunction identity() {
  return RealFunction([](double x) { return x; }, {}, [](double) { return 1.0; },
                      [](double) { return 0.0; });
}

RealFunction constant(double v) {
  return RealFunction([v](double) { return v; }, {}, [](double) { return 0.0; },
                      [](double) { return 0.0; });
}

RealFunction square() {
  return RealFunction([](double x) { return x * x; }, {}, [](double x) { return 2.0 * x; },
                      [](double) { return 2.0; });
}

RealFunction exponential() {
  return RealFunction([](double x) { return std::exp(x); }, {}, [](double x) { return std::exp(x); },
                      [](double x) { return std::exp(x); });
}

RealFunction quadratic(double a, double b, double c) {
  return RealFunction([=](double x) { return (a * x + b) * x + c; }, {},
                      [=](double x) { return 2.0 * a * x + b; }, [=](double) { return 2.0 * a; });
}

RealFunction exp_quadratic(double a, double b, double c) {
  return exp_of(quadratic(a, b, c));
}

RealFunction sum(const RealFunction& f, const RealFunction& g) {
  const Interval dom{std::max(f.domain().lo, g.domain().lo), std::min(f.domain().hi, g.domain().hi)};
  auto eval = [f, g](double x) { return f(x) + g(x); };
  if (!f.has_exact_derivatives() || !g.has_exact_derivatives()) return RealFunction(eval, dom);
  return RealFunction(
      eval, dom, [f, g](double x) { return f.derivative(x, 1) + g.derivative(x, 1); },
      [f, g](double x) { return f.derivative(x, 2) + g.derivative(x, 2); });
}

RealFunction product(const RealFunction& f, const RealFunction& g) {
  const Interval dom{std::max(f.domain().lo, g.domain().lo), std::min(f.domain().hi, g.domain().hi)};
  auto eval = [f, g](double x) { return f(x) * g(x); };
  if (!f.has_exact_derivatives() || !g.has_exact_derivatives()) return RealFunction(eval, dom);
  return RealFunction(
      eval, dom,
      [f, g](double x) { return f.derivative(x, 1) * g(x) + f(x) * g.derivative(x, 1); },
      [f, g](double x) {
        return f.derivative(x, 2) * g(x) + 2.0 * f.derivative(x, 1) * g.derivative(x, 1) +
               f(x) * g.derivative(x, 2);
      });
}

RealFunction shifted(const RealFunction& f, double c) {
  const Interval dom{f.domain().lo - c, f.domain().hi - c};
  auto eval = [f, c](double x) { return f(x + c); };
  if (!f.has_exact_derivatives()) return RealFunction(eval, dom);
  return RealFunction(
      eval, dom, [f, c](double x) { return f.derivative(x + c, 1); },
      [f, c](double x) { return f.derivative(x + c, 2); });
}

RealFunction scaled(const RealFunction& f, double c) {
  if (c == 0.0) throw DomainError("scaled: factor must be nonzero");
  Interval dom{f.domain().lo / c, f.domain().hi / c};
  if (c < 0.0) std::swap(dom.lo, dom.hi);
  auto eval = [f, c](double x) { return f(c * x); };
  if (!f.has_exact_derivatives()) return RealFunction(eval, dom);
  return RealFunction(
      eval, dom, [f, c](double x) { return c * f.derivative(c * x, 1); },
      [f, c](double x) { return c * c * f.derivative(c * x, 2); });
}

RealFunction exp_of(const RealFunction& f) {
  auto eval = [f](double x) { return std::exp(f(x)); };
  if (!f.has_exact_derivatives()) return RealFunction(eval, f.domain());
  return RealFunction(
      eval, f.domain(), [f](double x) { return std::exp(f(x)) * f.derivative(x, 1); },
      [f](double x) {
        const double d1 = f.derivative(x, 1);
        return std::exp(f(x)) * (f.derivative(x, 2) + d1 * d1);
      });
}

}  // namespace fn

}  // namespace logcvx
