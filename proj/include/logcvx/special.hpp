#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "logcvx/convexity.hpp"
#include "logcvx/funcore.hpp"
#include "logcvx/representer.hpp"

namespace logcvx {

// ---------------------------------------------------------------------------
// Quadrature

struct QuadratureResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  int panels = 0;
};

inline constexpr int kPanelBudget = 1 << 20;

/// Adaptive Simpson on a finite [a,b]. Converges when the accumulated
/// Richardson estimate is below tol * max(1, |integral|); throws
/// ToleranceNotMet once `budget` panels have been split without success.
QuadratureResult adaptive_simpson(const std::function<double(double)>& fn, double a, double b,
                                  double tol, int budget = kPanelBudget);

/// int_a^b phi(t) t^(x-1) dt for 0 <= a < b <= inf.
///
/// An infinite upper limit is mapped to (0,1) by t = a + u/(1-u). When a = 0
/// and x < 1 the piece [0, c], c = min(1, b), is integrated in s with
/// t = c s^(1/x), which removes the endpoint singularity.
QuadratureResult mellin_integral(const RealFunction& phi, double a, double b, double x, double tol);

/// Gamma(x) = int_0^inf e^-t t^(x-1) dt, x > 0.
QuadratureResult gamma_quadrature(double x, double tol);

/// Samples I(x) = int_a^b phi(t) t^(x-1) dt at each of `xs` and records
/// q(I) and (log I)'' there (central differences of the quadrature).
ConvexityReport mellin_logconvex_probe(const RealFunction& phi, double a, double b,
                                       const std::vector<double>& xs, double tol);

/// h * sum_{k<n} f2(a + k h, x), h = (b - a)/n.
double riemann_sum_Fn(const std::function<double(double, double)>& f2, double a, double b, long n,
                      double x);

// ---------------------------------------------------------------------------
// Fibonacci

struct FibClosed {
  double raw = 0.0;
  std::optional<double> rounded;  // set when raw is within 1e-9 of an integer
};

/// Binet form (phi^n - (-1)^n phi^-n) / sqrt(5), so F_0 = 0, F_1 = 1.
FibClosed fib_closed(long n);

/// Real part of the Binet form at real x: (phi^x - cos(pi x) phi^-x) / sqrt(5).
double fib_real(double x);
double fib_real_d1(double x);
double fib_real_d2(double x);
RealFunction fibonacci_function();

/// (2/sqrt 5) sinh(n ln phi) for even n, (2/sqrt 5) cosh(n ln phi) for odd n.
double fib_integer_hyperbolic(long n);

/// Sign changes of fib_real'' on a grid of grid_n points over [a,b].
std::vector<double> fib_d2_signchanges(double a, double b, int grid_n);

// ---------------------------------------------------------------------------
// Curvature and multiplicators

/// (g'' f + 2 g' f' + g f'') / (1 + (g' f + g f')^2)^(3/2)
double curvature(const Representer& g, const RealFunction& f, double x);
double curvature(const RealFunction& g, const RealFunction& f, double x);

struct MultiplierCheck {
  bool holds = true;
  std::optional<double> witness;
};

/// q(m f) >= -1e-7 on a grid of grid_n points over [a,b].
MultiplierCheck check_inner_multiplicator(const RealFunction& f, const RealFunction& m, double a,
                                          double b, int grid_n = 512);

/// Second central difference of m log f >= -1e-7 on the grid.
MultiplierCheck check_outer_multiplier(const RealFunction& f, const RealFunction& m, double a,
                                       double b, int grid_n = 512);

/// m'' log f + 2 m' f'/f + m (log f)''
double outer_second_derivative(const RealFunction& f, const RealFunction& m, double x);

}  // namespace logcvx
