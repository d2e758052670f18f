#pragma once

#include <vector>

#include "logcvx/funcore.hpp"
#include "logcvx/representer.hpp"

namespace logcvx {

// Log-convex solutions of f(x+1) = g(x) f(x) normalised by f(1) = 1.
//
// On the base interval (0,1] the solution is bracketed by
//
//   p_{n+1}(x) g(n)^x  <=  f(x)  <=  p_n(x) g(n)^x,
//   p_n(x) = prod_{k=0}^{n-1} g(k) / g(x+k),   g(0) := 1,
//
// and the two bounds differ by the factor g(x+n)/g(n), which must tend to 1.
// Everything else is reached from (0,1] through the functional equation.

inline constexpr int kDefaultMaxN = 1 << 20;

struct ProductState {
  long n = 0;
  double p_n = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  double value = 0.0;
  double rel_gap = 0.0;  // |g(x+n)/g(n) - 1|
  bool converged = false;
};

struct InterpolationTarget {
  long n;
  double a_n;  // prod_{k=1}^{n-1} g(k)
};

struct Bounds {
  double lower;
  double upper;
};

/// prod_{k=0}^{n-1} g(k)/g(x+k); every occurrence of g(0) is read as 1.
double partial_product(const Representer& g, double x, long n);

/// The bracket at truncation n, for 0 < x <= 1 and n >= 2.
Bounds sandwich_bounds(const Representer& g, double x, long n);

/// Doubles n from 4 until rel_gap and (upper-lower)/value both drop below
/// tol, or max_n is reached (converged = false). The returned value
/// interpolates log f between the bounds with weight (1+x)/2 on the upper
/// one, which cancels the leading 1/n term of the truncation error and is
/// exact at x = 1. Throws DivergenceError when rel_gap fails to shrink over
/// three successive doublings.
ProductState evaluate(const Representer& g, double x, double tol, long max_n = kDefaultMaxN);

struct ExtendResult {
  double value = 0.0;
  double lower = 0.0;  // base bracket carried through the same shift factor
  double upper = 0.0;
  double base_x = 0.0;  // x reduced into (0,1]
  long shift = 0;       // x = base_x + shift
  ProductState base;
};

/// f(x) for any real x: reduce to x0 in (0,1], evaluate there, then multiply
/// (shift > 0) or divide (shift < 0) by the chain of g values. PoleError when
/// a divisor vanishes.
ExtendResult extend_detailed(const Representer& g, double x, double tol, long max_n = kDefaultMaxN);
double extend(const Representer& g, double x, double tol, long max_n = kDefaultMaxN);

/// x -> extend(g, x) as a RealFunction (finite differences for derivatives).
RealFunction artin_function(const Representer& g, double tol, long max_n = kDefaultMaxN);

/// a_1..a_{n_max}
std::vector<InterpolationTarget> interpolation_targets(const Representer& g, long n_max);

/// sum_{k>=0} [ g'(x+k)^2 / g(x+k)^2 - g''(x+k) / g(x+k) ] plus a tail
/// estimate that assumes the terms decay like k^-2.
double logconvexity_series(const Representer& g, double x, double tol);

/// sum_{k<terms} [ f'(x+k)^2 f(x+k)^-2 - g''(x+k) g(x+k)^-2 ]
double bilinear_a(const RealFunction& f, const RealFunction& g, double x, long terms);

}  // namespace logcvx
