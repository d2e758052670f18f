#include "logcvx/bohr_mollerup.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "logcvx/detail/compensated_sum.hpp"
#include "logcvx/errors.hpp"

namespace logcvx {

namespace {

constexpr double kPoleThreshold = 1e-300;

// Running product kept as mantissa * 2^exponent so long products of
// representer ratios neither overflow nor underflow.
class ScaledProduct {
 public:
  void multiply(double r) {
    mantissa_ *= r;
    const double m = std::abs(mantissa_);
    if (m > 0x1p500 || (m < 0x1p-500 && m > 0.0)) {
      int e = 0;
      mantissa_ = std::frexp(mantissa_, &e);
      exponent_ += e;
    }
  }
  void divide(double r) { multiply(1.0 / r); }
  double log_abs() const { return std::log(std::abs(mantissa_)) + exponent_ * std::numbers::ln2; }
  bool negative() const { return mantissa_ < 0.0; }
  double value() const {
    const long e = std::clamp(exponent_, -4000L, 4000L);
    return std::ldexp(mantissa_, static_cast<int>(e));
  }

 private:
  double mantissa_ = 1.0;
  long exponent_ = 0;
};

// g with the convention g(0) := 1.
double g_conv(const Representer& g, double t) { return t == 0.0 ? 1.0 : g(t); }

double finite_g(const Representer& g, double t) {
  const double v = g(t);
  if (!std::isfinite(v)) {
    std::ostringstream os;
    os << "representer '" << g.name() << "' is not finite at x=" << t;
    throw NonFiniteError(os.str(), t);
  }
  return v;
}

[[noreturn]] void throw_pole(const Representer& g, double t, long k) {
  std::ostringstream os;
  os << "representer '" << g.name() << "' vanishes at x=" << t << " (k=" << k << ")";
  throw PoleError(os.str(), k);
}

void require_base_interval(double x, const char* who) {
  if (!(x > 0.0 && x <= 1.0)) {
    std::ostringstream os;
    os << who << ": x=" << x << " is outside (0,1]";
    throw DomainError(os.str());
  }
}

}  // namespace

double partial_product(const Representer& g, double x, long n) {
  if (n < 1) throw DomainError("partial_product: need n >= 1");
  ScaledProduct p;
  for (long k = 0; k < n; ++k) {
    const double t = x + static_cast<double>(k);
    const double den = g_conv(g, t);
    if (std::abs(den) < kPoleThreshold) throw_pole(g, t, k);
    p.multiply(g_conv(g, static_cast<double>(k)) / den);
  }
  return p.value();
}

Bounds sandwich_bounds(const Representer& g, double x, long n) {
  require_base_interval(x, "sandwich_bounds");
  if (n < 2) throw DomainError("sandwich_bounds: need n >= 2");
  const double pn = partial_product(g, x, n);
  const double pn1 = partial_product(g, x, n + 1);
  const double gx = std::pow(g(static_cast<double>(n)), x);
  return {pn1 * gx, pn * gx};
}

ProductState evaluate(const Representer& g, double x, double tol, long max_n) {
  require_base_interval(x, "evaluate");
  if (!(tol > 0.0)) throw DomainError("evaluate: tol must be positive");
  if (max_n < 4) throw DomainError("evaluate: max_n must be at least 4");

  ScaledProduct p;
  long built = 0;
  long n = 4;
  double best_gap = std::numeric_limits<double>::infinity();
  int stalled = 0;
  ProductState st;
  for (;;) {
    for (; built < n; ++built) {
      const double t = x + static_cast<double>(built);
      const double den = finite_g(g, t);
      if (std::abs(den) < kPoleThreshold) throw_pole(g, t, built);
      const double num = built == 0 ? 1.0 : finite_g(g, static_cast<double>(built));
      if (!(den > 0.0) || !(num > 0.0)) {
        std::ostringstream os;
        os << "evaluate: representer '" << g.name() << "' is not positive near k=" << built;
        throw NonPositiveError(os.str());
      }
      p.multiply(num / den);
    }
    const double gn = finite_g(g, static_cast<double>(n));
    const double gxn = finite_g(g, x + static_cast<double>(n));
    if (!(gn > 0.0) || !(gxn > 0.0))
      throw NonPositiveError("evaluate: representer is not positive at the truncation point");

    const double log_upper = p.log_abs() + x * std::log(gn);
    const double log_lower = log_upper + std::log(gn) - std::log(gxn);
    const double log_value = log_lower + 0.5 * (1.0 + x) * (log_upper - log_lower);

    st.n = n;
    st.p_n = p.value();
    st.lower = std::exp(log_lower);
    st.upper = std::exp(log_upper);
    st.value = std::exp(log_value);
    st.rel_gap = std::abs(gxn / gn - 1.0);
    const double width = std::abs(st.upper - st.lower) / st.value;
    if (st.rel_gap < tol && width < tol) {
      st.converged = true;
      return st;
    }

    if (st.rel_gap < best_gap * (1.0 - 1e-6)) {
      best_gap = st.rel_gap;
      stalled = 0;
    } else if (++stalled >= 3) {
      std::ostringstream os;
      os << "representer '" << g.name() << "': g(x+n)/g(n) does not approach 1 (rel_gap "
         << st.rel_gap << " at n=" << n << ")";
      throw DivergenceError(os.str());
    }
    if (n >= max_n) break;
    n = std::min(2 * n, max_n);
  }
  st.converged = false;
  return st;
}

ExtendResult extend_detailed(const Representer& g, double x, double tol, long max_n) {
  if (!std::isfinite(x)) throw DomainError("extend: x must be finite");
  ExtendResult r;
  r.shift = static_cast<long>(std::ceil(x)) - 1;
  r.base_x = x - static_cast<double>(r.shift);
  if (r.base_x <= 0.0) {  // rounding in x - shift for negative x
    r.base_x += 1.0;
    r.shift -= 1;
  }

  ScaledProduct chain;
  if (r.shift > 0) {
    for (long k = 0; k < r.shift; ++k) chain.multiply(finite_g(g, r.base_x + static_cast<double>(k)));
  } else {
    for (long k = 0; k < -r.shift; ++k) {
      const double t = x + static_cast<double>(k);
      const double v = finite_g(g, t);
      if (std::abs(v) < kPoleThreshold) throw_pole(g, t, k);
      chain.divide(v);
    }
  }

  r.base = evaluate(g, r.base_x, tol, max_n);
  const double factor = chain.value();
  r.value = r.base.value * factor;
  r.lower = r.base.lower * factor;
  r.upper = r.base.upper * factor;
  if (r.lower > r.upper) std::swap(r.lower, r.upper);
  if (!std::isfinite(r.value)) {
    std::ostringstream os;
    os << "extend: f(" << x << ") is out of range";
    throw NonFiniteError(os.str(), x);
  }
  return r;
}

double extend(const Representer& g, double x, double tol, long max_n) {
  return extend_detailed(g, x, tol, max_n).value;
}

RealFunction artin_function(const Representer& g, double tol, long max_n) {
  return RealFunction([g, tol, max_n](double x) { return extend(g, x, tol, max_n); });
}

std::vector<InterpolationTarget> interpolation_targets(const Representer& g, long n_max) {
  if (n_max < 1) throw DomainError("interpolation_targets: need n_max >= 1");
  std::vector<InterpolationTarget> out;
  out.reserve(static_cast<std::size_t>(n_max));
  double a = 1.0;
  for (long n = 1; n <= n_max; ++n) {
    out.push_back({n, a});
    a *= g(static_cast<double>(n));
  }
  return out;
}

double logconvexity_series(const Representer& g, double x, double tol) {
  if (!(x > 0.0)) throw DomainError("logconvexity_series: need x > 0");
  if (!(tol > 0.0)) throw DomainError("logconvexity_series: tol must be positive");
  constexpr long kMaxTerms = 1L << 26;
  detail::CompensatedSum sum;
  double previous = std::numeric_limits<double>::infinity();
  int growing = 0;
  for (long k = 0; k < kMaxTerms; ++k) {
    const double u = x + static_cast<double>(k);
    const double gv = g.g().value(u);
    if (std::abs(gv) < kPoleThreshold) throw_pole(g, u, k);
    const double ratio = g.g().derivative(u, 1) / gv;
    const double term = ratio * ratio - g.g().derivative(u, 2) / gv;
    sum.add(term);

    // Terms ~ C u^-2 leave a tail of about C / (u + 1/2); the model itself is
    // uncertain at relative order 1/u.
    const double tail = term * u * u / (u + 0.5);
    const double magnitude = std::abs(term);
    if (k >= 8 && magnitude < tol * std::max(1.0, std::abs(sum.value())) &&
        std::abs(tail) / (u + 0.5) < tol)
      return sum.value() + tail;

    if (magnitude >= previous && magnitude > 0.0) {
      if (++growing >= 64) {
        std::ostringstream os;
        os << "logconvexity_series: terms stopped decreasing near k=" << k;
        throw SeriesDivergence(os.str());
      }
    } else {
      growing = 0;
    }
    previous = magnitude;
  }
  throw SeriesDivergence("logconvexity_series: no convergence within the term budget");
}

double bilinear_a(const RealFunction& f, const RealFunction& g, double x, long terms) {
  if (terms < 1) throw DomainError("bilinear_a: need terms >= 1");
  detail::CompensatedSum sum;
  for (long k = 0; k < terms; ++k) {
    const double u = x + static_cast<double>(k);
    const double fv = f.value(u);
    const double gv = g.value(u);
    if (std::abs(fv) < kPoleThreshold || std::abs(gv) < kPoleThreshold) {
      std::ostringstream os;
      os << "bilinear_a: f or g vanishes at x=" << u << " (k=" << k << ")";
      throw ZeroValueError(os.str());
    }
    const double fd = f.derivative(u, 1);
    sum.add(fd * fd / (fv * fv) - g.derivative(u, 2) / (gv * gv));
  }
  return sum.value();
}

}  // namespace logcvx
