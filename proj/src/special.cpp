#include "logcvx/special.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <utility>

#include "logcvx/detail/compensated_sum.hpp"
#include "logcvx/errors.hpp"

namespace logcvx {

namespace {

constexpr double kPhi = std::numbers::phi;
constexpr double kLnPhi = 0.48121182505960344749775891342436842313518433438566;
constexpr double kPi = std::numbers::pi;
const double kSqrt5 = std::sqrt(5.0);

double cos_pi(double x) { return std::cos(kPi * std::remainder(x, 2.0)); }
double sin_pi(double x) { return std::sin(kPi * std::remainder(x, 2.0)); }

struct Segment {
  double a, b, fa, fm, fb, whole;
};

double simpson(double a, double b, double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

}  // namespace

QuadratureResult adaptive_simpson(const std::function<double(double)>& fn, double a, double b,
                                  double tol, int budget) {
  if (!(a < b) || !std::isfinite(a) || !std::isfinite(b))
    throw DomainError("adaptive_simpson: need finite a < b");
  if (!(tol > 0.0)) throw DomainError("adaptive_simpson: tol must be positive");

  auto eval = [&fn](double t) {
    const double v = fn(t);
    if (!std::isfinite(v)) {
      std::ostringstream os;
      os << "integrand is not finite at t=" << t;
      throw NonFiniteError(os.str(), t);
    }
    return v;
  };

  // Coarse pass fixes the magnitude used by the relative criterion and gives
  // the refinement a uniform starting partition.
  constexpr int kInitial = 16;
  std::vector<Segment> initial;
  detail::CompensatedSum coarse;
  const double w = (b - a) / kInitial;
  double left = a;
  double f_left = eval(a);
  for (int i = 0; i < kInitial; ++i) {
    const double right = i + 1 == kInitial ? b : a + (i + 1) * w;
    const double mid = 0.5 * (left + right);
    const double fm = eval(mid);
    const double fr = eval(right);
    const double s = simpson(left, right, f_left, fm, fr);
    initial.push_back({left, right, f_left, fm, fr, s});
    coarse.add(s);
    left = right;
    f_left = fr;
  }
  const double target = tol * std::max(1.0, std::abs(coarse.value()));

  QuadratureResult result;
  detail::CompensatedSum total;
  detail::CompensatedSum error;
  int splits = 0;
  std::vector<Segment> stack(initial.rbegin(), initial.rend());
  while (!stack.empty()) {
    const Segment s = stack.back();
    stack.pop_back();
    const double m = 0.5 * (s.a + s.b);
    const double lm = 0.5 * (s.a + m);
    const double rm = 0.5 * (m + s.b);
    const double flm = eval(lm);
    const double frm = eval(rm);
    const double sl = simpson(s.a, m, s.fa, flm, s.fm);
    const double sr = simpson(m, s.b, s.fm, frm, s.fb);
    const double diff = sl + sr - s.whole;
    const double local = target * (s.b - s.a) / (b - a);
    if (std::abs(diff) <= 15.0 * local || m <= s.a || m >= s.b) {
      total.add(sl + sr + diff / 15.0);
      error.add(std::abs(diff) / 15.0);
      result.panels += 2;
      continue;
    }
    if (++splits > budget) {
      std::ostringstream os;
      os << "adaptive_simpson: panel budget " << budget << " exhausted on [" << a << ", " << b
         << "] at tol " << tol;
      throw ToleranceNotMet(os.str());
    }
    stack.push_back({m, s.b, s.fm, frm, s.fb, sr});
    stack.push_back({s.a, m, s.fa, flm, s.fm, sl});
  }
  result.value = total.value();
  result.abs_error_estimate = error.value();
  return result;
}

namespace {

QuadratureResult regular_mellin(const RealFunction& phi, double a, double b, double x, double tol) {
  auto kernel = [&phi, x](double t) { return phi(t) * std::pow(t, x - 1.0); };
  if (std::isfinite(b)) return adaptive_simpson(kernel, a, b, tol);
  return adaptive_simpson(
      [&kernel, a](double u) {
        if (u >= 1.0) return 0.0;
        const double one_minus = 1.0 - u;
        const double v = kernel(a + u / one_minus) / (one_minus * one_minus);
        return std::isfinite(v) ? v : 0.0;
      },
      0.0, 1.0, tol);
}

}  // namespace

QuadratureResult mellin_integral(const RealFunction& phi, double a, double b, double x, double tol) {
  if (!(a >= 0.0) || !(a < b)) throw DomainError("mellin_integral: need 0 <= a < b");
  if (!(a == 0.0 && x < 1.0)) return regular_mellin(phi, a, b, x, tol);
  if (!(x > 0.0)) throw DomainError("mellin_integral: the integral diverges at 0 for x <= 0");

  const double c = std::min(1.0, b);
  const double scale = std::pow(c, x) / x;
  QuadratureResult head = adaptive_simpson(
      [&phi, c, x, scale](double s) { return scale * phi(c * std::pow(s, 1.0 / x)); }, 0.0, 1.0,
      0.5 * tol);
  if (!(b > c)) return head;
  QuadratureResult rest = regular_mellin(phi, c, b, x, 0.5 * tol);
  return {head.value + rest.value, head.abs_error_estimate + rest.abs_error_estimate,
          head.panels + rest.panels};
}

QuadratureResult gamma_quadrature(double x, double tol) {
  if (!(x > 0.0)) throw DomainError("gamma_quadrature: need x > 0");
  static const RealFunction decay([](double t) { return std::exp(-t); });
  return mellin_integral(decay, 0.0, kInf, x, tol);
}

ConvexityReport mellin_logconvex_probe(const RealFunction& phi, double a, double b,
                                       const std::vector<double>& xs, double tol) {
  ConvexityReport report;
  report.interval = xs.empty() ? std::make_pair(0.0, 0.0) : std::make_pair(xs.front(), xs.back());
  report.grid_n = static_cast<int>(xs.size());
  auto integral = [&](double x) {
    try {
      return mellin_integral(phi, a, b, x, tol).value;
    } catch (const ToleranceNotMet& e) {
      std::ostringstream os;
      os << e.what() << " (x=" << x << ")";
      throw ToleranceNotMet(os.str());
    }
  };
  for (double x : xs) {
    double h = 1e-2 * std::max(1.0, std::abs(x));
    if (a == 0.0 && x - h <= 0.0) h = 0.5 * x;
    const double im = integral(x - h);
    const double i0 = integral(x);
    const double ip = integral(x + h);
    if (!(im > 0.0 && i0 > 0.0 && ip > 0.0))
      throw NonPositiveError("mellin_logconvex_probe: integral is not positive");
    const double d1 = (ip - im) / (2.0 * h);
    const double d2 = (ip - 2.0 * i0 + im) / (h * h);
    report.q_values.push_back({x, i0 * d2 - d1 * d1});
    report.d2log_values.push_back(
        {x, (std::log(ip) - 2.0 * std::log(i0) + std::log(im)) / (h * h)});
  }
  finalize_report(report, true);
  return report;
}

double riemann_sum_Fn(const std::function<double(double, double)>& f2, double a, double b, long n,
                      double x) {
  if (n < 1) throw DomainError("riemann_sum_Fn: need n >= 1");
  if (!(a < b) || !std::isfinite(a) || !std::isfinite(b))
    throw DomainError("riemann_sum_Fn: need finite a < b");
  const double h = (b - a) / static_cast<double>(n);
  detail::CompensatedSum sum;
  for (long k = 0; k < n; ++k) sum.add(f2(a + static_cast<double>(k) * h, x));
  return h * sum.value();
}

FibClosed fib_closed(long n) {
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  const double pn = std::pow(kPhi, static_cast<double>(n));
  FibClosed out;
  out.raw = (pn - sign / pn) / kSqrt5;
  const double nearest = std::nearbyint(out.raw);
  if (std::abs(out.raw - nearest) < 1e-9) out.rounded = nearest;
  return out;
}

double fib_real(double x) {
  return (std::pow(kPhi, x) - cos_pi(x) * std::pow(kPhi, -x)) / kSqrt5;
}

double fib_real_d1(double x) {
  return (kLnPhi * std::pow(kPhi, x) +
          std::pow(kPhi, -x) * (kPi * sin_pi(x) + kLnPhi * cos_pi(x))) /
         kSqrt5;
}

double fib_real_d2(double x) {
  const double l2 = kLnPhi * kLnPhi;
  return (l2 * std::pow(kPhi, x) -
          std::pow(kPhi, -x) * ((l2 - kPi * kPi) * cos_pi(x) + 2.0 * kPi * kLnPhi * sin_pi(x))) /
         kSqrt5;
}

RealFunction fibonacci_function() { return RealFunction(fib_real, {}, fib_real_d1, fib_real_d2); }

double fib_integer_hyperbolic(long n) {
  const double arg = static_cast<double>(n) * kLnPhi;
  return 2.0 / kSqrt5 * (n % 2 == 0 ? std::sinh(arg) : std::cosh(arg));
}

std::vector<double> fib_d2_signchanges(double a, double b, int grid_n) {
  if (grid_n < 100) throw DomainError("fib_d2_signchanges: need grid_n >= 100");
  const RealFunction d2(fib_real_d2);
  return count_sign_changes(sample_grid(d2, a, b, grid_n));
}

double curvature(const RealFunction& g, const RealFunction& f, double x) {
  const double gv = g.value(x);
  const double g1 = g.derivative(x, 1);
  const double g2 = g.derivative(x, 2);
  const double fv = f.value(x);
  const double f1 = f.derivative(x, 1);
  const double f2 = f.derivative(x, 2);
  const double slope = g1 * fv + gv * f1;
  return (g2 * fv + 2.0 * g1 * f1 + gv * f2) / std::pow(1.0 + slope * slope, 1.5);
}

double curvature(const Representer& g, const RealFunction& f, double x) {
  return curvature(g.g(), f, x);
}

MultiplierCheck check_inner_multiplicator(const RealFunction& f, const RealFunction& m, double a,
                                          double b, int grid_n) {
  const RealFunction mf = fn::product(m, f);
  for (double x : uniform_points(a, b, grid_n)) {
    if (!(mf.value(x) > 0.0)) {
      std::ostringstream os;
      os << "check_inner_multiplicator: m*f is not positive at x=" << x;
      throw NonPositiveError(os.str());
    }
    if (q_determinant(mf, x) < -1e-7) return {false, x};
  }
  return {};
}

MultiplierCheck check_outer_multiplier(const RealFunction& f, const RealFunction& m, double a,
                                       double b, int grid_n) {
  const RealFunction mlog(
      [f, m](double x) {
        const double v = f.value(x);
        if (!(v > 0.0)) {
          std::ostringstream os;
          os << "check_outer_multiplier: f is not positive at x=" << x;
          throw NonPositiveError(os.str());
        }
        return m.value(x) * std::log(v);
      },
      Interval{std::max(f.domain().lo, m.domain().lo), std::min(f.domain().hi, m.domain().hi)});
  for (double x : uniform_points(a, b, grid_n)) {
    mlog.value(x);
    const double h = 1e-3 * std::max(1.0, std::abs(x));
    if (fd_derivative(mlog, x, 2, h) < -1e-7) return {false, x};
  }
  return {};
}

double outer_second_derivative(const RealFunction& f, const RealFunction& m, double x) {
  const double fv = f.value(x);
  if (!(fv > 0.0)) throw NonPositiveError("outer_second_derivative: f is not positive");
  const double f1 = f.derivative(x, 1);
  const double ratio = f1 / fv;
  const double d2log = f.derivative(x, 2) / fv - ratio * ratio;
  return m.derivative(x, 2) * std::log(fv) + 2.0 * m.derivative(x, 1) * ratio + m.value(x) * d2log;
}

}  // namespace logcvx
