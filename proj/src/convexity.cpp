#include "logcvx/convexity.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "logcvx/errors.hpp"

namespace logcvx {

namespace {

void require_distinct(double x1, double x2) {
  const double scale = std::max({1.0, std::abs(x1), std::abs(x2)});
  if (std::abs(x1 - x2) < 1e-12 * scale) {
    std::ostringstream os;
    os << "coincident arguments " << x1 << " and " << x2;
    throw DegenerateArguments(os.str());
  }
}

double positive_value(const RealFunction& f, double x) {
  const double v = f.value(x);
  if (!(v > 0.0)) {
    std::ostringstream os;
    os << "f(" << x << ") = " << v << " is not positive";
    throw NonPositiveError(os.str());
  }
  return v;
}

}  // namespace

double diff_quotient(const RealFunction& f, double x1, double x2) {
  require_distinct(x1, x2);
  return (f.value(x1) - f.value(x2)) / (x1 - x2);
}

double iter_diff_quotient(const RealFunction& f, double x1, double x2, double x3) {
  require_distinct(x1, x2);
  require_distinct(x1, x3);
  require_distinct(x2, x3);
  return (diff_quotient(f, x1, x3) - diff_quotient(f, x2, x3)) / (x1 - x2);
}

WeakConvexityResult weak_convexity_test(const RealFunction& f, double a, double b, int trials,
                                        std::uint64_t seed) {
  if (!(a < b)) throw DomainError("weak_convexity_test: need a < b");
  if (trials < 1) throw DomainError("weak_convexity_test: need at least one trial");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> pick(a, b);
  constexpr double eps = std::numeric_limits<double>::epsilon();
  for (int t = 0; t < trials; ++t) {
    const double x1 = pick(rng);
    const double x2 = pick(rng);
    const double f1 = f.value(x1);
    const double f2 = f.value(x2);
    const double fm = f.value(0.5 * (x1 + x2));
    const double mean = 0.5 * (f1 + f2);
    const double slack = 8.0 * eps * (std::abs(f1) + std::abs(f2) + std::abs(fm));
    if (fm > mean + slack) return {false, std::make_pair(x1, x2)};
  }
  return {};
}

double q_determinant(const RealFunction& f, double x) {
  const double v = f.value(x);
  if (std::abs(v) < 1e-300) {
    std::ostringstream os;
    os << "q_determinant: f(" << x << ") vanishes";
    throw ZeroValueError(os.str());
  }
  const double d1 = f.derivative(x, 1);
  return v * f.derivative(x, 2) - d1 * d1;
}

double d2_log(const RealFunction& f, double x) {
  if (f.has_exact_derivatives()) {
    const double v = positive_value(f, x);
    const double d1 = f.derivative(x, 1);
    return (f.derivative(x, 2) * v - d1 * d1) / (v * v);
  }
  return d2_log(f, x, default_step(x, 2));
}

double d2_log(const RealFunction& f, double x, double h) {
  if (!(h > 0.0)) throw DomainError("d2_log: step must be positive");
  if (!f.domain().contains(x - h, x + h)) throw DomainError("d2_log: stencil leaves the domain");
  const double lm = std::log(positive_value(f, x - h));
  const double l0 = std::log(positive_value(f, x));
  const double lp = std::log(positive_value(f, x + h));
  return (lp - 2.0 * l0 + lm) / (h * h);
}

std::vector<double> count_sign_changes(const Grid& values) {
  std::vector<double> out;
  int sign = 0;
  const auto& pts = values.points;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double y = pts[i].y;
    const int s = (y > 0.0) - (y < 0.0);
    if (s == 0) continue;
    if (sign != 0 && s != sign) out.push_back(0.5 * (pts[i - 1].x + pts[i].x));
    sign = s;
  }
  return out;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::LogConvex:
      return "LogConvex";
    case Verdict::NotLogConvex:
      return "NotLogConvex";
    case Verdict::Inconclusive:
      return "Inconclusive";
  }
  return "Inconclusive";
}

double verdict_tolerance(double max_d2log) { return 1e-7 * (1.0 + std::abs(max_d2log)); }

void finalize_report(ConvexityReport& report, bool complete) {
  auto changes_of = [&](const std::vector<GridPoint>& pts) {
    Grid g;
    g.points = pts;
    return count_sign_changes(g);
  };
  auto d2 = changes_of(report.d2log_values);
  auto q = changes_of(report.q_values);
  std::vector<double> merged;
  std::merge(d2.begin(), d2.end(), q.begin(), q.end(), std::back_inserter(merged));
  merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
  report.sign_changes = std::move(merged);

  if (report.d2log_values.empty()) {
    report.min_margin = 0.0;
    report.verdict = Verdict::Inconclusive;
    return;
  }
  double lo = kInf;
  double hi = -kInf;
  for (const auto& p : report.d2log_values) {
    lo = std::min(lo, p.y);
    hi = std::max(hi, p.y);
  }
  report.min_margin = lo;
  if (lo < -verdict_tolerance(hi)) {
    report.verdict = Verdict::NotLogConvex;
  } else {
    report.verdict = complete ? Verdict::LogConvex : Verdict::Inconclusive;
  }
}

ConvexityReport analyze_log_convexity(const RealFunction& f, double a, double b, int n) {
  if (!(a < b)) throw DomainError("analyze_log_convexity: need a < b");
  if (n < 2) throw DomainError("analyze_log_convexity: need n >= 2");
  ConvexityReport report;
  report.interval = {a, b};
  report.grid_n = n;
  bool complete = true;
  for (double x : uniform_points(a, b, n)) {
    try {
      report.q_values.push_back({x, q_determinant(f, x)});
    } catch (const Error&) {
      complete = false;
    }
    try {
      report.d2log_values.push_back({x, d2_log(f, x)});
    } catch (const Error&) {
      complete = false;
    }
  }
  finalize_report(report, complete);
  return report;
}

nlohmann::json to_json(const ConvexityReport& report) {
  auto pairs = [](const std::vector<GridPoint>& pts) {
    auto arr = nlohmann::json::array();
    for (const auto& p : pts) arr.push_back({p.x, p.y});
    return arr;
  };
  return {
      {"interval", {report.interval.first, report.interval.second}},
      {"grid_n", report.grid_n},
      {"q_values", pairs(report.q_values)},
      {"d2log_values", pairs(report.d2log_values)},
      {"sign_changes", report.sign_changes},
      {"verdict", to_string(report.verdict)},
      {"min_margin", report.min_margin},
  };
}

}  // namespace logcvx
