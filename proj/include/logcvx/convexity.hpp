#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "logcvx/funcore.hpp"

namespace logcvx {

/// Secant slope (f(x1)-f(x2))/(x1-x2).
double diff_quotient(const RealFunction& f, double x1, double x2);

/// Second divided difference (phi(x1,x3) - phi(x2,x3)) / (x1 - x2).
///
/// Symmetric in its three arguments and >= 0 on every triple iff f is convex.
double iter_diff_quotient(const RealFunction& f, double x1, double x2, double x3);

struct WeakConvexityResult {
  bool holds = true;
  std::optional<std::pair<double, double>> witness;
};

/// Samples `trials` pairs from (a,b) and checks f((x1+x2)/2) <= (f(x1)+f(x2))/2.
WeakConvexityResult weak_convexity_test(const RealFunction& f, double a, double b, int trials,
                                        std::uint64_t seed);

/// f f'' - (f')^2
double q_determinant(const RealFunction& f, double x);

/// (log f)''; exact derivatives when f carries both, otherwise central
/// differences of log f with step h (default_step when h is omitted).
double d2_log(const RealFunction& f, double x);
double d2_log(const RealFunction& f, double x, double h);

/// Midpoints of the grid cells where the sampled values change strict sign.
/// A zero sample keeps the sign of its predecessor.
std::vector<double> count_sign_changes(const Grid& values);

enum class Verdict { LogConvex, NotLogConvex, Inconclusive };

std::string to_string(Verdict v);

struct ConvexityReport {
  std::pair<double, double> interval{0.0, 0.0};
  int grid_n = 0;
  std::vector<GridPoint> q_values;
  std::vector<GridPoint> d2log_values;
  std::vector<double> sign_changes;
  Verdict verdict = Verdict::Inconclusive;
  double min_margin = 0.0;
};

/// Tolerance used by the LogConvex verdict: min d2log >= -1e-7 (1 + |max d2log|).
double verdict_tolerance(double max_d2log);

/// Fills sign_changes, verdict and min_margin from q_values/d2log_values.
/// `complete` is false when some points could not be evaluated.
void finalize_report(ConvexityReport& report, bool complete);

/// Samples q(f) and (log f)'' on a uniform grid of n points over [a,b].
ConvexityReport analyze_log_convexity(const RealFunction& f, double a, double b, int n);

nlohmann::json to_json(const ConvexityReport& report);

}  // namespace logcvx
