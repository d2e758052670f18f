#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "logcvx/convexity.hpp"
#include "logcvx/errors.hpp"

using namespace logcvx;

TEST_CASE("diff_quotient") {
  const RealFunction sq = fn::square();
  CHECK(diff_quotient(sq, 1.0, 3.0) == 4.0);
  CHECK(diff_quotient(sq, 3.0, 1.0) == 4.0);
  CHECK(diff_quotient(fn::identity(), -2.5, 7.0) == 1.0);
  CHECK_THROWS_AS(diff_quotient(sq, 1.0, 1.0), DegenerateArguments);
}

TEST_CASE("diff_quotient is symmetric bit for bit") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  const RealFunction f = fn::exp_quadratic(0.1, 0.3, -1.0);
  for (int i = 0; i < 500; ++i) {
    const double a = u(rng), b = u(rng);
    CHECK(diff_quotient(f, a, b) == diff_quotient(f, b, a));
  }
}

TEST_CASE("iter_diff_quotient") {
  const RealFunction sq = fn::square();
  // classical second divided difference: f[x1,x2,x3] = 1 for x^2
  CHECK(iter_diff_quotient(sq, 0.0, 1.0, 2.0) == doctest::Approx(1.0));
  CHECK(iter_diff_quotient(sq, 2.0, 1.0, 0.0) == doctest::Approx(1.0));
  CHECK(iter_diff_quotient(fn::identity(), 0.3, -1.0, 4.0) == doctest::Approx(0.0));
  CHECK_THROWS_AS(iter_diff_quotient(sq, 1.0, 2.0, 1.0), DegenerateArguments);
}

TEST_CASE("iter_diff_quotient is permutation invariant on cubics") {
  const RealFunction cubic([](double x) { return x * x * x - 2.0 * x; });
  std::array<double, 3> xs{-1.5, 0.25, 2.0};
  const double ref = iter_diff_quotient(cubic, xs[0], xs[1], xs[2]);
  CHECK(ref == doctest::Approx(xs[0] + xs[1] + xs[2]));
  do {
    CHECK(iter_diff_quotient(cubic, xs[0], xs[1], xs[2]) == doctest::Approx(ref));
  } while (std::next_permutation(xs.begin(), xs.end()));
}

TEST_CASE("weak convexity") {
  CHECK(weak_convexity_test(fn::square(), -1.0, 1.0, 100, 0).holds);
  const auto concave = weak_convexity_test(fn::quadratic(-1.0, 0.0, 0.0), -1.0, 1.0, 100, 0);
  CHECK_FALSE(concave.holds);
  REQUIRE(concave.witness.has_value());
  CHECK(concave.witness->first > -1.0);
  CHECK(concave.witness->second < 1.0);
  CHECK(weak_convexity_test(fn::identity(), -50.0, 80.0, 1000, 3).holds);
}

TEST_CASE("q_determinant") {
  for (double x : {-3.0, 0.0, 2.5}) CHECK(std::abs(q_determinant(fn::exponential(), x)) <= 1e-8);
  CHECK(q_determinant(fn::square(), 1.0) == -2.0);
  CHECK_THROWS_AS(q_determinant(fn::square(), 0.0), ZeroValueError);
}

TEST_CASE("q_determinant of Gamma at 2 is positive") {
  // Gamma(2) = 1, Gamma'(2) = 1 - gamma_E, Gamma''(2) = (1 - gamma_E)^2 + pi^2/6 - 1
  const double g1 = 1.0 - std::numbers::egamma;
  const double trigamma2 = std::numbers::pi * std::numbers::pi / 6.0 - 1.0;
  const double q = 1.0 * (g1 * g1 + trigamma2) - g1 * g1;
  CHECK(q == doctest::Approx(trigamma2));
  const RealFunction gamma([](double x) { return std::tgamma(x); }, Interval{0.0, kInf});
  CHECK(q_determinant(gamma, 2.0) == doctest::Approx(q).epsilon(1e-5));
  CHECK(q_determinant(gamma, 2.0) > 0.0);
}

TEST_CASE("d2_log") {
  CHECK(std::abs(d2_log(fn::exponential(), 0.4)) <= 1e-8);
  CHECK(d2_log(fn::exp_quadratic(1.0, 0.0, 0.0), 0.7) == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(d2_log(fn::square(), 1.0) == doctest::Approx(-2.0).epsilon(1e-6));
  const RealFunction plain([](double x) { return std::exp(x * x); });
  CHECK(std::abs(d2_log(plain, 0.7) - 2.0) <= 1e-6);
  CHECK_THROWS_AS(d2_log(fn::quadratic(-1.0, 0.0, 0.0), 1.0), NonPositiveError);
}

TEST_CASE("q and d2_log agree where f is not small") {
  const RealFunction f = fn::exp_quadratic(0.3, -1.0, 0.2);
  for (double x : uniform_points(-2.0, 2.0, 17)) {
    const double v = f(x);
    CHECK(q_determinant(f, x) / (v * v) == doctest::Approx(d2_log(f, x)).epsilon(1e-6));
  }
}

TEST_CASE("count_sign_changes") {
  SUBCASE("sin on [0, 2pi]") {
    const RealFunction s([](double x) { return std::sin(x); });
    const auto changes = count_sign_changes(sample_grid(s, 0.0, 2.0 * std::numbers::pi, 1000));
    REQUIRE(changes.size() == 1);
    CHECK(changes[0] == doctest::Approx(std::numbers::pi).epsilon(1e-2));
  }
  SUBCASE("constant") { CHECK(count_sign_changes(sample_grid(fn::constant(1.0), 0.0, 1.0, 50)).empty()); }
  SUBCASE("identity through 0") {
    const auto changes = count_sign_changes(sample_grid(fn::identity(), -1.0, 1.0, 201));
    REQUIRE(changes.size() == 1);
    CHECK(std::abs(changes[0]) <= 0.01);
  }
  SUBCASE("tangential zero is not a change") {
    CHECK(count_sign_changes(sample_grid(fn::square(), -1.0, 1.0, 201)).empty());
  }
}

TEST_CASE("analyze_log_convexity verdicts") {
  const auto good = analyze_log_convexity(fn::exp_quadratic(0.5, 0.0, 0.0), -2.0, 2.0, 64);
  CHECK(good.verdict == Verdict::LogConvex);
  CHECK(good.sign_changes.empty());
  CHECK(good.q_values.size() == 64);

  const auto bad = analyze_log_convexity(fn::square(), 0.5, 2.0, 64);
  CHECK(bad.verdict == Verdict::NotLogConvex);
  CHECK(bad.min_margin < 0.0);

  const auto j = to_json(good);
  CHECK(j["verdict"] == "LogConvex");
  CHECK(j["q_values"][0].size() == 2);
  CHECK(j["grid_n"] == 64);
}

TEST_CASE("closure of log-convexity") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> a(0.0, 2.0), bc(-1.0, 1.0);
  for (int i = 0; i < 20; ++i) {
    const RealFunction f = fn::exp_quadratic(a(rng), bc(rng), bc(rng));
    const RealFunction g = fn::exp_quadratic(a(rng), bc(rng), bc(rng));
    for (double x : uniform_points(-1.0, 1.0, 9)) {
      CHECK(d2_log(fn::sum(f, g), x) >= -1e-8);
      CHECK(d2_log(fn::product(f, g), x) >= -1e-8);
      CHECK(d2_log(fn::exp_of(fn::quadratic(a(rng), bc(rng), bc(rng))), x) >= -1e-10);
      for (double c : {0.5, -0.5, 2.0}) {
        CHECK(d2_log(fn::shifted(f, c), x - c) >= -1e-8);
        CHECK(d2_log(fn::scaled(f, c), x / c) >= -1e-8);
      }
    }
  }
}
