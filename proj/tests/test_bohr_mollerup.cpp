#include <doctest.h>

#include <cmath>
#include <numbers>

#include "logcvx/bohr_mollerup.hpp"
#include "logcvx/convexity.hpp"
#include "logcvx/errors.hpp"

using namespace logcvx;

namespace {
const double kPi2over6 = std::numbers::pi * std::numbers::pi / 6.0;
}

TEST_CASE("partial_product") {
  const Representer id = builtin::identity();
  CHECK(partial_product(id, 0.5, 3) == doctest::Approx(16.0 / 15.0));
  CHECK(partial_product(id, 1.0, 4) == doctest::Approx(0.25));
  CHECK(partial_product(id, 0.0, 1) == 1.0);
  CHECK(partial_product(builtin::power(2.0), 0.0, 1) == 1.0);
  // g(0) := 1 also for the shifted argument x + k = 0
  CHECK(partial_product(id, -1.0, 3) == doctest::Approx(-2.0));
  const Representer shifted = parse_representer("x-1", {}, Interval{1.0, kInf});
  CHECK_THROWS_AS(partial_product(shifted, 1.0, 2), PoleError);
  CHECK_THROWS_AS(partial_product(id, 0.5, 0), DomainError);
}

TEST_CASE("sandwich_bounds") {
  const Representer id = builtin::identity();
  const Bounds b = sandwich_bounds(id, 0.5, 3);
  CHECK(b.lower == doctest::Approx(16.0 / 15.0 * (3.0 / 3.5) * std::sqrt(3.0)));
  CHECK(b.lower == doctest::Approx(1.58346).epsilon(1e-4));
  CHECK(b.upper == doctest::Approx(1.84752).epsilon(1e-5));
  CHECK(b.lower <= std::sqrt(std::numbers::pi));
  CHECK(std::sqrt(std::numbers::pi) <= b.upper);
  for (long n : {2L, 7L, 100L}) {
    const Bounds t = sandwich_bounds(id, 1.0, n);
    CHECK(t.lower == doctest::Approx(static_cast<double>(n) / (n + 1)));
    CHECK(t.upper == doctest::Approx(1.0));
  }
  const Bounds c = sandwich_bounds(builtin::constant(2.0), 0.5, 5);
  CHECK(c.lower == c.upper);
  CHECK(c.upper == doctest::Approx(0.5 * std::sqrt(2.0)));
  CHECK_THROWS_AS(sandwich_bounds(id, 1.5, 3), DomainError);
  CHECK_THROWS_AS(sandwich_bounds(id, 0.5, 1), DomainError);
}

TEST_CASE("sandwich brackets Gamma and shrinks") {
  const Representer id = builtin::identity();
  for (double x : {0.1, 0.25, 0.5, 0.75, 0.9}) {
    double width = INFINITY;
    for (long n = 2; n <= 4096; n *= 2) {
      const Bounds b = sandwich_bounds(id, x, n);
      CHECK(b.lower <= std::tgamma(x));
      CHECK(std::tgamma(x) <= b.upper);
      CHECK(b.upper - b.lower < width);
      width = b.upper - b.lower;
    }
  }
}

TEST_CASE("evaluate") {
  const Representer id = builtin::identity();
  const ProductState one = evaluate(id, 1.0, 1e-6);
  CHECK(std::abs(one.value - 1.0) <= 1e-6);
  CHECK(one.converged);
  const ProductState half = evaluate(id, 0.5, 1e-6);
  CHECK(std::abs(half.value - 1.7724539) <= 1e-5);
  CHECK(half.lower <= half.value);
  CHECK(half.value <= half.upper);
  CHECK(half.n >= 4);
  for (double x : {0.05, 0.3, 0.77}) CHECK(evaluate(id, x, 1e-6).value == doctest::Approx(std::tgamma(x)).epsilon(1e-9));

  const ProductState capped = evaluate(id, 0.5, 1e-12, 64);
  CHECK_FALSE(capped.converged);
  CHECK(capped.n == 64);

  CHECK_THROWS_AS(evaluate(parse_representer("exp(x)"), 0.5, 1e-8), DivergenceError);
  CHECK_THROWS_AS(evaluate(id, 0.0, 1e-8), DomainError);
  CHECK_THROWS_AS(evaluate(id, 0.5, 0.0), DomainError);
}

TEST_CASE("power representer gives Gamma^c") {
  const Representer p = builtin::power(2.0);
  for (double x : {0.4, 2.5}) CHECK(extend(p, x, 1e-8) == doctest::Approx(std::pow(std::tgamma(x), 2.0)).epsilon(1e-7));
}

TEST_CASE("extend") {
  const Representer id = builtin::identity();
  CHECK(std::abs(extend(id, 5.0, 1e-8) - 24.0) <= 1e-6);
  CHECK(std::abs(extend(id, -0.5, 1e-8) + 2.0 * std::sqrt(std::numbers::pi)) <= 1e-4);
  CHECK_THROWS_AS(extend(id, 0.0, 1e-8), PoleError);
  CHECK_THROWS_AS(extend(id, -3.0, 1e-8), PoleError);
  for (double x : {-2.5, -1.3, 0.2, 3.3, 7.9}) CHECK(extend(id, x, 1e-8) == doctest::Approx(std::tgamma(x)).epsilon(1e-8));

  const ExtendResult r = extend_detailed(id, 3.25, 1e-8);
  CHECK(r.shift == 3);
  CHECK(r.base_x == 0.25);
  CHECK(r.lower <= r.value);
  CHECK(r.value <= r.upper);
  try {
    extend(id, -2.0, 1e-8);
  } catch (const PoleError& e) {
    REQUIRE(e.index().has_value());
  }
}

TEST_CASE("artin_function is log-convex for x > 0") {
  const RealFunction g = artin_function(builtin::identity(), 1e-8);
  for (double x : {0.5, 1.0, 2.0, 4.0}) CHECK(d2_log(g, x) > 0.0);
}

TEST_CASE("interpolation_targets") {
  const auto id = interpolation_targets(builtin::identity(), 6);
  const double fact[] = {1, 1, 2, 6, 24, 120};
  for (int i = 0; i < 6; ++i) {
    CHECK(id[i].n == i + 1);
    CHECK(id[i].a_n == fact[i]);
  }
  const auto two = interpolation_targets(builtin::constant(2.0), 4);
  CHECK(two[3].a_n == 8.0);
  CHECK(interpolation_targets(builtin::power(3.0), 1)[0].a_n == 1.0);
}

TEST_CASE("logconvexity_series") {
  const Representer id = builtin::identity();
  CHECK(std::abs(logconvexity_series(id, 1.0, 1e-10) - kPi2over6) <= 1e-6);
  CHECK(std::abs(logconvexity_series(id, 2.0, 1e-10) - (kPi2over6 - 1.0)) <= 1e-6);
  CHECK(logconvexity_series(builtin::constant(5.0), 1.0, 1e-8) == 0.0);
  // g = x^c: each term is c (x+k)^-2
  for (double c : {0.5, 2.0, 3.0})
    CHECK(logconvexity_series(builtin::power(c), 1.0, 1e-10) == doctest::Approx(c * kPi2over6).epsilon(1e-7));
  // trigamma(x) = sum 1/(x+k)^2 by direct summation plus the integral tail
  double direct = 0.0;
  const long terms = 200000;
  for (long k = terms - 1; k >= 0; --k) direct += 1.0 / ((0.3 + k) * (0.3 + k));
  direct += 1.0 / (0.3 + terms - 0.5);
  CHECK(logconvexity_series(id, 0.3, 1e-10) == doctest::Approx(direct).epsilon(1e-8));
  CHECK_THROWS_AS(logconvexity_series(id, 0.0, 1e-8), DomainError);
}

TEST_CASE("bilinear_a") {
  const double s = bilinear_a(fn::identity(), fn::identity(), 1.0, 10000);
  CHECK(std::abs(s + 1.0 / (1.0 + 10000.0) - kPi2over6) <= 1e-4);
  double direct = 0.0;
  for (int k = 0; k < 10; ++k) direct += 1.0 - std::exp(-k);
  CHECK(bilinear_a(fn::exponential(), fn::exponential(), 0.0, 10) == doctest::Approx(direct));
  CHECK(direct == doctest::Approx(8.4180).epsilon(1e-4));
  CHECK(bilinear_a(fn::constant(3.0), fn::constant(3.0), 0.4, 50) == 0.0);
  CHECK_THROWS_AS(bilinear_a(fn::identity(), fn::identity(), 0.0, 5), ZeroValueError);
}
