#include <doctest.h>

#include <cmath>

#include "logcvx/errors.hpp"
#include "logcvx/funcore.hpp"

using namespace logcvx;

namespace {
RealFunction plain_square() {
  return RealFunction([](double x) { return x * x; });
}
}  // namespace

TEST_CASE("central differences are exact on quadratics") {
  CHECK(fd_derivative(plain_square(), 3.0, 1, 1e-4) == doctest::Approx(6.0).epsilon(1e-10));
  CHECK(fd_derivative(plain_square(), 0.0, 2, 1e-3) == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("first difference of exp at 0") {
  const RealFunction e([](double x) { return std::exp(x); });
  CHECK(std::abs(fd_derivative(e, 0.0, 1, 1e-5) - 1.0) <= 1e-9);
}

TEST_CASE("stencil leaving the domain is rejected") {
  const RealFunction lg([](double x) { return std::log(x); }, Interval{0.0, kInf});
  CHECK_THROWS_AS(fd_derivative(lg, 1e-4, 2, 1e-3), DomainError);
  CHECK_NOTHROW(fd_derivative(lg, 1.0, 2, 1e-3));
}

TEST_CASE("derivative prefers exact derivatives") {
  const RealFunction sq = fn::square();
  CHECK(sq.has_exact_derivatives());
  CHECK(sq.derivative(1.7, 1) == 3.4);
  CHECK(sq.derivative(1.7, 2) == 2.0);
  CHECK(plain_square().derivative(1.7, 1) == doctest::Approx(3.4).epsilon(1e-8));
  CHECK_THROWS_AS(sq.derivative(1.0, 3), DomainError);
}

TEST_CASE("value rejects non-finite results") {
  const RealFunction inv([](double x) { return 1.0 / x; });
  CHECK_THROWS_AS(inv.value(0.0), NonFiniteError);
  try {
    inv.value(0.0);
  } catch (const NonFiniteError& e) {
    CHECK(e.x() == 0.0);
  }
}

TEST_CASE("sample_grid") {
  SUBCASE("identity, two points") {
    const Grid g = sample_grid(fn::identity(), 0.0, 1.0, 2);
    REQUIRE(g.points.size() == 2);
    CHECK(g.points[0].x == 0.0);
    CHECK(g.points[0].y == 0.0);
    CHECK(g.points[1].x == 1.0);
    CHECK(g.points[1].y == 1.0);
  }
  SUBCASE("identity, midpoint") {
    const Grid g = sample_grid(fn::identity(), 0.0, 1.0, 3);
    REQUIRE(g.points.size() == 3);
    CHECK(g.points[1].x == 0.5);
    CHECK(g.points[1].y == 0.5);
  }
  SUBCASE("square is symmetric") {
    const Grid g = sample_grid(fn::square(), -1.0, 1.0, 3);
    CHECK(g.points[0].y == 1.0);
    CHECK(g.points[1].y == 0.0);
    CHECK(g.points[2].y == 1.0);
  }
  CHECK_THROWS_AS(sample_grid(fn::identity(), 0.0, 1.0, 1), DomainError);
}

TEST_CASE("uniform_points pins the last point") {
  const auto xs = uniform_points(0.1, 4.0, 512);
  CHECK(xs.size() == 512);
  CHECK(xs.front() == 0.1);
  CHECK(xs.back() == 4.0);
}

TEST_CASE("combinators carry exact derivatives") {
  const RealFunction f = fn::exp_quadratic(0.5, -0.2, 0.1);
  const RealFunction g = fn::quadratic(1.0, 0.0, 2.0);
  for (const RealFunction& h : {fn::sum(f, g), fn::product(f, g), fn::shifted(f, 0.5), fn::scaled(f, -0.5),
                                fn::exp_of(g)}) {
    REQUIRE(h.has_exact_derivatives());
    const RealFunction plain(h.eval_fn());
    for (double x : {-1.0, 0.3, 1.2}) {
      CHECK(h.derivative(x, 1) == doctest::Approx(plain.derivative(x, 1)).epsilon(1e-6));
      CHECK(h.derivative(x, 2) == doctest::Approx(plain.derivative(x, 2)).epsilon(1e-5));
    }
  }
  CHECK(fn::shifted(fn::square(), 1.0)(2.0) == 9.0);
  CHECK(fn::scaled(fn::square(), 2.0)(3.0) == 36.0);
}
