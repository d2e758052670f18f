#include <doctest.h>

#include <cmath>
#include <numbers>

#include "logcvx/checks.hpp"
#include "logcvx/errors.hpp"
#include "logcvx/expr.hpp"

using namespace logcvx;

namespace {
double at(const std::string& src, double x, const std::map<std::string, double>& p = {}) {
  return evaluate(substitute(parse_expression(src), p), x);
}
}  // namespace

TEST_CASE("precedence and associativity") {
  CHECK(at("2+3*4", 0) == 14.0);
  CHECK(at("2^3^2", 0) == 512.0);
  CHECK(at("-2^2", 0) == -4.0);
  CHECK(at("2^-1", 0) == 0.5);
  CHECK(at("8/4/2", 0) == 1.0);
  CHECK(at("10-4-3", 0) == 3.0);
  CHECK(at("(x+1)*(x-1)", 3.0) == 8.0);
  CHECK(at("1.5e2 + .5", 0) == 150.5);
}

TEST_CASE("functions and named constants") {
  CHECK(at("exp(0) + log(e) + sin(0) + cos(0) + sqrt(4)", 0) == doctest::Approx(5.0));
  CHECK(at("pi", 0) == std::numbers::pi);
  CHECK(at("phi", 0) == std::numbers::phi);
  CHECK(at("phi^x - cos(pi*x)*phi^(-x)", 2.0) / std::sqrt(5.0) == doctest::Approx(1.0));
}

TEST_CASE("parameters") {
  const ExprPtr e = parse_expression("a*x^c + b");
  CHECK(free_parameters(e) == std::set<std::string>{"a", "b", "c"});
  CHECK(evaluate(substitute(e, {{"a", 2.0}, {"b", 1.0}, {"c", 3.0}}), 2.0) == 17.0);
  try {
    substitute(e, {{"a", 1.0}});
    FAIL("expected UnboundParameter");
  } catch (const UnboundParameter& err) {
    CHECK(err.names() == std::vector<std::string>{"b", "c"});
  }
  CHECK_THROWS_AS(evaluate(e, 1.0), UnboundParameter);
}

TEST_CASE("evaluation domain errors") {
  CHECK_THROWS_AS(at("log(x)", -1.0), DomainError);
  CHECK_THROWS_AS(at("sqrt(x)", -1.0), DomainError);
  CHECK_THROWS_AS(at("x^0.5", -2.0), DomainError);
  CHECK(at("x^3", -2.0) == -8.0);
}

TEST_CASE("printing round-trips") {
  for (const auto& src : parser_corpus()) {
    const ExprPtr e = parse_expression(src);
    const std::string printed = to_string(e);
    CAPTURE(src);
    CAPTURE(printed);
    CHECK(structurally_equal(e, parse_expression(printed)));
    CHECK(to_string(parse_expression(printed)) == printed);
  }
  CHECK_FALSE(structurally_equal(parse_expression("x+1"), parse_expression("1+x")));
}

TEST_CASE("parse errors carry offsets") {
  for (const auto& bad : malformed_corpus()) {
    CAPTURE(bad.src);
    try {
      parse_expression(bad.src);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.offset() == bad.offset);
      CHECK_FALSE(e.expected().empty());
    }
  }
  try {
    parse_expression("x^(2");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 4);
    const auto& exp = e.expected();
    CHECK(std::find(exp.begin(), exp.end(), ")") != exp.end());
  }
  CHECK_THROWS_AS(parse_expression(""), ParseError);
}

TEST_CASE("symbolic derivatives") {
  const ExprPtr e = parse_expression("x^3 + sin(x)*exp(x)");
  const ExprPtr d1 = differentiate(e);
  const ExprPtr d2 = differentiate(d1);
  const double x = 0.7;
  CHECK(evaluate(d1, x) == doctest::Approx(3 * x * x + std::exp(x) * (std::cos(x) + std::sin(x))));
  CHECK(evaluate(d2, x) == doctest::Approx(6 * x + 2 * std::exp(x) * std::cos(x)));
  CHECK(evaluate(differentiate(parse_expression("x^x")), 2.0) == doctest::Approx(4.0 * (std::log(2.0) + 1.0)));
  CHECK(evaluate(differentiate(parse_expression("log(x)")), 4.0) == doctest::Approx(0.25));
  CHECK(evaluate(differentiate(parse_expression("sqrt(x)")), 4.0) == doctest::Approx(0.25));
  CHECK(evaluate(differentiate(parse_expression("2^x")), 1.0) == doctest::Approx(2.0 * std::log(2.0)));
  CHECK_FALSE(depends_on_x(differentiate(parse_expression("3*x + 1"))));
  CHECK(to_string(differentiate(parse_expression("5"))) == "0");
}
