#include "logcvx/expr.hpp"

#include <charconv>
#include <cctype>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "logcvx/errors.hpp"

namespace logcvx {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

const char* function_name(UnaryOp op) {
  switch (op) {
    case UnaryOp::Exp:
      return "exp";
    case UnaryOp::Log:
      return "log";
    case UnaryOp::Sin:
      return "sin";
    case UnaryOp::Cos:
      return "cos";
    case UnaryOp::Sqrt:
      return "sqrt";
    case UnaryOp::Neg:
      return "-";
  }
  return "?";
}

const char* operator_text(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add:
      return "+";
    case BinaryOp::Sub:
      return "-";
    case BinaryOp::Mul:
      return "*";
    case BinaryOp::Div:
      return "/";
    case BinaryOp::Pow:
      return "^";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Lexer

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
  Tok kind;
  std::size_t offset;
  std::string text;
  double number = 0.0;
};

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto is_digit = [&](std::size_t k) {
    return k < src.size() && std::isdigit(static_cast<unsigned char>(src[k]));
  };
  while (i < src.size()) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (is_digit(i) || (c == '.' && is_digit(i + 1))) {
      while (is_digit(i)) ++i;
      if (i < src.size() && src[i] == '.') {
        ++i;
        while (is_digit(i)) ++i;
      }
      // exponent only when digits follow, so "2e" stays number 2 then constant e
      if (i < src.size() && (src[i] == 'e' || src[i] == 'E')) {
        std::size_t k = i + 1;
        if (k < src.size() && (src[k] == '+' || src[k] == '-')) ++k;
        if (is_digit(k)) {
          i = k;
          while (is_digit(i)) ++i;
        }
      }
      Token t{Tok::Number, start, std::string(src.substr(start, i - start))};
      std::from_chars(src.data() + start, src.data() + i, t.number);
      out.push_back(std::move(t));
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_'))
        ++i;
      out.push_back({Tok::Ident, start, std::string(src.substr(start, i - start))});
      continue;
    }
    Tok kind;
    switch (c) {
      case '+':
        kind = Tok::Plus;
        break;
      case '-':
        kind = Tok::Minus;
        break;
      case '*':
        kind = Tok::Star;
        break;
      case '/':
        kind = Tok::Slash;
        break;
      case '^':
        kind = Tok::Caret;
        break;
      case '(':
        kind = Tok::LParen;
        break;
      case ')':
        kind = Tok::RParen;
        break;
      default: {
        std::ostringstream os;
        os << "unexpected character '" << c << "' at offset " << start;
        throw ParseError(os.str(), start, {"expression"});
      }
    }
    out.push_back({kind, start, std::string(1, c)});
    ++i;
  }
  out.push_back({Tok::End, src.size(), ""});
  return out;
}

// ---------------------------------------------------------------------------
// Parser

const std::vector<std::string> kContinuation = {"+", "-", "*", "/", "^"};

class Parser {
 public:
  explicit Parser(std::string_view src) : toks_(tokenize(src)) {}

  ExprPtr parse() {
    auto e = expr();
    if (peek().kind != Tok::End) {
      auto expected = kContinuation;
      expected.insert(expected.begin(), "end of input");
      fail("unexpected '" + peek().text + "'", expected);
    }
    return e;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& advance() { return toks_[pos_++]; }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    ++pos_;
    return true;
  }

  [[noreturn]] void fail(const std::string& what, const std::vector<std::string>& expected) const {
    std::ostringstream os;
    os << what << " at offset " << peek().offset << "; expected";
    for (std::size_t i = 0; i < expected.size(); ++i) os << (i ? ", " : " ") << expected[i];
    throw ParseError(os.str(), peek().offset, expected);
  }

  ExprPtr binary(BinaryOp op, ExprPtr l, ExprPtr r) {
    return std::make_shared<const Expr>(Binary{op, std::move(l), std::move(r)});
  }

  ExprPtr expr() {
    auto lhs = term();
    for (;;) {
      if (accept(Tok::Plus)) {
        lhs = binary(BinaryOp::Add, lhs, term());
      } else if (accept(Tok::Minus)) {
        lhs = binary(BinaryOp::Sub, lhs, term());
      } else {
        return lhs;
      }
    }
  }

  ExprPtr term() {
    auto lhs = factor();
    for (;;) {
      if (accept(Tok::Star)) {
        lhs = binary(BinaryOp::Mul, lhs, factor());
      } else if (accept(Tok::Slash)) {
        lhs = binary(BinaryOp::Div, lhs, factor());
      } else {
        return lhs;
      }
    }
  }

  ExprPtr factor() {
    if (accept(Tok::Minus)) return std::make_shared<const Expr>(Unary{UnaryOp::Neg, power()});
    return power();
  }

  ExprPtr power() {
    auto base = atom();
    if (accept(Tok::Caret)) return binary(BinaryOp::Pow, base, factor());
    return base;
  }

  ExprPtr atom() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Number:
        advance();
        return ex::constant(t.number);
      case Tok::LParen: {
        advance();
        auto inner = expr();
        if (!accept(Tok::RParen)) {
          auto expected = kContinuation;
          expected.insert(expected.begin(), ")");
          fail(peek().kind == Tok::End ? "unterminated parenthesis" : "unexpected '" + peek().text + "'",
               expected);
        }
        return inner;
      }
      case Tok::Ident:
        return identifier();
      default:
        fail(t.kind == Tok::End ? "unexpected end of input" : "unexpected '" + t.text + "'",
             {"number", "x", "identifier", "("});
    }
  }

  ExprPtr identifier() {
    const Token name = advance();
    static const std::map<std::string, UnaryOp> functions = {{"exp", UnaryOp::Exp},
                                                             {"log", UnaryOp::Log},
                                                             {"sin", UnaryOp::Sin},
                                                             {"cos", UnaryOp::Cos},
                                                             {"sqrt", UnaryOp::Sqrt}};
    if (auto fn = functions.find(name.text); fn != functions.end()) {
      if (!accept(Tok::LParen)) fail("function '" + name.text + "' needs an argument", {"("});
      auto arg = expr();
      if (!accept(Tok::RParen)) {
        auto expected = kContinuation;
        expected.insert(expected.begin(), ")");
        fail("unterminated argument list", expected);
      }
      return std::make_shared<const Expr>(Unary{fn->second, arg});
    }
    if (peek().kind == Tok::LParen) {
      pos_--;
      fail("unknown function '" + name.text + "'", {"exp", "log", "sin", "cos", "sqrt"});
    }
    if (name.text == "x") return ex::x();
    if (name.text == "pi") return ex::named(std::numbers::pi, "pi");
    if (name.text == "phi") return ex::named(std::numbers::phi, "phi");
    if (name.text == "e") return ex::named(std::numbers::e, "e");
    return ex::parameter(name.text);
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------

std::string format_number(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

bool is_const(const ExprPtr& e, double v) {
  const auto* c = std::get_if<Constant>(&e->node());
  return c && c->value == v;
}

const Constant* const_node(const ExprPtr& e) { return std::get_if<Constant>(&e->node()); }

bool is_integer(double v) { return std::isfinite(v) && std::floor(v) == v; }

}  // namespace

ExprPtr parse_expression(std::string_view src) {
  Parser p(src);
  return p.parse();
}

std::string to_string(const ExprPtr& e) {
  return std::visit(
      overloaded{
          [](const Constant& c) -> std::string {
            if (!c.name.empty()) return c.name;
            return c.value < 0 ? "(" + format_number(c.value) + ")" : format_number(c.value);
          },
          [](const Variable&) -> std::string { return "x"; },
          [](const Parameter& p) -> std::string { return p.name; },
          [](const Unary& u) -> std::string {
            if (u.op == UnaryOp::Neg) return "(-" + to_string(u.arg) + ")";
            return std::string(function_name(u.op)) + "(" + to_string(u.arg) + ")";
          },
          [](const Binary& b) -> std::string {
            return "(" + to_string(b.lhs) + " " + operator_text(b.op) + " " + to_string(b.rhs) + ")";
          },
      },
      e->node());
}

bool structurally_equal(const ExprPtr& a, const ExprPtr& b) {
  if (a->node().index() != b->node().index()) return false;
  return std::visit(
      overloaded{
          [&](const Constant& c) {
            const auto& d = std::get<Constant>(b->node());
            return c.value == d.value && c.name == d.name;
          },
          [&](const Variable&) { return true; },
          [&](const Parameter& p) { return p.name == std::get<Parameter>(b->node()).name; },
          [&](const Unary& u) {
            const auto& v = std::get<Unary>(b->node());
            return u.op == v.op && structurally_equal(u.arg, v.arg);
          },
          [&](const Binary& l) {
            const auto& r = std::get<Binary>(b->node());
            return l.op == r.op && structurally_equal(l.lhs, r.lhs) && structurally_equal(l.rhs, r.rhs);
          },
      },
      a->node());
}

namespace {

void collect_parameters(const ExprPtr& e, std::set<std::string>& out) {
  std::visit(overloaded{
                 [](const Constant&) {},
                 [](const Variable&) {},
                 [&](const Parameter& p) { out.insert(p.name); },
                 [&](const Unary& u) { collect_parameters(u.arg, out); },
                 [&](const Binary& b) {
                   collect_parameters(b.lhs, out);
                   collect_parameters(b.rhs, out);
                 },
             },
             e->node());
}

ExprPtr substitute_known(const ExprPtr& e, const std::map<std::string, double>& params) {
  return std::visit(
      overloaded{
          [&](const Constant&) { return e; },
          [&](const Variable&) { return e; },
          [&](const Parameter& p) { return ex::constant(params.at(p.name)); },
          [&](const Unary& u) {
            return std::make_shared<const Expr>(Unary{u.op, substitute_known(u.arg, params)});
          },
          [&](const Binary& b) {
            return std::make_shared<const Expr>(
                Binary{b.op, substitute_known(b.lhs, params), substitute_known(b.rhs, params)});
          },
      },
      e->node());
}

}  // namespace

std::set<std::string> free_parameters(const ExprPtr& e) {
  std::set<std::string> out;
  collect_parameters(e, out);
  return out;
}

ExprPtr substitute(const ExprPtr& e, const std::map<std::string, double>& params) {
  std::vector<std::string> missing;
  for (const auto& name : free_parameters(e))
    if (!params.count(name)) missing.push_back(name);
  if (!missing.empty()) throw UnboundParameter(missing);
  return substitute_known(e, params);
}

bool depends_on_x(const ExprPtr& e) {
  return std::visit(overloaded{
                        [](const Constant&) { return false; },
                        [](const Variable&) { return true; },
                        [](const Parameter&) { return false; },
                        [](const Unary& u) { return depends_on_x(u.arg); },
                        [](const Binary& b) { return depends_on_x(b.lhs) || depends_on_x(b.rhs); },
                    },
                    e->node());
}

namespace {

double apply_pow(double base, double expo) {
  if (base < 0.0 && !is_integer(expo)) {
    std::ostringstream os;
    os << "negative base " << base << " raised to non-integer power " << expo;
    throw DomainError(os.str());
  }
  return std::pow(base, expo);
}

double apply_unary(UnaryOp op, double a) {
  switch (op) {
    case UnaryOp::Neg:
      return -a;
    case UnaryOp::Exp:
      return std::exp(a);
    case UnaryOp::Log:
      if (!(a > 0.0)) {
        std::ostringstream os;
        os << "log of non-positive value " << a;
        throw DomainError(os.str());
      }
      return std::log(a);
    case UnaryOp::Sin:
      return std::sin(a);
    case UnaryOp::Cos:
      return std::cos(a);
    case UnaryOp::Sqrt:
      if (a < 0.0) {
        std::ostringstream os;
        os << "sqrt of negative value " << a;
        throw DomainError(os.str());
      }
      return std::sqrt(a);
  }
  return 0.0;
}

double apply_binary(BinaryOp op, double a, double b) {
  switch (op) {
    case BinaryOp::Add:
      return a + b;
    case BinaryOp::Sub:
      return a - b;
    case BinaryOp::Mul:
      return a * b;
    case BinaryOp::Div:
      return a / b;
    case BinaryOp::Pow:
      return apply_pow(a, b);
  }
  return 0.0;
}

}  // namespace

double evaluate(const ExprPtr& e, double x) {
  return std::visit(overloaded{
                        [](const Constant& c) { return c.value; },
                        [x](const Variable&) { return x; },
                        [](const Parameter& p) -> double { throw UnboundParameter({p.name}); },
                        [x](const Unary& u) { return apply_unary(u.op, evaluate(u.arg, x)); },
                        [x](const Binary& b) {
                          return apply_binary(b.op, evaluate(b.lhs, x), evaluate(b.rhs, x));
                        },
                    },
                    e->node());
}

ExprPtr differentiate(const ExprPtr& e) {
  using namespace ex;
  return std::visit(
      overloaded{
          [](const Constant&) { return constant(0.0); },
          [](const Variable&) { return constant(1.0); },
          [](const Parameter&) { return constant(0.0); },
          [&](const Unary& u) -> ExprPtr {
            const auto du = differentiate(u.arg);
            switch (u.op) {
              case UnaryOp::Neg:
                return neg(du);
              case UnaryOp::Exp:
                return mul(e, du);
              case UnaryOp::Log:
                return div(du, u.arg);
              case UnaryOp::Sin:
                return mul(unary(UnaryOp::Cos, u.arg), du);
              case UnaryOp::Cos:
                return neg(mul(unary(UnaryOp::Sin, u.arg), du));
              case UnaryOp::Sqrt:
                return div(du, mul(constant(2.0), e));
            }
            return constant(0.0);
          },
          [&](const Binary& b) -> ExprPtr {
            const auto& l = b.lhs;
            const auto& r = b.rhs;
            switch (b.op) {
              case BinaryOp::Add:
                return add(differentiate(l), differentiate(r));
              case BinaryOp::Sub:
                return sub(differentiate(l), differentiate(r));
              case BinaryOp::Mul:
                return add(mul(differentiate(l), r), mul(l, differentiate(r)));
              case BinaryOp::Div:
                return div(sub(mul(differentiate(l), r), mul(l, differentiate(r))), mul(r, r));
              case BinaryOp::Pow:
                if (!depends_on_x(r)) {
                  return mul(mul(r, pow(l, sub(r, constant(1.0)))), differentiate(l));
                }
                if (!depends_on_x(l)) {
                  return mul(mul(e, unary(UnaryOp::Log, l)), differentiate(r));
                }
                return mul(e, add(mul(differentiate(r), unary(UnaryOp::Log, l)),
                                  div(mul(r, differentiate(l)), l)));
            }
            return constant(0.0);
          },
      },
      e->node());
}

namespace ex {

ExprPtr constant(double v) { return std::make_shared<const Expr>(Constant{v, {}}); }
ExprPtr named(double v, std::string name) {
  return std::make_shared<const Expr>(Constant{v, std::move(name)});
}
ExprPtr x() { return std::make_shared<const Expr>(Variable{}); }
ExprPtr parameter(std::string name) { return std::make_shared<const Expr>(Parameter{std::move(name)}); }

ExprPtr neg(ExprPtr a) {
  if (const auto* c = const_node(a)) return constant(-c->value);
  if (const auto* u = std::get_if<Unary>(&a->node()); u && u->op == UnaryOp::Neg) return u->arg;
  return std::make_shared<const Expr>(Unary{UnaryOp::Neg, std::move(a)});
}

ExprPtr unary(UnaryOp op, ExprPtr a) {
  if (op == UnaryOp::Neg) return neg(std::move(a));
  return std::make_shared<const Expr>(Unary{op, std::move(a)});
}

ExprPtr add(ExprPtr a, ExprPtr b) {
  if (const_node(a) && const_node(b)) return constant(const_node(a)->value + const_node(b)->value);
  if (is_const(a, 0.0)) return b;
  if (is_const(b, 0.0)) return a;
  return std::make_shared<const Expr>(Binary{BinaryOp::Add, std::move(a), std::move(b)});
}

ExprPtr sub(ExprPtr a, ExprPtr b) {
  if (const_node(a) && const_node(b)) return constant(const_node(a)->value - const_node(b)->value);
  if (is_const(b, 0.0)) return a;
  if (is_const(a, 0.0)) return neg(std::move(b));
  return std::make_shared<const Expr>(Binary{BinaryOp::Sub, std::move(a), std::move(b)});
}

ExprPtr mul(ExprPtr a, ExprPtr b) {
  if (const_node(a) && const_node(b)) return constant(const_node(a)->value * const_node(b)->value);
  if (is_const(a, 0.0) || is_const(b, 0.0)) return constant(0.0);
  if (is_const(a, 1.0)) return b;
  if (is_const(b, 1.0)) return a;
  if (is_const(a, -1.0)) return neg(std::move(b));
  if (is_const(b, -1.0)) return neg(std::move(a));
  return std::make_shared<const Expr>(Binary{BinaryOp::Mul, std::move(a), std::move(b)});
}

ExprPtr div(ExprPtr a, ExprPtr b) {
  if (const_node(a) && const_node(b) && const_node(b)->value != 0.0)
    return constant(const_node(a)->value / const_node(b)->value);
  if (is_const(a, 0.0)) return constant(0.0);
  if (is_const(b, 1.0)) return a;
  return std::make_shared<const Expr>(Binary{BinaryOp::Div, std::move(a), std::move(b)});
}

ExprPtr pow(ExprPtr a, ExprPtr b) {
  if (const_node(a) && const_node(b)) {
    const double base = const_node(a)->value;
    const double expo = const_node(b)->value;
    if (base > 0.0 || is_integer(expo)) return constant(std::pow(base, expo));
  }
  if (is_const(b, 1.0)) return a;
  if (is_const(b, 0.0)) return constant(1.0);
  return std::make_shared<const Expr>(Binary{BinaryOp::Pow, std::move(a), std::move(b)});
}

}  // namespace ex

}  // namespace logcvx
