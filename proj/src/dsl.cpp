#include "symflat/dsl.hpp"

#include <cctype>
#include <vector>

namespace symflat {

ParseError::ParseError(int line, int column, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      line_(line), column_(column) {}

namespace {

enum class Tok { number, x, y, dx, dy, plus, minus, star, slash, wedge, caret, lparen, rparen, end };

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
};

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  int line = 1, column = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t k) {
    for (std::size_t j = 0; j < k; ++j) {
      if (src[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
      ++i;
    }
  };
  auto digits_from = [&](std::size_t p) {
    std::size_t q = p;
    while (q < src.size() && std::isdigit(static_cast<unsigned char>(src[q]))) ++q;
    return q;
  };
  while (i < src.size()) {
    const char ch = src[i];
    if (std::isspace(static_cast<unsigned char>(ch))) {
      advance(1);
      continue;
    }
    const int l = line, c = column;
    auto simple = [&](Tok kind, std::size_t len) {
      out.push_back({kind, std::string(src.substr(i, len)), l, c});
      advance(len);
    };
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      simple(Tok::number, digits_from(i) - i);
      continue;
    }
    if (ch == 'x' || ch == 'y' || ch == 'd') {
      Tok kind;
      std::size_t start = i + 1;
      if (ch == 'd') {
        if (i + 1 < src.size() && src[i + 1] == 'x') {
          kind = Tok::dx;
        } else if (i + 1 < src.size() && src[i + 1] == 'y') {
          kind = Tok::dy;
        } else {
          throw ParseError(l, c, "expected dx<i> or dy<i>");
        }
        start = i + 2;
      } else {
        kind = ch == 'x' ? Tok::x : Tok::y;
      }
      std::size_t end = digits_from(start);
      if (end == start) throw ParseError(l, c, "missing coordinate index");
      simple(kind, end - i);
      continue;
    }
    switch (ch) {
    case '+': simple(Tok::plus, 1); continue;
    case '-': simple(Tok::minus, 1); continue;
    case '*': simple(Tok::star, 1); continue;
    case '^': simple(Tok::caret, 1); continue;
    case '(': simple(Tok::lparen, 1); continue;
    case ')': simple(Tok::rparen, 1); continue;
    case '/':
      if (i + 1 < src.size() && src[i + 1] == '\\') {
        simple(Tok::wedge, 2);
      } else {
        simple(Tok::slash, 1);
      }
      continue;
    default: throw ParseError(l, c, std::string("unexpected character '") + ch + "'");
    }
  }
  out.push_back({Tok::end, "", line, column});
  return out;
}

class Parser {
public:
  Parser(std::vector<Token> toks, int n) : toks_(std::move(toks)), n_(n) {}

  Form parse() {
    Form f = form();
    if (peek().kind != Tok::end) fail(peek(), "unexpected '" + peek().text + "'");
    return f;
  }

private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& take() { return toks_[pos_++]; }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    ++pos_;
    return true;
  }
  [[noreturn]] static void fail(const Token& t, const std::string& msg) { throw ParseError(t.line, t.column, msg); }

  static Form add(const Form& a, const Form& b, const Token& at) {
    if (a.degree() == b.degree()) return a + b;
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    fail(at, "inhomogeneous sum of degrees " + std::to_string(a.degree()) + " and " + std::to_string(b.degree()));
  }

  Form form() {
    Form acc = term();
    for (;;) {
      const Token& op = peek();
      if (accept(Tok::plus)) {
        acc = add(acc, term(), op);
      } else if (accept(Tok::minus)) {
        acc = add(acc, -term(), op);
      } else {
        return acc;
      }
    }
  }

  Form term() {
    Form acc = product();
    while (peek().kind == Tok::wedge) {
      const Token& op = take();
      Form rhs = product();
      if (acc.degree() + rhs.degree() > 2 * n_ && !acc.is_zero() && !rhs.is_zero())
        fail(op, "wedge degree exceeds " + std::to_string(2 * n_));
      acc = wedge(acc, rhs);
    }
    return acc;
  }

  Form product() {
    Form acc = unary();
    while (peek().kind == Tok::star) {
      const Token& op = take();
      Form rhs = unary();
      if (acc.degree() > 0 && rhs.degree() > 0) fail(op, "'*' between two forms of positive degree; use '/\\'");
      acc = wedge(acc, rhs);
    }
    return acc;
  }

  Form unary() {
    if (accept(Tok::minus)) return -unary();
    if (accept(Tok::plus)) return unary();
    return power();
  }

  Form power() {
    Form base = primary();
    if (peek().kind != Tok::caret) return base;
    const Token& op = take();
    const Token& e = take();
    if (e.kind != Tok::number) fail(e, "exponent must be a non-negative integer");
    if (base.degree() != 0) fail(op, "'^' applies to functions only");
    if (e.text.size() > 3) fail(e, "exponent too large");
    const int k = std::stoi(e.text);
    Poly p = base.coefficient(FormIndex());
    Poly out = Poly::constant(n_, 1);
    for (int i = 0; i < k; ++i) out = out * p;
    return Form::function(out);
  }

  int index(const Token& t, std::size_t prefix) {
    const std::string digits = t.text.substr(prefix);
    if (digits.size() > 3) fail(t, "coordinate index out of range");
    const int i = std::stoi(digits);
    if (i < 1 || i > n_) fail(t, "coordinate index " + digits + " out of range 1.." + std::to_string(n_));
    return i;
  }

  Form primary() {
    const Token& t = take();
    switch (t.kind) {
    case Tok::number: {
      Rational q(t.text);
      if (accept(Tok::slash)) {
        const Token& d = take();
        if (d.kind != Tok::number) fail(d, "expected a denominator");
        Rational den(d.text);
        if (den == 0) fail(d, "zero denominator");
        q /= den;
      }
      q.canonicalize();
      return Form::constant(n_, q);
    }
    case Tok::x: return Form::function(Poly::coordinate(n_, index(t, 1) - 1));
    case Tok::y: return Form::function(Poly::coordinate(n_, n_ + index(t, 1) - 1));
    case Tok::dx: return Form::dx(n_, index(t, 2));
    case Tok::dy: return Form::dy(n_, index(t, 2));
    case Tok::lparen: {
      Form inner = form();
      const Token& close = take();
      if (close.kind != Tok::rparen) fail(close, "expected ')'");
      return inner;
    }
    case Tok::end: fail(t, "unexpected end of input");
    default: fail(t, "unexpected '" + t.text + "'");
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  int n_;
};

} // namespace

Form parse_form(std::string_view src, int n, std::optional<int> expected_degree) {
  if (n < 1 || n > kMaxChartDim) throw std::invalid_argument("parse_form: unsupported chart dimension");
  Form f = Parser(tokenize(src), n).parse();
  if (expected_degree) {
    if (f.is_zero()) return Form(n, *expected_degree);
    if (f.degree() != *expected_degree)
      throw ParseError(1, 1, "expected a " + std::to_string(*expected_degree) + "-form, got degree " +
                                 std::to_string(f.degree()));
  }
  return f;
}

Poly parse_poly(std::string_view src, int n) { return parse_form(src, n, 0).coefficient(FormIndex()); }

} // namespace symflat
