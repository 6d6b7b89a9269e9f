// Text grammar for polynomials: variables z1..z9 (zNN above nine), integer
// and p/q rational literals, operators + - * ^ with parentheses, whitespace
// insignificant. Printing is grevlex, explicit '*', no unary plus.

#include <algorithm>
#include <cctype>
#include <sstream>
#include <vector>

#include "singlab/errors.hpp"
#include "singlab/polynomial.hpp"

namespace singlab {

namespace {

class Parser {
public:
  Parser(std::string_view text, int nvars) : text_(text), nvars_(nvars) {}

  MultivariatePolynomial run() {
    MultivariatePolynomial p = parse_expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return p;
  }

private:
  std::string_view text_;
  int nvars_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek_is(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  bool accept(char c) {
    if (peek_is(c)) {
      ++pos_;
      return true;
    }
    return false;
  }

  mpz_class parse_uint() {
    skip_ws();
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
      fail("expected digit");
    std::string digits;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
      digits.push_back(text_[pos_++]);
    return mpz_class(digits);
  }

  MultivariatePolynomial parse_expr() {
    bool negate = false;
    skip_ws();
    if (accept('-')) negate = true;
    MultivariatePolynomial acc = parse_term();
    if (negate) acc = -acc;
    while (true) {
      if (accept('+')) {
        acc += parse_term();
      } else if (accept('-')) {
        acc -= parse_term();
      } else {
        return acc;
      }
    }
  }

  MultivariatePolynomial parse_term() {
    MultivariatePolynomial acc = parse_factor();
    while (accept('*')) acc = acc * parse_factor();
    return acc;
  }

  MultivariatePolynomial parse_factor() {
    MultivariatePolynomial base = parse_atom();
    while (accept('^')) {
      const mpz_class e = parse_uint();
      if (!e.fits_sint_p()) fail("exponent too large");
      base = base.pow(e.get_si());
    }
    return base;
  }

  MultivariatePolynomial parse_atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      MultivariatePolynomial inner = parse_expr();
      skip_ws();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (c == 'z') {
      ++pos_;
      if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
        fail("expected variable index after 'z'");
      const std::size_t at = pos_;
      const mpz_class idx = parse_uint();
      if (idx < 1 || idx > nvars_) {
        pos_ = at;
        fail("variable index out of range");
      }
      return MultivariatePolynomial::variable(nvars_, static_cast<int>(idx.get_si()) - 1);
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mpz_class num = parse_uint();
      if (accept('/')) {
        skip_ws();
        const std::size_t at = pos_;
        mpz_class den = parse_uint();
        if (den == 0) {
          pos_ = at;
          fail("zero denominator");
        }
        mpq_class q(num, den);
        q.canonicalize();
        return MultivariatePolynomial::constant(nvars_, Rational(q));
      }
      return MultivariatePolynomial::constant(nvars_, Rational(mpq_class(num)));
    }
    fail("unexpected character");
  }
};

std::string monomial_str(const Monomial& m) {
  std::ostringstream os;
  bool first = true;
  for (int v = 0; v < m.nvars(); ++v) {
    const int e = m.exponent(v);
    if (e == 0) continue;
    if (!first) os << "*";
    os << "z" << (v + 1);
    if (e > 1) os << "^" << e;
    first = false;
  }
  return os.str();
}

}  // namespace

MultivariatePolynomial MultivariatePolynomial::parse(std::string_view text, int nvars) {
  return Parser(text, nvars).run();
}

std::string MultivariatePolynomial::str() const {
  if (terms_.empty()) return "0";
  std::vector<const TermMap::value_type*> sorted;
  sorted.reserve(terms_.size());
  for (const auto& t : terms_) sorted.push_back(&t);
  std::sort(sorted.begin(), sorted.end(),
            [](const auto* a, const auto* b) { return grevlex_less(b->first, a->first); });

  std::ostringstream os;
  bool first = true;
  for (const auto* t : sorted) {
    const Rational& c = t->second;
    const Rational a = Rational::abs(c);
    if (first) {
      if (c.sign() < 0) os << "-";
      first = false;
    } else {
      os << (c.sign() < 0 ? " - " : " + ");
    }
    const std::string mono = monomial_str(t->first);
    if (mono.empty()) {
      os << a.str();
    } else if (a.is_one()) {
      os << mono;
    } else {
      os << a.str() << "*" << mono;
    }
  }
  return os.str();
}

}  // namespace singlab
