#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "singlab/errors.hpp"
#include "singlab/polynomial.hpp"
#include "test_util.hpp"

using namespace singlab;
using testutil::random_point;
using testutil::random_poly;

namespace {

MultivariatePolynomial P(const char* text, int n) {
  return MultivariatePolynomial::parse(text, n);
}

}  // namespace

TEST_CASE("rational canonical form") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(-3, -6) == Rational(1, 2));
  CHECK(Rational(3, -6).str() == "-1/2");
  CHECK(Rational(0, 7).str() == "0");
  CHECK(Rational(0, 7).denominator() == 1);
  CHECK(Rational::parse("12/8") == Rational(3, 2));
  CHECK(Rational::parse("-5") == Rational(-5));
  CHECK_THROWS_AS(Rational(1, 0), Error);
}

TEST_CASE("parse: grammar cases") {
  const auto p = P("z1^2 + 3/2*z2", 3);
  Monomial z1sq(3);
  z1sq.set(0, 2);
  Monomial z2(3);
  z2.set(1, 1);
  CHECK(p.coefficient(z1sq) == Rational(1));
  CHECK(p.coefficient(z2) == Rational(3, 2));
  CHECK(p.terms().size() == 2);

  CHECK(P("0", 2).is_zero());
  CHECK(P("(z1+z2)^2 - z1^2 - z2^2 - 2*z1*z2", 2).is_zero());
}

TEST_CASE("parse: errors carry a byte offset") {
  CHECK_THROWS_AS(P("z1 +", 2), ParseError);
  CHECK_THROWS_AS(P("z5", 3), ParseError);
  CHECK_THROWS_AS(P("z1 ^ z2", 3), ParseError);
  CHECK_THROWS_AS(P("1/0", 2), ParseError);
  try {
    P("z1 + $", 2);
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(e.offset == 5);
  }
}

TEST_CASE("degree of zero polynomial is a sentinel") {
  CHECK_FALSE(P("0", 2).degree().has_value());
  CHECK(P("z1*z2", 2).degree() == 2);
}

TEST_CASE("multiply: difference of squares and absorbing zero") {
  CHECK(P("z1+1", 1) * P("z1-1", 1) == P("z1^2-1", 1));
  const auto p = P("z1^3 - 2*z2 + 1", 3);
  CHECK((p * MultivariatePolynomial(3)).is_zero());
}

TEST_CASE("multiply: evaluation oracle on random pairs") {
  std::mt19937_64 rng(7);
  for (int round = 0; round < 8; ++round) {
    const auto p = random_poly(rng, 3, 4);
    const auto q = random_poly(rng, 3, 4);
    const auto prod = p * q;
    for (int k = 0; k < 20; ++k) {
      const auto pt = random_point(rng, 3);
      CHECK(prod.evaluate_exact(pt) == p.evaluate_exact(pt) * q.evaluate_exact(pt));
    }
    if (!p.is_zero() && !q.is_zero())
      CHECK(*prod.degree() == *p.degree() + *q.degree());
  }
}

TEST_CASE("differentiate: power rule and vanishing") {
  CHECK(P("z1^2*z2", 3).differentiate(0) == P("2*z1*z2", 3));
  CHECK(P("z1^3", 3).differentiate(1).is_zero());
  CHECK_THROWS_AS(P("z1", 2).differentiate(5), IndexOutOfRange);
}

TEST_CASE("differentiate: expand-then-differentiate oracle") {
  // d/dx of x(1+x)^2, built by multiplication rather than by hand
  const auto x = P("z1", 1);
  const auto phi = x * P("1+z1", 1) * P("1+z1", 1);
  CHECK(phi.differentiate(0) == P("3*z1^2 + 4*z1 + 1", 1));
}

TEST_CASE("substitute: direct composition and identity") {
  const auto p = P("z1^2 + z2", 2);
  const std::vector<MultivariatePolynomial> images = {P("z1", 2), P("z1*z2", 2)};
  CHECK(p.substitute(images) == P("z1^2 + z1*z2", 2));

  const std::vector<MultivariatePolynomial> id = {P("z1", 2), P("z2", 2)};
  CHECK(p.substitute(id) == p);
}

TEST_CASE("substitute: graph-map inverse sends the cubic equation to u1") {
  // z2 - z1^2 under z1 = u3, z2 = u1 + u3^2, z3 = u2 + u3^3
  const auto p = P("z2 - z1^2", 3);
  const std::vector<MultivariatePolynomial> inv = {P("z3", 3), P("z1 + z3^2", 3),
                                                   P("z2 + z3^3", 3)};
  CHECK(p.substitute(inv) == P("z1", 3));
  // re-substitution oracle: the forward map undoes it
  const std::vector<MultivariatePolynomial> fwd = {P("z2 - z1^2", 3), P("z3 - z1^3", 3),
                                                   P("z1", 3)};
  CHECK(P("z1", 3).substitute(fwd) == p);
}

TEST_CASE("evaluate: arithmetic and exactness oracle") {
  const auto p = P("z1^2 + z2", 2);
  const std::vector<cplx> pt = {cplx(2, 0), cplx(1, 0)};
  CHECK(p.evaluate(pt) == cplx(5, 0));

  std::mt19937_64 rng(11);
  for (int round = 0; round < 10; ++round) {
    const auto q = random_poly(rng, 3, 4);
    const auto rpt = random_point(rng, 3);
    std::vector<cplx> cpt;
    for (const auto& r : rpt) cpt.emplace_back(r.to_double(), 0.0);
    CHECK(std::abs(q.evaluate(cpt) - cplx(q.evaluate_exact(rpt).to_double(), 0.0)) < 1e-9);
  }
}

TEST_CASE("print/parse round trip") {
  std::mt19937_64 rng(3);
  for (int round = 0; round < 30; ++round) {
    const auto p = random_poly(rng, 3, 5);
    const std::string s = p.str();
    const auto q = MultivariatePolynomial::parse(s, 3);
    CHECK(q == p);
    CHECK(q.str() == s);
  }
  CHECK(P("0", 3).str() == "0");
}

TEST_CASE("ring axioms on random triples") {
  std::mt19937_64 rng(23);
  for (int round = 0; round < 10; ++round) {
    const auto a = random_poly(rng, 4, 4, 4);
    const auto b = random_poly(rng, 4, 4, 4);
    const auto c = random_poly(rng, 4, 4, 4);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
  }
}

TEST_CASE("mixed partials commute") {
  std::mt19937_64 rng(31);
  for (int round = 0; round < 10; ++round) {
    const auto p = random_poly(rng, 3, 5);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        CHECK(p.differentiate(i).differentiate(j) == p.differentiate(j).differentiate(i));
  }
}

TEST_CASE("substitution composes for affine maps") {
  std::mt19937_64 rng(41);
  auto random_affine = [&](int n) {
    std::vector<MultivariatePolynomial> images;
    for (int i = 0; i < n; ++i) {
      MultivariatePolynomial img = MultivariatePolynomial::constant(n, testutil::random_rational(rng));
      for (int v = 0; v < n; ++v)
        img += testutil::random_rational(rng) * MultivariatePolynomial::variable(n, v);
      images.push_back(std::move(img));
    }
    return images;
  };
  for (int round = 0; round < 6; ++round) {
    const auto p = random_poly(rng, 3, 3);
    const auto A = random_affine(3);
    const auto B = random_affine(3);
    // (p o A) o B == p o (A o B)
    std::vector<MultivariatePolynomial> AB;
    for (const auto& a : A) AB.push_back(a.substitute(B));
    CHECK(p.substitute(A).substitute(B) == p.substitute(AB));
  }
}

TEST_CASE("dimension mismatches are rejected") {
  CHECK_THROWS_AS(P("z1", 1) * P("z1", 2), DimensionMismatch);
  const std::vector<MultivariatePolynomial> too_short = {P("z1", 2)};
  CHECK_THROWS_AS(P("z1+z2", 2).substitute(too_short), DimensionMismatch);
}

TEST_CASE("univariate gcd") {
  CHECK(*univariate_gcd(P("z1^2-1", 1), P("z1-1", 1)).degree() == 1);
  CHECK(*univariate_gcd(P("z1^2+1", 1), P("z1-1", 1)).degree() == 0);
}
