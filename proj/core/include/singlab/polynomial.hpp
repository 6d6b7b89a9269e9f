#pragma once

#include <complex>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "singlab/monomial.hpp"
#include "singlab/rational.hpp"

namespace singlab {

using cplx = std::complex<double>;

/// Sparse multivariate polynomial with exact rational coefficients.
/// Invariants: no stored zero coefficients; equality is term-map equality;
/// the zero polynomial has no degree (degree() is nullopt, never -1).
class MultivariatePolynomial {
public:
  using TermMap = std::map<Monomial, Rational>;

  explicit MultivariatePolynomial(int nvars);
  static MultivariatePolynomial constant(int nvars, const Rational& c);
  static MultivariatePolynomial variable(int nvars, int var);
  static MultivariatePolynomial from_term(const Monomial& m, const Rational& c);

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  std::optional<int> degree() const;
  const TermMap& terms() const { return terms_; }
  Rational coefficient(const Monomial& m) const;
  Rational constant_term() const;

  MultivariatePolynomial& add_term(const Monomial& m, const Rational& c);

  MultivariatePolynomial operator-() const;
  MultivariatePolynomial& operator+=(const MultivariatePolynomial& o);
  MultivariatePolynomial& operator-=(const MultivariatePolynomial& o);
  friend MultivariatePolynomial operator+(MultivariatePolynomial a,
                                          const MultivariatePolynomial& b) {
    return a += b;
  }
  friend MultivariatePolynomial operator-(MultivariatePolynomial a,
                                          const MultivariatePolynomial& b) {
    return a -= b;
  }
  friend MultivariatePolynomial operator*(const MultivariatePolynomial& a,
                                          const MultivariatePolynomial& b);
  friend MultivariatePolynomial operator*(const Rational& c, MultivariatePolynomial p);
  friend bool operator==(const MultivariatePolynomial& a,
                         const MultivariatePolynomial& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

  MultivariatePolynomial pow(int e) const;
  MultivariatePolynomial differentiate(int var) const;
  /// Exact composition p(images). Every image must share one ambient
  /// dimension, which becomes the dimension of the result.
  MultivariatePolynomial substitute(std::span<const MultivariatePolynomial> images) const;
  cplx evaluate(std::span<const cplx> point) const;
  Rational evaluate_exact(std::span<const Rational> point) const;

  bool uses_variable(int var) const;
  /// Reinterpret in nvars+1 variables with a fresh variable at `position`.
  MultivariatePolynomial with_variable_inserted(int position) const;
  /// Drop variable `position`; it must not occur in any term.
  MultivariatePolynomial with_variable_removed(int position) const;
  /// Homogenize to `target_degree` with the homogenizing variable appended
  /// as the last variable of an (nvars+1)-dimensional ring.
  MultivariatePolynomial homogenized(int target_degree) const;
  /// The terms of exactly the given total degree.
  MultivariatePolynomial homogeneous_part(int deg) const;
  /// Monomial-wise exact quotient by a single variable, when possible.
  std::optional<MultivariatePolynomial> divided_by_variable(int var) const;
  /// Largest e with z_var^e dividing every term (0 for the zero polynomial).
  int variable_order(int var) const;

  /// Nonnegative gcd of all coefficients (gcd of numerators over lcm of
  /// denominators); zero for the zero polynomial.
  Rational content() const;

  static MultivariatePolynomial parse(std::string_view text, int nvars);
  /// Grevlex term order, explicit '*', no unary plus.
  std::string str() const;

private:
  int nvars_;
  TermMap terms_;
};

using Poly = MultivariatePolynomial;

/// Euclidean gcd of univariate polynomials, returned monic. Both inputs must
/// be nonzero and genuinely univariate (nvars == 1).
MultivariatePolynomial univariate_gcd(const MultivariatePolynomial& a,
                                      const MultivariatePolynomial& b);

}  // namespace singlab
