#pragma once

#include <string>
#include <vector>

#include "singlab/polynomial.hpp"

namespace singlab {

/// Total multiplicative monomial order with 1 minimal.
struct MonomialOrder {
  enum class Kind { Grevlex, Lex, Elimination };
  Kind kind = Kind::Grevlex;
  int block = 0;  // eliminated leading variables, Elimination only

  static MonomialOrder grevlex() { return {Kind::Grevlex, 0}; }
  static MonomialOrder lex() { return {Kind::Lex, 0}; }
  static MonomialOrder elimination(int first_k) { return {Kind::Elimination, first_k}; }

  bool less(const Monomial& a, const Monomial& b) const;
  bool greater(const Monomial& a, const Monomial& b) const { return less(b, a); }
  std::string name() const;
};

/// A finite generating set; zero generators are dropped on construction.
struct Ideal {
  int nvars = 0;
  std::vector<MultivariatePolynomial> generators;

  Ideal() = default;
  Ideal(int nvars, std::vector<MultivariatePolynomial> gens);
  bool is_zero() const { return generators.empty(); }
};

struct GroebnerOptions {
  // Reduction budget (S-pairs plus individual elimination steps); exceeding
  // it raises ResourceLimitExceeded rather than returning a wrong answer.
  long budget = 200000;
};

/// Reduced Groebner basis: monic elements, no leading term divides another,
/// tails fully reduced. Unique for a given ideal and order.
class GroebnerBasis {
public:
  GroebnerBasis(int nvars, MonomialOrder order, std::vector<MultivariatePolynomial> elements);

  int nvars() const { return nvars_; }
  const MonomialOrder& order() const { return order_; }
  const std::vector<MultivariatePolynomial>& elements() const { return elements_; }
  const std::vector<Monomial>& leading_monomials() const { return leading_; }
  bool is_unit() const;

private:
  int nvars_;
  MonomialOrder order_;
  std::vector<MultivariatePolynomial> elements_;
  std::vector<Monomial> leading_;
};

GroebnerBasis buchberger(const Ideal& ideal, const MonomialOrder& order,
                         const GroebnerOptions& opts = {});

/// Remainder with no term divisible by any leading term of G; zero iff the
/// polynomial lies in the ideal.
MultivariatePolynomial normal_form(const MultivariatePolynomial& p, const GroebnerBasis& G);
bool in_ideal(const MultivariatePolynomial& p, const GroebnerBasis& G);

/// Generators of I ∩ k[z_{firstK+1},...,z_n], still presented in the ambient ring.
Ideal eliminate(const Ideal& ideal, int first_k, const GroebnerOptions& opts = {});

/// I : g^∞ via one auxiliary variable y and elimination of y from I + (1 - y g).
Ideal saturate(const Ideal& ideal, const MultivariatePolynomial& g,
               const GroebnerOptions& opts = {});

bool is_zero_dimensional(const GroebnerBasis& G);

/// The monomial staircase: all monomials outside the leading-term ideal.
/// Throws NotZeroDimensional when infinite.
std::vector<Monomial> quotient_basis(const GroebnerBasis& G);

/// Vector-space dimension of the quotient ring, i.e. the total multiplicity.
long multiplicity_dim(const Ideal& ideal, const GroebnerOptions& opts = {});

}  // namespace singlab
