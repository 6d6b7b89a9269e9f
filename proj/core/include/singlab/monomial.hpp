#pragma once

#include <compare>
#include <vector>

namespace singlab {

/// Exponent vector of a power product. Length equals the ambient variable
/// count; total degree is the sum of the entries.
class Monomial {
public:
  Monomial() = default;
  explicit Monomial(int nvars) : e_(static_cast<std::size_t>(nvars), 0) {}
  explicit Monomial(std::vector<int> exps);

  int nvars() const { return static_cast<int>(e_.size()); }
  int degree() const;
  int exponent(int var) const { return e_[static_cast<std::size_t>(var)]; }
  Monomial& set(int var, int exp);
  const std::vector<int>& exponents() const { return e_; }

  bool is_one() const;
  bool divides(const Monomial& m) const;
  bool coprime_with(const Monomial& m) const;

  Monomial operator*(const Monomial& m) const;
  /// *this / m. Requires m.divides(*this).
  Monomial quotient(const Monomial& m) const;
  static Monomial lcm(const Monomial& a, const Monomial& b);

  friend bool operator==(const Monomial&, const Monomial&) = default;
  // Plain lexicographic compare on the exponent vector; used only as a
  // canonical map key, not as a term order.
  friend auto operator<=>(const Monomial& a, const Monomial& b) {
    return a.e_ <=> b.e_;
  }

private:
  std::vector<int> e_;
};

/// Graded reverse lexicographic: higher degree wins, ties broken by the last
/// nonzero entry of a-b being negative.
bool grevlex_less(const Monomial& a, const Monomial& b);
/// Pure lexicographic with z1 > z2 > ... .
bool lex_less(const Monomial& a, const Monomial& b);
/// Elimination block order for the first `block` variables (grevlex within
/// each block, first block dominant).
bool block_less(const Monomial& a, const Monomial& b, int block);

}  // namespace singlab
