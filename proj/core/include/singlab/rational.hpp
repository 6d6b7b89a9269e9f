#pragma once

#include <gmpxx.h>

#include <compare>
#include <string>
#include <string_view>

namespace singlab {

/// Exact rational scalar. Canonical form throughout: reduced to lowest terms,
/// denominator positive, zero stored as 0/1.
class Rational {
public:
  Rational() : v_(0) {}
  Rational(int n) : v_(n) {}
  Rational(long n) : v_(static_cast<signed long>(n)) {}
  Rational(long long n);
  Rational(long num, long den);
  explicit Rational(mpq_class q);
  explicit Rational(const mpz_class& n) : v_(n) {}

  /// Accepts an optionally signed integer or `p/q` literal.
  static Rational parse(std::string_view text);

  mpz_class numerator() const { return v_.get_num(); }
  mpz_class denominator() const { return v_.get_den(); }
  const mpq_class& mpq() const { return v_; }

  bool is_zero() const { return sgn(v_) == 0; }
  bool is_one() const { return v_ == 1; }
  bool is_integer() const { return v_.get_den() == 1; }
  int sign() const { return sgn(v_); }
  double to_double() const { return v_.get_d(); }
  /// Throws unless the value fits a signed long integer exactly.
  long to_integer() const;
  std::string str() const;

  Rational operator-() const;
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
         : c > 0 ? std::strong_ordering::greater
                 : std::strong_ordering::equal;
  }

  static Rational pow(const Rational& base, unsigned e);
  static Rational abs(const Rational& x);
  static Rational factorial(unsigned n);

private:
  mpq_class v_;
};

}  // namespace singlab
