#include "singlab/rational.hpp"

#include <cstdlib>

#include "singlab/errors.hpp"

namespace singlab {

Rational::Rational(long long n) {
  mpz_class z;
  if (n >= 0) {
    z = mpz_class(static_cast<unsigned long>(n));
  } else {
    // avoid overflow on LLONG_MIN
    z = mpz_class(static_cast<unsigned long>(-(n + 1)));
    z += 1;
    z = -z;
  }
  v_ = mpq_class(z);
}

Rational::Rational(long num, long den) {
  if (den == 0) throw Error("rational with zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rational::Rational(mpq_class q) : v_(std::move(q)) {
  if (v_.get_den() == 0) throw Error("rational with zero denominator");
  v_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  const std::string s(text);
  std::size_t slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      return Rational(mpq_class(mpz_class(s)));
    }
    mpz_class num(s.substr(0, slash));
    mpz_class den(s.substr(slash + 1));
    if (den == 0) throw Error("rational with zero denominator");
    mpq_class q(num, den);
    q.canonicalize();
    return Rational(q);
  } catch (const std::invalid_argument&) {
    throw ParseError("malformed rational literal '" + s + "'", 0);
  }
}

long Rational::to_integer() const {
  if (!is_integer()) throw Error("value " + str() + " is not an integer");
  if (!v_.get_num().fits_slong_p()) throw Error("integer " + str() + " out of range");
  return v_.get_num().get_si();
}

std::string Rational::str() const {
  if (is_integer()) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

Rational Rational::operator-() const {
  Rational r;
  r.v_ = -v_;
  return r;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw Error("rational division by zero");
  v_ /= o.v_;
  return *this;
}

Rational Rational::pow(const Rational& base, unsigned e) {
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), base.v_.get_num().get_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), base.v_.get_den().get_mpz_t(), e);
  mpq_class q(num, den);
  q.canonicalize();
  return Rational(q);
}

Rational Rational::abs(const Rational& x) { return x.sign() < 0 ? -x : x; }

Rational Rational::factorial(unsigned n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return Rational(f);
}

}  // namespace singlab
