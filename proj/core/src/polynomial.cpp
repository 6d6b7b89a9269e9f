#include "singlab/polynomial.hpp"

#include <algorithm>
#include <limits>

#include "singlab/errors.hpp"

namespace singlab {

MultivariatePolynomial::MultivariatePolynomial(int nvars) : nvars_(nvars) {
  if (nvars < 0) throw Error("negative ambient dimension");
}

MultivariatePolynomial MultivariatePolynomial::constant(int nvars, const Rational& c) {
  MultivariatePolynomial p(nvars);
  p.add_term(Monomial(nvars), c);
  return p;
}

MultivariatePolynomial MultivariatePolynomial::variable(int nvars, int var) {
  if (var < 0 || var >= nvars) throw IndexOutOfRange("variable index out of range");
  MultivariatePolynomial p(nvars);
  Monomial m(nvars);
  m.set(var, 1);
  p.add_term(m, Rational(1));
  return p;
}

MultivariatePolynomial MultivariatePolynomial::from_term(const Monomial& m,
                                                         const Rational& c) {
  MultivariatePolynomial p(m.nvars());
  p.add_term(m, c);
  return p;
}

bool MultivariatePolynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

std::optional<int> MultivariatePolynomial::degree() const {
  if (terms_.empty()) return std::nullopt;
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
  return d;
}

Rational MultivariatePolynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational MultivariatePolynomial::constant_term() const {
  return coefficient(Monomial(nvars_));
}

MultivariatePolynomial& MultivariatePolynomial::add_term(const Monomial& m,
                                                         const Rational& c) {
  if (m.nvars() != nvars_) throw DimensionMismatch("term dimension mismatch");
  if (c.is_zero()) return *this;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
  return *this;
}

MultivariatePolynomial MultivariatePolynomial::operator-() const {
  MultivariatePolynomial r(nvars_);
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
  return r;
}

MultivariatePolynomial& MultivariatePolynomial::operator+=(const MultivariatePolynomial& o) {
  if (nvars_ != o.nvars_) throw DimensionMismatch("polynomial dimension mismatch");
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

MultivariatePolynomial& MultivariatePolynomial::operator-=(const MultivariatePolynomial& o) {
  if (nvars_ != o.nvars_) throw DimensionMismatch("polynomial dimension mismatch");
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

MultivariatePolynomial operator*(const MultivariatePolynomial& a,
                                 const MultivariatePolynomial& b) {
  if (a.nvars_ != b.nvars_) throw DimensionMismatch("polynomial dimension mismatch");
  MultivariatePolynomial r(a.nvars_);
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
  return r;
}

MultivariatePolynomial operator*(const Rational& c, MultivariatePolynomial p) {
  if (c.is_zero()) return MultivariatePolynomial(p.nvars_);
  for (auto& [m, coef] : p.terms_) coef *= c;
  return p;
}

MultivariatePolynomial MultivariatePolynomial::pow(int e) const {
  if (e < 0) throw Error("negative polynomial power");
  MultivariatePolynomial r = constant(nvars_, Rational(1));
  MultivariatePolynomial base = *this;
  while (e > 0) {
    if (e & 1) r = r * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return r;
}

MultivariatePolynomial MultivariatePolynomial::differentiate(int var) const {
  if (var < 0 || var >= nvars_) throw IndexOutOfRange("variable index out of range");
  MultivariatePolynomial r(nvars_);
  for (const auto& [m, c] : terms_) {
    const int e = m.exponent(var);
    if (e == 0) continue;
    Monomial dm = m;
    dm.set(var, e - 1);
    r.add_term(dm, c * Rational(e));
  }
  return r;
}

MultivariatePolynomial MultivariatePolynomial::substitute(
    std::span<const MultivariatePolynomial> images) const {
  if (static_cast<int>(images.size()) != nvars_)
    throw DimensionMismatch("substitute requires one image per variable");
  int target = images.empty() ? 0 : images[0].nvars();
  for (const auto& im : images)
    if (im.nvars() != target)
      throw DimensionMismatch("substitution images live in different rings");

  // Cached image powers, grown on demand.
  std::vector<std::vector<MultivariatePolynomial>> pows(images.size());
  auto power = [&](int var, int e) -> const MultivariatePolynomial& {
    auto& cache = pows[static_cast<std::size_t>(var)];
    if (cache.empty()) cache.push_back(constant(target, Rational(1)));
    while (static_cast<int>(cache.size()) <= e)
      cache.push_back(cache.back() * images[static_cast<std::size_t>(var)]);
    return cache[static_cast<std::size_t>(e)];
  };

  MultivariatePolynomial r(target);
  for (const auto& [m, c] : terms_) {
    MultivariatePolynomial t = constant(target, c);
    for (int v = 0; v < nvars_; ++v) {
      const int e = m.exponent(v);
      if (e > 0) t = t * power(v, e);
    }
    r += t;
  }
  return r;
}

cplx MultivariatePolynomial::evaluate(std::span<const cplx> point) const {
  if (static_cast<int>(point.size()) != nvars_)
    throw DimensionMismatch("evaluation point has wrong length");
  std::vector<std::vector<cplx>> pows(point.size());
  auto power = [&](int var, int e) -> cplx {
    auto& cache = pows[static_cast<std::size_t>(var)];
    if (cache.empty()) cache.push_back(cplx(1.0, 0.0));
    while (static_cast<int>(cache.size()) <= e)
      cache.push_back(cache.back() * point[static_cast<std::size_t>(var)]);
    return cache[static_cast<std::size_t>(e)];
  };
  cplx acc(0.0, 0.0);
  for (const auto& [m, c] : terms_) {
    cplx t(c.to_double(), 0.0);
    for (int v = 0; v < nvars_; ++v) {
      const int e = m.exponent(v);
      if (e > 0) t *= power(v, e);
    }
    acc += t;
  }
  return acc;
}

Rational MultivariatePolynomial::evaluate_exact(std::span<const Rational> point) const {
  if (static_cast<int>(point.size()) != nvars_)
    throw DimensionMismatch("evaluation point has wrong length");
  Rational acc(0);
  for (const auto& [m, c] : terms_) {
    Rational t = c;
    for (int v = 0; v < nvars_; ++v) {
      const int e = m.exponent(v);
      if (e > 0) t *= Rational::pow(point[static_cast<std::size_t>(v)], static_cast<unsigned>(e));
    }
    acc += t;
  }
  return acc;
}

bool MultivariatePolynomial::uses_variable(int var) const {
  for (const auto& [m, c] : terms_)
    if (m.exponent(var) > 0) return true;
  return false;
}

MultivariatePolynomial MultivariatePolynomial::with_variable_inserted(int position) const {
  if (position < 0 || position > nvars_) throw IndexOutOfRange("insert position out of range");
  MultivariatePolynomial r(nvars_ + 1);
  for (const auto& [m, c] : terms_) {
    std::vector<int> e = m.exponents();
    e.insert(e.begin() + position, 0);
    r.terms_.emplace(Monomial(std::move(e)), c);
  }
  return r;
}

MultivariatePolynomial MultivariatePolynomial::with_variable_removed(int position) const {
  if (position < 0 || position >= nvars_) throw IndexOutOfRange("remove position out of range");
  if (uses_variable(position)) throw Error("cannot drop a variable that occurs in the polynomial");
  MultivariatePolynomial r(nvars_ - 1);
  for (const auto& [m, c] : terms_) {
    std::vector<int> e = m.exponents();
    e.erase(e.begin() + position);
    r.terms_.emplace(Monomial(std::move(e)), c);
  }
  return r;
}

MultivariatePolynomial MultivariatePolynomial::homogenized(int target_degree) const {
  MultivariatePolynomial r(nvars_ + 1);
  for (const auto& [m, c] : terms_) {
    const int gap = target_degree - m.degree();
    if (gap < 0) throw Error("homogenization degree below polynomial degree");
    std::vector<int> e = m.exponents();
    e.push_back(gap);
    r.terms_.emplace(Monomial(std::move(e)), c);
  }
  return r;
}

MultivariatePolynomial MultivariatePolynomial::homogeneous_part(int deg) const {
  MultivariatePolynomial r(nvars_);
  for (const auto& [m, c] : terms_)
    if (m.degree() == deg) r.terms_.emplace(m, c);
  return r;
}

std::optional<MultivariatePolynomial> MultivariatePolynomial::divided_by_variable(int var) const {
  MultivariatePolynomial r(nvars_);
  for (const auto& [m, c] : terms_) {
    const int e = m.exponent(var);
    if (e == 0) return std::nullopt;
    Monomial q = m;
    q.set(var, e - 1);
    r.terms_.emplace(q, c);
  }
  return r;
}

int MultivariatePolynomial::variable_order(int var) const {
  if (terms_.empty()) return 0;
  int e = std::numeric_limits<int>::max();
  for (const auto& [m, c] : terms_) e = std::min(e, m.exponent(var));
  return e;
}

Rational MultivariatePolynomial::content() const {
  if (terms_.empty()) return Rational(0);
  mpz_class num_gcd(0), den_lcm(1);
  for (const auto& [m, c] : terms_) {
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.numerator().get_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.denominator().get_mpz_t());
  }
  mpq_class q(num_gcd, den_lcm);
  q.canonicalize();
  return Rational(q);
}

MultivariatePolynomial univariate_gcd(const MultivariatePolynomial& a,
                                      const MultivariatePolynomial& b) {
  if (a.nvars() != 1 || b.nvars() != 1) throw DimensionMismatch("univariate gcd needs nvars == 1");
  if (a.is_zero() || b.is_zero()) throw Error("univariate gcd of zero polynomial");

  auto lead = [](const MultivariatePolynomial& p) {
    return std::prev(p.terms().end());  // map keys ascend with degree in 1 var
  };
  auto make_monic = [&](MultivariatePolynomial p) {
    const Rational lc = lead(p)->second;
    return (Rational(1) / lc) * p;
  };

  MultivariatePolynomial f = make_monic(a), g = make_monic(b);
  if (*f.degree() < *g.degree()) std::swap(f, g);
  while (true) {
    // remainder of f by monic g
    MultivariatePolynomial r = f;
    while (!r.is_zero() && *r.degree() >= *g.degree()) {
      const auto lt = lead(r);
      Monomial shift(1);
      shift.set(0, lt->first.exponent(0) - lead(g)->first.exponent(0));
      r -= lt->second * (MultivariatePolynomial::from_term(shift, Rational(1)) * g);
    }
    if (r.is_zero()) return g;
    f = g;
    g = make_monic(r);
  }
}

}  // namespace singlab
