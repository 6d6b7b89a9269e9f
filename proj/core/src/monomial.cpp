#include "singlab/monomial.hpp"

#include <algorithm>
#include <numeric>

#include "singlab/errors.hpp"

namespace singlab {

Monomial::Monomial(std::vector<int> exps) : e_(std::move(exps)) {
  for (int e : e_)
    if (e < 0) throw Error("negative exponent in monomial");
}

int Monomial::degree() const { return std::accumulate(e_.begin(), e_.end(), 0); }

Monomial& Monomial::set(int var, int exp) {
  if (var < 0 || var >= nvars()) throw IndexOutOfRange("variable index out of range");
  if (exp < 0) throw Error("negative exponent in monomial");
  e_[static_cast<std::size_t>(var)] = exp;
  return *this;
}

bool Monomial::is_one() const {
  return std::all_of(e_.begin(), e_.end(), [](int e) { return e == 0; });
}

bool Monomial::divides(const Monomial& m) const {
  if (nvars() != m.nvars()) throw DimensionMismatch("monomial dimension mismatch");
  for (std::size_t i = 0; i < e_.size(); ++i)
    if (e_[i] > m.e_[i]) return false;
  return true;
}

bool Monomial::coprime_with(const Monomial& m) const {
  if (nvars() != m.nvars()) throw DimensionMismatch("monomial dimension mismatch");
  for (std::size_t i = 0; i < e_.size(); ++i)
    if (e_[i] > 0 && m.e_[i] > 0) return false;
  return true;
}

Monomial Monomial::operator*(const Monomial& m) const {
  if (nvars() != m.nvars()) throw DimensionMismatch("monomial dimension mismatch");
  Monomial r(*this);
  for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] += m.e_[i];
  return r;
}

Monomial Monomial::quotient(const Monomial& m) const {
  if (!m.divides(*this)) throw Error("monomial quotient is not exact");
  Monomial r(*this);
  for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] -= m.e_[i];
  return r;
}

Monomial Monomial::lcm(const Monomial& a, const Monomial& b) {
  if (a.nvars() != b.nvars()) throw DimensionMismatch("monomial dimension mismatch");
  Monomial r(a);
  for (std::size_t i = 0; i < r.e_.size(); ++i) r.e_[i] = std::max(r.e_[i], b.e_[i]);
  return r;
}

bool grevlex_less(const Monomial& a, const Monomial& b) {
  const int da = a.degree(), db = b.degree();
  if (da != db) return da < db;
  const auto& ea = a.exponents();
  const auto& eb = b.exponents();
  for (std::size_t i = ea.size(); i-- > 0;) {
    if (ea[i] != eb[i]) return ea[i] > eb[i];  // larger last entry is smaller
  }
  return false;
}

bool lex_less(const Monomial& a, const Monomial& b) {
  const auto& ea = a.exponents();
  const auto& eb = b.exponents();
  for (std::size_t i = 0; i < ea.size(); ++i)
    if (ea[i] != eb[i]) return ea[i] < eb[i];
  return false;
}

bool block_less(const Monomial& a, const Monomial& b, int block) {
  const auto& ea = a.exponents();
  const auto& eb = b.exponents();
  auto cmp_range = [&](std::size_t lo, std::size_t hi) -> int {
    int da = 0, db = 0;
    for (std::size_t i = lo; i < hi; ++i) {
      da += ea[i];
      db += eb[i];
    }
    if (da != db) return da < db ? -1 : 1;
    for (std::size_t i = hi; i-- > lo;)
      if (ea[i] != eb[i]) return ea[i] > eb[i] ? -1 : 1;
    return 0;
  };
  const std::size_t k = static_cast<std::size_t>(block);
  int c = cmp_range(0, k);
  if (c != 0) return c < 0;
  return cmp_range(k, ea.size()) < 0;
}

}  // namespace singlab
