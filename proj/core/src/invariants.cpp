#include "singlab/invariants.hpp"

#include <algorithm>

#include "singlab/errors.hpp"

namespace singlab {

void AmbientSetup::validate() const {
  if (n < 3) throw Error("ambient dimension must be at least 3");
  if (d < 2 || d > n) throw Error("codimension must satisfy 2 <= d <= n");
  if (k < 0) throw Error("foliation degree must be nonnegative");
  if (deg_w < 1) throw Error("deg(W) must be positive");
  if (ell < 0) throw Error("exceptional level must be nonnegative");
  if (static_cast<int>(ks.size()) != d) throw Error("need one degree per defining polynomial");
  for (int ki : ks)
    if (ki < 1) throw Error("defining degrees must be positive");
}

long long complete_symmetric_w(int delta, std::span<const int> ks) {
  if (delta < 0) throw IndexOutOfRange("negative symmetric degree");
  if (ks.empty()) throw Error("empty degree tuple");
  // h_delta via the stable recurrence on prefixes
  std::vector<long long> h(static_cast<std::size_t>(delta) + 1, 0);
  h[0] = 1;
  for (const int k : ks)
    for (int j = 1; j <= delta; ++j)
      h[static_cast<std::size_t>(j)] += static_cast<long long>(k) * h[static_cast<std::size_t>(j - 1)];
  return h[static_cast<std::size_t>(delta)];
}

PhiDerivative phi_derivative(int a1, int a2, const AmbientSetup& setup, int m) {
  setup.validate();
  if (a1 < 0 || a1 > setup.d) throw IndexOutOfRange("a1 out of range");
  if (a2 < 0 || a2 > setup.n - setup.d) throw IndexOutOfRange("a2 out of range");
  if (m < 0) throw IndexOutOfRange("negative derivative order");

  // phi = x^p (1+x)^q expanded into coefficients
  const int p = setup.n - setup.d - a2;
  const int q = setup.d - a1;
  std::vector<Rational> coeffs(static_cast<std::size_t>(p + q) + 1, Rational(0));
  // binomial expansion of (1+x)^q shifted by p
  Rational binom(1);
  for (int i = 0; i <= q; ++i) {
    coeffs[static_cast<std::size_t>(p + i)] = binom;
    binom *= Rational(q - i);
    binom /= Rational(i + 1);
  }
  for (int step = 0; step < m; ++step) {
    std::vector<Rational> next(coeffs.size() > 1 ? coeffs.size() - 1 : 1, Rational(0));
    for (std::size_t i = 1; i < coeffs.size(); ++i)
      next[i - 1] = Rational(static_cast<long>(i)) * coeffs[i];
    coeffs = std::move(next);
    if (coeffs.empty()) coeffs.push_back(Rational(0));
  }
  while (coeffs.size() > 1 && coeffs.back().is_zero()) coeffs.pop_back();

  Rational value(0);
  Rational xpow(1);
  const Rational ell(static_cast<long>(setup.ell));
  for (const Rational& c : coeffs) {
    value += c * xpow;
    xpow *= ell;
  }
  return {std::move(coeffs), value};
}

Rational nu_value(const AmbientSetup& setup, const ChernCoefficientTable& table) {
  setup.validate();
  auto lookup = [](const std::map<int, Rational>& t, int i, const char* name) -> const Rational& {
    auto it = t.find(i);
    if (it == t.end())
      throw MissingTableEntry(std::string(name) + "." + std::to_string(i) + " missing from table");
    return it->second;
  };

  const int nd = setup.n - setup.d;
  Rational sum(0);
  for (int a1 = 0; a1 <= setup.d; ++a1) {
    for (int a2 = 0; a2 <= nd; ++a2) {
      const int abs_a = a1 + a2;
      if (abs_a > nd) continue;
      for (int m = 0; m <= nd - abs_a; ++m) {
        const int delta = nd - abs_a - m;
        if (delta < 0) throw Error("negative delta index in nu sum");
        const PhiDerivative phi = phi_derivative(a1, a2, setup, m);
        Rational term = phi.value_at_ell / Rational::factorial(static_cast<unsigned>(m));
        term *= Rational::pow(Rational(static_cast<long>(setup.k - 1)), static_cast<unsigned>(m));
        term *= lookup(table.sigma, a1, "sigma");
        term *= lookup(table.tau, a2, "tau");
        term *= Rational(complete_symmetric_w(delta, setup.ks));
        if (delta % 2 == 1) term = -term;
        sum += term;
      }
    }
  }
  return Rational(static_cast<long>(-setup.deg_w)) * sum;
}

long long soares_bound(int k, int n, bool radial_top) {
  if (k < 1 || n < 1) throw IndexOutOfRange("soares bound needs k >= 1, n >= 1");
  if (k == 1) return 1;
  auto ipow = [](long long b, int e) {
    long long r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
  };
  if (radial_top) {
    long long s = 0;
    for (int i = 1; i <= n; ++i) s += ipow(k - 1, i);
    return s;
  }
  return ipow(k, n);
}

BalanceReport global_balance(const BalanceInput& input) {
  if (input.k < 0) throw Error("negative foliation degree");
  if (input.n < 1) throw Error("ambient dimension must be positive");
  if (input.n_embedded.size() != input.nu.size() && !input.n_embedded.empty())
    throw Error("balance needs one N slot per component");

  std::vector<std::optional<long>> known = input.n_embedded;
  if (known.empty()) known.assign(input.nu.size(), std::nullopt);
  int unknowns = 0;
  for (const auto& v : known)
    if (!v) ++unknowns;
  if (unknowns > 1) throw Error("balance identity can solve for at most one unknown N");

  Rational degree_sum(0);
  for (int i = 0; i <= input.n; ++i)
    degree_sum += Rational::pow(Rational(static_cast<long>(input.k)), static_cast<unsigned>(i));

  Rational nu_sum(0);
  for (const Rational& v : input.nu) nu_sum += v;
  Rational known_n_sum(0);
  for (const auto& v : known)
    if (v) known_n_sum += Rational(*v);

  BalanceReport report;
  report.sum_isolated_milnor = input.sum_isolated;
  report.nu_values = input.nu;

  if (unknowns == 1) {
    // sum mu(p_i) = sum k^i + sum nu_j - sum N_j  solved for the open slot
    const Rational unknown =
        degree_sum + nu_sum - known_n_sum - Rational(input.sum_isolated);
    if (!unknown.is_integer())
      throw InconsistentBalance("balance identity gives a non-integer N = " + unknown.str());
    for (auto& v : known)
      if (!v) v = unknown.to_integer();
  } else {
    const Rational lhs = Rational(input.sum_isolated);
    const Rational rhs = degree_sum + nu_sum - known_n_sum;
    if (!(lhs == rhs))
      throw InconsistentBalance("balance identity fails: " + lhs.str() + " != " + rhs.str());
  }

  for (std::size_t j = 0; j < input.nu.size(); ++j) {
    const long nj = *known[j];
    if (nj < 0)
      throw InconsistentBalance("negative embedded count N = " + std::to_string(nj));
    const Rational mu = Rational(nj) - input.nu[j];
    if (!mu.is_integer())
      throw InconsistentBalance("mu along W is not an integer: " + mu.str());
    // mu_j = N_j - nu_j >= -nu_j holds exactly when N_j >= 0, checked above
    report.n_embedded.push_back(nj);
    report.mu_along_w.push_back(mu.to_integer());
  }
  return report;
}

}  // namespace singlab
