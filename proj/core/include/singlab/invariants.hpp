#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "singlab/rational.hpp"

namespace singlab {

/// Discrete data of one positive-dimensional component inside P^n.
struct AmbientSetup {
  int n = 3;        // ambient projective dimension
  int d = 2;        // codimension of W
  int k = 0;        // foliation degree
  int deg_w = 1;    // degree of W
  std::vector<int> ks;  // degrees of the defining polynomials
  int ell = 0;      // exceptional level

  void validate() const;
};

/// The sigma/tau coefficient tables entering the nu formula. These are
/// supplied as input data (shipped presets), never derived here.
struct ChernCoefficientTable {
  std::map<int, Rational> sigma;  // index a1 in 0..d
  std::map<int, Rational> tau;    // index a2 in 0..n-d
  std::optional<long> chi;        // informational
};

/// Complete homogeneous symmetric sum of degree delta in the k_i.
long long complete_symmetric_w(int delta, std::span<const int> ks);

/// phi_a(x) = x^{n-d-a2} (1+x)^{d-a1} differentiated m times, with its
/// exact value at x = ell.
struct PhiDerivative {
  std::vector<Rational> coeffs;  // ascending powers of x
  Rational value_at_ell;
};
PhiDerivative phi_derivative(int a1, int a2, const AmbientSetup& setup, int m);

/// The nu invariant: the double sum over a = (a1, a2) with |a| <= n-d and
/// m <= n-d-|a|, scaled by -deg(W).
Rational nu_value(const AmbientSetup& setup, const ChernCoefficientTable& table);

/// Index bound at an isolated zero: 1 when k = 1, sum of (k-1)^i when the
/// top jet is radial, k^n otherwise.
long long soares_bound(int k, int n, bool radial_top);

struct BalanceInput {
  int n = 3;
  int k = 0;
  std::vector<Rational> nu;               // per component
  std::vector<std::optional<long>> n_embedded;  // known N values; at most one unknown
  long sum_isolated = 0;
};

struct BalanceReport {
  long sum_isolated_milnor = 0;
  std::vector<Rational> nu_values;
  std::vector<long> n_embedded;
  std::vector<long> mu_along_w;
};

/// Solves the global index identity
///   sum mu(p_i) = sum_{i=0}^{n} k^i + sum nu_j - sum N_j
/// for a single unknown N (or checks it when all are known), then derives
/// mu_j = N_j - nu_j. Raises InconsistentBalance on violation.
BalanceReport global_balance(const BalanceInput& input);

}  // namespace singlab
