#pragma once

#include <optional>
#include <vector>

#include "singlab/groebner.hpp"
#include "singlab/polynomial.hpp"

namespace singlab {

/// Polynomial vector field X = sum X_i d/dz_i on affine n-space.
struct VectorField {
  int nvars = 0;
  std::vector<MultivariatePolynomial> components;

  VectorField() = default;
  VectorField(int nvars, std::vector<MultivariatePolynomial> comps);
  bool is_zero() const;
  std::optional<int> degree() const;  // max over components
  std::vector<cplx> evaluate(std::span<const cplx> point) const;
};

/// W = Z(f_1,...,f_d), a complete intersection of codimension d >= 2.
/// Smoothness is checked pointwise where operations sample W, not globally.
struct CompleteIntersection {
  int nvars = 0;
  std::vector<MultivariatePolynomial> defining;

  CompleteIntersection() = default;
  CompleteIntersection(int nvars, std::vector<MultivariatePolynomial> fs);
  int codim() const { return static_cast<int>(defining.size()); }
  std::vector<int> degrees() const;
  /// max_i |f_i(p)|, the W-proximity diagnostic.
  double proximity(std::span<const cplx> point) const;
  /// Rank of the Jacobian of (f_1,...,f_d) at the point is full (= d).
  bool smooth_at(std::span<const cplx> point, double tol = 1e-8) const;
  /// Indices of coordinate hyperplanes if every f_i is a scalar multiple of
  /// a single variable; nullopt otherwise.
  std::optional<std::vector<int>> coordinate_indices() const;
};

struct FoliationDegree {
  int k = 0;
  bool radial_top = false;
};

/// Blow-up data along W: vanishing order along the exceptional divisor,
/// dicriticality, and the resulting exceptional level.
struct ExceptionalData {
  int m_e = 0;
  bool dicritical = false;
  int ell = 0;  // m_e, or m_e - 1 in the dicritical case

  ExceptionalData() = default;
  ExceptionalData(int m_e, bool dicritical);
};

/// Vanishing orders of the components in powers of the ideal of W.
struct MultiplicityProfile {
  std::vector<std::optional<int>> orders;  // nullopt for identically-zero components
  int m_w = 0;                             // min over the defined orders
};

Ideal singular_ideal(const VectorField& x);

MultiplicityProfile mult_along_w(const VectorField& x, const CompleteIntersection& w,
                                 const GroebnerOptions& opts = {});

/// Requires W in coordinate form (use straighten first otherwise). The order
/// m_E is the minimal s-adic order over all standard blow-up charts.
ExceptionalData exceptional_order(const VectorField& x, const CompleteIntersection& w,
                                  const GroebnerOptions& opts = {});

/// True iff some d x d minor of the Jacobian of X has nonvanishing
/// determinant at every point of W (1 lies in the ideal (f_1,...,f_d, det M)).
/// With a finite region radius, nonvanishing is required only on
/// W ∩ {|z|∞ <= R}; this needs W coordinate or graph-form with a single
/// transverse variable unless the restricted minor is constant.
bool totally_simple(const VectorField& x, const CompleteIntersection& w,
                    const GroebnerOptions& opts = {});
bool totally_simple(const VectorField& x, const CompleteIntersection& w,
                    std::optional<double> region_radius, const GroebnerOptions& opts = {});

struct StraightenResult {
  VectorField field;             // pushforward of X
  CompleteIntersection w;        // coordinate model u_1 = ... = u_d = 0
  std::vector<MultivariatePolynomial> forward;  // u = psi(z)
  std::vector<MultivariatePolynomial> inverse;  // z = psi^{-1}(u)
};

/// Straightening map psi(z) = (f_1(z),...,f_d(z), remaining variables) for
/// graph-form or affine-linear defining polynomials.
StraightenResult straighten(const CompleteIntersection& w, const VectorField& x);

/// Degree of the projective foliation induced by X, with the radial-top
/// division test deciding between D-1 and D.
FoliationDegree foliation_degree(const VectorField& x);

/// chart == n returns X itself. For chart j < n: pass to the projective
/// chart xi_j = 1 and restrict to the hyperplane at infinity of the original
/// affine chart, yielding an (n-1)-variable field in u_c = xi_c / xi_j.
VectorField chart_restrict(const VectorField& x, int chart);

}  // namespace singlab
