#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "singlab/foliation.hpp"
#include "singlab/solver.hpp"

namespace singlab {

/// One-parameter family X_t = base - t * direction; the family at t = 0 is
/// the base field.
struct DeformationFamily {
  VectorField base;
  VectorField direction;
  std::string description;

  VectorField at(const Rational& t) const;
};

VectorField perturb(const VectorField& base, const VectorField& direction, const Rational& t);

/// Decreasing positive parameter values plus the classification thresholds.
/// `region_radius`, when set, restricts the analysis to the precompact
/// neighborhood |z|_inf <= R; points solved outside it are excluded from the
/// trajectory set and accounted separately.
struct TSchedule {
  std::vector<Rational> ts;
  double r_escape = 1e6;
  double eps_w = 1e-3;
  std::optional<double> region_radius;

  static TSchedule standard();
  void validate() const;
};

enum class LimitClass { ToW, ToIsolated, ToInfinity };
std::string to_string(LimitClass c);

struct Trajectory {
  LimitClass classification = LimitClass::ToIsolated;
  std::vector<cplx> limit;
  int multiplicity = 1;
  std::vector<int> point_index;     // position in per_t at each level
  std::vector<double> w_proximity;  // max |f_i| along the schedule
  std::vector<double> norms;        // sup-norm of the point along the schedule
  bool w_smooth_at_limit = true;
};

struct BasinReport {
  std::string family;
  unsigned long seed = 0;
  TSchedule schedule;
  SolveOptions tolerances;
  std::vector<std::vector<SolvedPoint>> per_t;
  std::vector<long> out_of_region;
  std::vector<Trajectory> trajectories;
  long mu_along_w = 0;
};

/// Solve the singular scheme at every scheduled t, match points across
/// levels, and classify each trajectory as converging to W, to an isolated
/// point, or escaping. mu_along_w is the toW multiplicity at the smallest t.
BasinReport classify_limits(const DeformationFamily& family, const TSchedule& schedule,
                            const CompleteIntersection& w, const SolveOptions& opts = {});

long limiting_milnor(const BasinReport& report);

/// (holds, margin): whether the observed mu is at least the embedded count.
std::pair<bool, long> verify_lower_bound(const BasinReport& report, long n_embedded);

/// Translation family in the directions tangent to W (straightening first if
/// W is not already coordinate); requires the field totally simple along W.
DeformationFamily totally_simple_perturbation(const VectorField& x,
                                              const CompleteIntersection& w,
                                              std::span<const Rational> eps,
                                              std::optional<double> region_radius = std::nullopt);

/// Shipped series generators truncated to order kappa. Generator
/// "trig-rotation" is the rotation-like field on C^3 whose coefficients are
/// the alternating even/odd factorial series in z3 (third component zero).
VectorField truncate_series_field(const std::string& generator, int kappa);

/// Number of common roots counted with multiplicity: deg gcd(a, b).
long univariate_common_roots(const MultivariatePolynomial& a,
                             const MultivariatePolynomial& b);

}  // namespace singlab
