#include "singlab/deformlab.hpp"

#include <algorithm>
#include <cmath>
#include <future>

#include "singlab/errors.hpp"

namespace singlab {

VectorField perturb(const VectorField& base, const VectorField& direction, const Rational& t) {
  if (base.nvars != direction.nvars)
    throw DimensionMismatch("perturbation direction dimension mismatch");
  std::vector<MultivariatePolynomial> comps;
  comps.reserve(base.components.size());
  for (std::size_t i = 0; i < base.components.size(); ++i)
    comps.push_back(base.components[i] - t * direction.components[i]);
  return VectorField(base.nvars, std::move(comps));
}

VectorField DeformationFamily::at(const Rational& t) const {
  return perturb(base, direction, t);
}

TSchedule TSchedule::standard() {
  TSchedule s;
  s.ts = {Rational(1, 100), Rational(1, 1000), Rational(1, 10000)};
  return s;
}

void TSchedule::validate() const {
  if (ts.size() < 3) throw Error("schedule needs at least three parameter values");
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (!(ts[i] > Rational(0))) throw Error("schedule values must be positive");
    if (i > 0 && !(ts[i] < ts[i - 1])) throw Error("schedule values must decrease");
  }
  if (r_escape <= 0 || eps_w <= 0) throw Error("schedule thresholds must be positive");
  if (region_radius && *region_radius <= 0) throw Error("region radius must be positive");
}

std::string to_string(LimitClass c) {
  switch (c) {
    case LimitClass::ToW: return "toW";
    case LimitClass::ToIsolated: return "toIsolated";
    case LimitClass::ToInfinity: return "toInfinity";
  }
  return "?";
}

namespace {

double sup_norm(const std::vector<cplx>& v) {
  double m = 0.0;
  for (const cplx& z : v) m = std::max(m, std::abs(z));
  return m;
}

double point_distance(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

// Per-coordinate Aitken extrapolation of the limit: the measured step ratio
// captures the dominant fractional power of t (points scale like t^{1/m}).
std::vector<cplx> extrapolate_limit(const std::vector<const std::vector<cplx>*>& values) {
  const std::vector<cplx>& last = *values.back();
  if (values.size() < 3) return last;
  const std::vector<cplx>& prev = *values[values.size() - 2];
  const std::vector<cplx>& prev2 = *values[values.size() - 3];
  std::vector<cplx> out(last.size());
  for (std::size_t i = 0; i < last.size(); ++i) {
    const cplx d1 = prev[i] - prev2[i];
    const cplx d2 = last[i] - prev[i];
    out[i] = last[i];
    if (std::abs(d1) < 1e-14 || std::abs(d2) < 1e-14) continue;
    const cplx q = d2 / d1;
    if (std::abs(q) >= 0.9 || std::abs(cplx(1.0, 0.0) - q) < 0.05) continue;
    out[i] = last[i] + d2 * (q / (cplx(1.0, 0.0) - q));
  }
  return out;
}

}  // namespace

BasinReport classify_limits(const DeformationFamily& family, const TSchedule& schedule,
                            const CompleteIntersection& w, const SolveOptions& opts) {
  schedule.validate();
  if (family.base.nvars != w.nvars)
    throw DimensionMismatch("family and W dimension mismatch");

  BasinReport report;
  report.family = family.description;
  report.seed = opts.seed;
  report.schedule = schedule;
  report.tolerances = opts;

  const std::size_t levels = schedule.ts.size();

  // solves at distinct t are independent
  std::vector<std::future<std::vector<SolvedPoint>>> futures;
  futures.reserve(levels);
  for (std::size_t li = 0; li < levels; ++li) {
    futures.push_back(std::async(std::launch::async, [&family, &schedule, &opts, li]() {
      const VectorField xt = family.at(schedule.ts[li]);
      return solve_points(singular_ideal(xt), opts);
    }));
  }

  std::vector<std::vector<SolvedPoint>> in_region(levels);
  report.out_of_region.assign(levels, 0);
  for (std::size_t li = 0; li < levels; ++li) {
    std::vector<SolvedPoint> pts = futures[li].get();
    if (schedule.region_radius) {
      for (auto& p : pts) {
        if (sup_norm(p.point.coords) <= *schedule.region_radius)
          in_region[li].push_back(std::move(p));
        else
          report.out_of_region[li] += p.multiplicity;
      }
    } else {
      in_region[li] = std::move(pts);
    }
    report.per_t.push_back(in_region[li]);
  }

  // match consecutive levels by globally closest pairs
  const std::size_t count = in_region[0].size();
  for (std::size_t li = 1; li < levels; ++li)
    if (in_region[li].size() != count)
      throw AmbiguousMatching("solution count changed between scheduled t values (" +
                              std::to_string(count) + " vs " +
                              std::to_string(in_region[li].size()) + "); refine the schedule");

  std::vector<std::vector<int>> successor(levels > 0 ? levels - 1 : 0,
                                          std::vector<int>(count, -1));
  for (std::size_t li = 0; li + 1 < levels; ++li) {
    struct Pair {
      double dist;
      int from, to;
    };
    std::vector<Pair> pairs;
    pairs.reserve(count * count);
    for (std::size_t i = 0; i < count; ++i)
      for (std::size_t j = 0; j < count; ++j)
        pairs.push_back({point_distance(in_region[li][i].point.coords,
                                        in_region[li + 1][j].point.coords),
                         static_cast<int>(i), static_cast<int>(j)});
    std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
      if (a.dist != b.dist) return a.dist < b.dist;
      if (a.from != b.from) return a.from < b.from;
      return a.to < b.to;
    });
    std::vector<bool> used_from(count, false), used_to(count, false);
    std::size_t made = 0;
    for (const Pair& p : pairs) {
      if (made == count) break;
      if (used_from[static_cast<std::size_t>(p.from)] || used_to[static_cast<std::size_t>(p.to)])
        continue;
      if (in_region[li][static_cast<std::size_t>(p.from)].multiplicity !=
          in_region[li + 1][static_cast<std::size_t>(p.to)].multiplicity)
        throw AmbiguousMatching("multiplicity conservation fails along the closest matching; "
                                "refine the schedule");
      successor[li][static_cast<std::size_t>(p.from)] = p.to;
      used_from[static_cast<std::size_t>(p.from)] = true;
      used_to[static_cast<std::size_t>(p.to)] = true;
      ++made;
    }
    if (made != count)
      throw AmbiguousMatching("could not match all points between levels");
  }

  // build trajectories
  long mu = 0;
  for (std::size_t start = 0; start < count; ++start) {
    Trajectory tr;
    int idx = static_cast<int>(start);
    std::vector<const std::vector<cplx>*> chain;
    for (std::size_t li = 0; li < levels; ++li) {
      const SolvedPoint& p = in_region[li][static_cast<std::size_t>(idx)];
      tr.point_index.push_back(idx);
      tr.w_proximity.push_back(w.proximity(p.point.coords));
      tr.norms.push_back(sup_norm(p.point.coords));
      chain.push_back(&p.point.coords);
      if (li + 1 < levels) idx = successor[li][static_cast<std::size_t>(idx)];
    }
    tr.multiplicity = in_region[levels - 1][static_cast<std::size_t>(idx)].multiplicity;

    auto strictly_increasing = [](const std::vector<double>& v) {
      for (std::size_t i = 1; i < v.size(); ++i)
        if (!(v[i] > v[i - 1])) return false;
      return true;
    };
    auto strictly_decreasing = [](const std::vector<double>& v) {
      for (std::size_t i = 1; i < v.size(); ++i)
        if (!(v[i] < v[i - 1])) return false;
      return true;
    };

    if (strictly_increasing(tr.norms) && tr.norms.back() > schedule.r_escape) {
      tr.classification = LimitClass::ToInfinity;
      // no finite limit recorded
    } else if (strictly_decreasing(tr.w_proximity) && tr.w_proximity.back() < schedule.eps_w) {
      tr.classification = LimitClass::ToW;
      tr.limit = extrapolate_limit(chain);
      tr.w_smooth_at_limit = w.smooth_at(tr.limit);
      mu += tr.multiplicity;
    } else {
      tr.classification = LimitClass::ToIsolated;
      tr.limit = extrapolate_limit(chain);
    }
    report.trajectories.push_back(std::move(tr));
  }
  report.mu_along_w = mu;
  return report;
}

long limiting_milnor(const BasinReport& report) { return report.mu_along_w; }

std::pair<bool, long> verify_lower_bound(const BasinReport& report, long n_embedded) {
  if (n_embedded < 0) throw Error("embedded count must be nonnegative");
  const long mu = limiting_milnor(report);
  return {mu >= n_embedded, mu - n_embedded};
}

DeformationFamily totally_simple_perturbation(const VectorField& x,
                                              const CompleteIntersection& w,
                                              std::span<const Rational> eps,
                                              std::optional<double> region_radius) {
  const int n = x.nvars;
  const int d = w.codim();
  if (static_cast<int>(eps.size()) != n - d)
    throw DimensionMismatch("need one epsilon per direction tangent to W");
  for (const Rational& e : eps)
    if (e.is_zero()) throw Error("epsilon constants must be nonzero");

  VectorField field = x;
  CompleteIntersection model = w;
  auto coords = w.coordinate_indices();
  if (!coords) {
    StraightenResult st = straighten(w, x);
    field = std::move(st.field);
    model = std::move(st.w);
    coords = model.coordinate_indices();
  }
  if (!totally_simple(field, model, region_radius))
    throw NotTotallySimple("field is not totally simple along W");

  // translation in the tangent directions; family convention base - t * dir,
  // so negate to obtain the +t translation
  std::vector<MultivariatePolynomial> dir(static_cast<std::size_t>(n),
                                          MultivariatePolynomial(n));
  std::size_t next = 0;
  for (int v = 0; v < n; ++v) {
    const bool center = std::find(coords->begin(), coords->end(), v) != coords->end();
    if (!center) dir[static_cast<std::size_t>(v)] =
        MultivariatePolynomial::constant(n, -eps[next++]);
  }
  return DeformationFamily{std::move(field), VectorField(n, std::move(dir)),
                           "totally-simple tangent translation"};
}

VectorField truncate_series_field(const std::string& generator, int kappa) {
  if (kappa < 0) throw IndexOutOfRange("truncation order must be nonnegative");
  if (generator != "trig-rotation")
    throw UnknownGenerator("unknown series generator '" + generator + "'");

  const int n = 3;
  MultivariatePolynomial f(n), g(n);
  for (int i = 0; i <= kappa; ++i) {
    Monomial even(n), odd(n);
    even.set(2, 2 * i);
    odd.set(2, 2 * i + 1);
    Rational ce = Rational(1) / Rational::factorial(static_cast<unsigned>(2 * i));
    Rational co = Rational(1) / Rational::factorial(static_cast<unsigned>(2 * i + 1));
    if (i % 2 == 1) {
      ce = -ce;
      co = -co;
    }
    f.add_term(even, ce);
    g.add_term(odd, co);
  }
  const MultivariatePolynomial z1 = MultivariatePolynomial::variable(n, 0);
  const MultivariatePolynomial z2 = MultivariatePolynomial::variable(n, 1);
  std::vector<MultivariatePolynomial> comps;
  comps.push_back(z1 * f + z2 * g);
  comps.push_back(Rational(-1) * (z1 * g) + z2 * f);
  comps.push_back(MultivariatePolynomial(n));
  return VectorField(n, std::move(comps));
}

long univariate_common_roots(const MultivariatePolynomial& a,
                             const MultivariatePolynomial& b) {
  if (a.is_zero() || b.is_zero()) throw Error("common-root count needs nonzero inputs");
  const MultivariatePolynomial g = univariate_gcd(a, b);
  return g.degree().value_or(0);
}

}  // namespace singlab
