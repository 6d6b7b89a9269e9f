#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>

#include <json.hpp>

#include "singlab/catalog.hpp"
#include "singlab/errors.hpp"
#include "singlab/report_json.hpp"
#include "test_util.hpp"

using namespace singlab;

namespace {

MultivariatePolynomial P(const char* text, int n) {
  return MultivariatePolynomial::parse(text, n);
}

double dist(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("perturb: anchor at t = 0 and additivity in t") {
  std::mt19937_64 rng(3);
  const VectorField base(3, {testutil::random_poly(rng, 3, 3), testutil::random_poly(rng, 3, 3),
                             testutil::random_poly(rng, 3, 3)});
  const VectorField dir(3, {P("1", 3), P("z2", 3), P("z3^2", 3)});
  const VectorField same = perturb(base, dir, Rational(0));
  for (int i = 0; i < 3; ++i)
    CHECK(same.components[static_cast<std::size_t>(i)] == base.components[static_cast<std::size_t>(i)]);

  const VectorField two_step = perturb(perturb(base, dir, Rational(1, 3)), dir, Rational(1, 6));
  const VectorField one_step = perturb(base, dir, Rational(1, 2));
  for (int i = 0; i < 3; ++i)
    CHECK(two_step.components[static_cast<std::size_t>(i)] ==
          one_step.components[static_cast<std::size_t>(i)]);

  CHECK_THROWS_AS(perturb(base, VectorField(2, {P("1", 2), P("1", 2)}), Rational(1)),
                  DimensionMismatch);
}

TEST_CASE("schedule validation") {
  TSchedule s = TSchedule::standard();
  CHECK_NOTHROW(s.validate());
  s.ts = {Rational(1, 10), Rational(1, 100)};
  CHECK_THROWS_AS(s.validate(), Error);
  s = TSchedule::standard();
  s.ts[2] = Rational(1, 100);  // not decreasing
  CHECK_THROWS_AS(s.validate(), Error);
}

TEST_CASE("classify: cubic translation family splits two to W, one to A") {
  const auto inst = cubic_curve_family(7);
  const BasinReport rep = classify_limits(inst.translation, TSchedule::standard(), inst.w);
  REQUIRE(rep.trajectories.size() == 3);
  long to_w = 0, to_iso = 0;
  for (const auto& tr : rep.trajectories) {
    if (tr.classification == LimitClass::ToW) to_w += tr.multiplicity;
    if (tr.classification == LimitClass::ToIsolated) {
      to_iso += tr.multiplicity;
      CHECK(dist(tr.limit, inst.point_a) < 1e-5);
    }
  }
  CHECK(to_w == 2);
  CHECK(to_iso == 1);
  CHECK(limiting_milnor(rep) == 2);
  for (const auto& tr : rep.trajectories)
    if (tr.classification == LimitClass::ToW) CHECK(tr.w_smooth_at_limit);
}

TEST_CASE("classify: positive-dimensional scheme is rejected") {
  const VectorField base(3, {P("z1^2", 3), P("z1*z2", 3), P("0", 3)});
  const VectorField dir(3, {P("0", 3), P("0", 3), P("0", 3)});
  const DeformationFamily fam{base, dir, "degenerate"};
  const CompleteIntersection w(3, {P("z1", 3), P("z2", 3)});
  CHECK_THROWS_AS(classify_limits(fam, TSchedule::standard(), w), NotZeroDimensional);
}

TEST_CASE("classify: multiplicity conservation at every level") {
  const auto [fam, pred] = line_family(line_family_generic(2, 3));
  const TSchedule sched = line_family_schedule(2);
  const BasinReport rep = classify_limits(fam, sched, line_family_w());
  for (std::size_t li = 0; li < sched.ts.size(); ++li) {
    long solved = 0;
    for (const auto& p : rep.per_t[li]) solved += p.multiplicity;
    const long dim = multiplicity_dim(singular_ideal(fam.at(sched.ts[li])));
    CHECK(solved + rep.out_of_region[li] == dim);
  }
}

TEST_CASE("classify: schedule refinement keeps classifications") {
  const auto [fam, pred] = line_family(line_family_generic(2, 9));
  TSchedule sched = line_family_schedule(2);
  const BasinReport base_rep = classify_limits(fam, sched, line_family_w());
  TSchedule finer = sched;
  finer.ts.push_back(sched.ts.back() * Rational(1, 100));
  const BasinReport fine_rep = classify_limits(fam, finer, line_family_w());
  CHECK(limiting_milnor(base_rep) == limiting_milnor(fine_rep));
  auto census = [](const BasinReport& r) {
    std::map<std::string, long> c;
    for (const auto& tr : r.trajectories) c[to_string(tr.classification)] += tr.multiplicity;
    return c;
  };
  CHECK(census(base_rep) == census(fine_rep));
}

TEST_CASE("line family: exactness mu = m^2 - beta m at m = 2") {
  {
    const auto [fam, pred] = line_family(line_family_generic(2, 7));
    CHECK(pred.beta == 0);
    CHECK(pred.generic_mu == 4);
    CHECK(pred.predicted_mu == 4);
    CHECK(pred.isolated_count == 3);
    const BasinReport rep = classify_limits(fam, line_family_schedule(2), line_family_w());
    CHECK(limiting_milnor(rep) == 4);
    CHECK(verify_lower_bound(rep, 0) == std::pair<bool, long>{true, 4});
  }
  {
    const auto [fam, pred] = line_family(line_family_planted_root(2));
    CHECK(pred.beta == 1);
    CHECK(pred.predicted_mu == 2);
    const BasinReport rep = classify_limits(fam, line_family_schedule(2), line_family_w());
    CHECK(limiting_milnor(rep) == 2);
    CHECK(verify_lower_bound(rep, 1) == std::pair<bool, long>{true, 1});
  }
}

TEST_CASE("line family: exactness mu = m^2 - beta m at m = 3") {
  {
    const auto [fam, pred] = line_family(line_family_generic(3, 11));
    CHECK(pred.beta == 0);
    const BasinReport rep = classify_limits(fam, line_family_schedule(3), line_family_w());
    CHECK(limiting_milnor(rep) == 9);
  }
  {
    const auto [fam, pred] = line_family(line_family_planted_root(3));
    CHECK(pred.beta == 1);
    const BasinReport rep = classify_limits(fam, line_family_schedule(3), line_family_w());
    CHECK(limiting_milnor(rep) == 6);
    // the three double points keep their multiplicities through the schedule
    long doubles = 0;
    for (const auto& tr : rep.trajectories)
      if (tr.classification == LimitClass::ToW && tr.multiplicity == 2) ++doubles;
    CHECK(doubles == 3);
  }
}

TEST_CASE("line family: data validation and the alpha_3 = 0 flag") {
  LineFamilyData bad = line_family_planted_root(2);
  bad.b = bad.a;  // shared roots
  CHECK_THROWS_AS(line_family(bad), NonCoprimeAB);

  LineFamilyData no3 = line_family_planted_root(2);
  no3.alpha[0][3] = Rational(0);
  no3.alpha[1][3] = Rational(0);
  const auto [fam, pred] = line_family(no3);
  CHECK(pred.alpha3_zero);
  CHECK(pred.minimum_mu == 0);
}

TEST_CASE("rotation family: totally simple perturbation empties the basin") {
  const auto [fam, pred] = rotation_family(rotation_family_special(2));
  CHECK(pred.empty_basin);
  CHECK(pred.min_total_multiplicity == 10);

  const std::vector<Rational> eps = {Rational(1)};
  const DeformationFamily ts_fam =
      totally_simple_perturbation(fam.base, rotation_family_w(), eps, pred.region_radius);
  const BasinReport rep =
      classify_limits(ts_fam, rotation_family_schedule(pred), rotation_family_w());
  for (const auto& tr : rep.trajectories) CHECK(tr.classification != LimitClass::ToW);
  CHECK(limiting_milnor(rep) == 0);
  CHECK(verify_lower_bound(rep, 0) == std::pair<bool, long>{true, 0});
}

TEST_CASE("rotation family: the shipped special direction empties the basin too") {
  const auto [fam, pred] = rotation_family(rotation_family_special(2));
  const BasinReport rep =
      classify_limits(fam, rotation_family_schedule(pred), rotation_family_w());
  CHECK(rep.trajectories.empty());
  CHECK(limiting_milnor(rep) == 0);
  for (const long out : rep.out_of_region) CHECK(out == 10);
}

TEST_CASE("totally simple perturbation refuses the line family") {
  const auto [fam, pred] = line_family(line_family_planted_root(2));
  const std::vector<Rational> eps = {Rational(1)};
  CHECK_THROWS_AS(totally_simple_perturbation(fam.base, line_family_w(), eps),
                  NotTotallySimple);
}

TEST_CASE("truncated series: orders zero and one") {
  const VectorField x0 = truncate_series_field("trig-rotation", 0);
  // f_0 = 1, g_0 = z3
  CHECK(x0.components[0] == P("z1 + z2*z3", 3));
  CHECK(x0.components[1] == P("z2 - z1*z3", 3));
  CHECK(x0.components[2].is_zero());

  const VectorField x1 = truncate_series_field("trig-rotation", 1);
  CHECK(x1.components[0] == P("z1 - 1/2*z1*z3^2 + z2*z3 - 1/6*z2*z3^3", 3));
  CHECK(x1.components[1] == P("z2 - 1/2*z2*z3^2 - z1*z3 + 1/6*z1*z3^3", 3));

  CHECK_THROWS_AS(truncate_series_field("no-such-series", 1), UnknownGenerator);
}

TEST_CASE("truncated series: successive orders differ only above degree 2k") {
  for (int kappa : {0, 1, 2, 3}) {
    const VectorField a = truncate_series_field("trig-rotation", kappa);
    const VectorField b = truncate_series_field("trig-rotation", kappa + 1);
    for (int i = 0; i < 3; ++i) {
      const MultivariatePolynomial diff =
          b.components[static_cast<std::size_t>(i)] - a.components[static_cast<std::size_t>(i)];
      for (const auto& [m, c] : diff.terms()) CHECK(m.degree() > 2 * kappa);
    }
  }
}

TEST_CASE("rotation family: repeated roots in P_m are rejected") {
  RotationFamilyData data = rotation_family_special(2);
  data.pm = {Rational(0), Rational(0), Rational(1)};  // z3^2
  CHECK_THROWS_AS(rotation_family(data), RepeatedRootsInPm);
}

TEST_CASE("univariate common roots") {
  CHECK(univariate_common_roots(P("z1^2 - 1", 1), P("z1 - 1", 1)) == 1);
  CHECK(univariate_common_roots(P("z1^2 + 1", 1), P("z1 + 3", 1)) == 0);

  // construction oracle: plant a shared factor of degree 3
  const MultivariatePolynomial shared = P("(z1 - 1)*(z1 - 2)*(z1 + 3)", 1);
  const MultivariatePolynomial a = shared * P("z1^2 + 7", 1);
  const MultivariatePolynomial b = shared * P("z1 + 9", 1);
  CHECK(univariate_common_roots(a, b) == 3);

  CHECK_THROWS_AS(univariate_common_roots(P("0", 1), P("z1", 1)), Error);
}

TEST_CASE("report json: stable keys and deterministic bytes") {
  const auto inst = cubic_curve_family(7);
  const BasinReport rep1 = classify_limits(inst.translation, TSchedule::standard(), inst.w);
  const BasinReport rep2 = classify_limits(inst.translation, TSchedule::standard(), inst.w);
  const std::string j1 = basin_report_json(rep1);
  const std::string j2 = basin_report_json(rep2);
  CHECK(j1 == j2);

  const auto parsed = nlohmann::json::parse(j1);
  CHECK(parsed.contains("family"));
  CHECK(parsed.contains("seed"));
  CHECK(parsed.contains("schedule"));
  CHECK(parsed.contains("tolerances"));
  CHECK(parsed.contains("per_t"));
  CHECK(parsed.contains("trajectories"));
  CHECK(parsed.contains("mu_along_W"));
  REQUIRE(parsed["per_t"].is_array());
  CHECK(parsed["per_t"][0].contains("t"));
  CHECK(parsed["per_t"][0].contains("points"));
  CHECK(parsed["per_t"][0]["points"][0].contains("coords"));
  CHECK(parsed["per_t"][0]["points"][0].contains("multiplicity"));
  CHECK(parsed["per_t"][0]["points"][0].contains("residual"));
  CHECK(parsed["trajectories"][0].contains("classification"));
  CHECK(parsed["trajectories"][0].contains("limit"));
  CHECK(parsed["trajectories"][0].contains("multiplicity"));
  CHECK(parsed["mu_along_W"] == 2);
}

TEST_CASE("cubic curve family: deformation anchors at the base") {
  const auto inst = cubic_curve_family(7);
  const VectorField y0 = inst.refined.at(Rational(0));
  for (int i = 0; i < 3; ++i)
    CHECK(y0.components[static_cast<std::size_t>(i)] ==
          inst.base.components[static_cast<std::size_t>(i)]);
}

TEST_CASE("cubic curve family: points stay close to the deformed curve") {
  const auto inst = cubic_curve_family(7);
  const Rational t(1, 1000);
  const CompleteIntersection wt = inst.w_at(t);
  const auto pts = solve_points(singular_ideal(inst.refined.at(t)));
  // the points heading to affine W sit much closer to W_t than to W itself
  int closer = 0;
  for (const auto& p : pts) {
    const double to_wt = wt.proximity(p.point.coords);
    const double to_w = inst.w.proximity(p.point.coords);
    if (to_wt < 1e-2 && to_wt < to_w) ++closer;
  }
  CHECK(closer >= 8);
}

TEST_CASE("line family: the worst case beta = m - 1 attains mu = m") {
  // q = b - a = s(s-1)(s+2) has three simple roots; alpha_3 = s(s-1) shares
  // exactly two of them, so only the branch over s = -2 survives
  LineFamilyData data;
  data.m = 3;
  data.a = {Rational(1), Rational(0), Rational(0), Rational(1)};
  data.b = {Rational(1), Rational(-2), Rational(1), Rational(2)};
  data.eps = {Rational(1), Rational(1), Rational(1)};
  data.alpha.assign(3, {});
  for (int i = 0; i < 3; ++i) data.alpha[static_cast<std::size_t>(i)][0] = Rational(1);
  data.alpha[1][3] = Rational(-1);
  data.alpha[2][3] = Rational(1);
  const auto [fam, pred] = line_family(data);
  CHECK(pred.beta == 2);
  CHECK(pred.predicted_mu == 3);
  const BasinReport rep = classify_limits(fam, line_family_schedule(3), line_family_w());
  CHECK(limiting_milnor(rep) == 3);
}

TEST_CASE("line family: alpha_3 = 0 makes the observed minimum zero") {
  LineFamilyData data = line_family_planted_root(2);
  data.alpha[0][3] = Rational(0);
  data.alpha[1][3] = Rational(0);
  const auto [fam, pred] = line_family(data);
  CHECK(pred.alpha3_zero);
  const BasinReport rep = classify_limits(fam, line_family_schedule(2), line_family_w());
  CHECK(limiting_milnor(rep) == 0);
  CHECK(rep.trajectories.empty());
}

TEST_CASE("generalized four-dimensional family: tangent translation empties the basin") {
  const int n = 4;
  auto z = [&](int i) { return MultivariatePolynomial::variable(n, i); };
  // rows (z1 + z3 z2, z2) have the unimodular coefficient matrix [[1, z3], [0, 1]]
  const VectorField x(n, {z(0) + z(2) * z(1), z(1), z(0) * z(3), z(1) * z(2)});
  const CompleteIntersection w(n, {z(0), z(1)});
  CHECK(totally_simple(x, w));
  const std::vector<Rational> eps = {Rational(1), Rational(2)};
  const DeformationFamily fam = totally_simple_perturbation(x, w, eps);
  const BasinReport rep = classify_limits(fam, TSchedule::standard(), w);
  for (const auto& tr : rep.trajectories) CHECK(tr.classification != LimitClass::ToW);
  CHECK(limiting_milnor(rep) == 0);
}

TEST_CASE("line family: m+1 isolated closed points on the plane at infinity") {
  // restrict the unperturbed field to the plane at infinity and remove the
  // component supported at the origin of the chart: m+1 points remain
  for (int m : {2, 3}) {
    const auto [fam, pred] = line_family(line_family_generic(m, 7));
    const VectorField rest = chart_restrict(fam.base, 2);
    const Ideal away = saturate(singular_ideal(rest), MultivariatePolynomial::variable(2, 0));
    CHECK(multiplicity_dim(away) == pred.isolated_count);
  }
}
