#include "singlab/catalog.hpp"
#include <cmath>

#include <random>

#include "singlab/errors.hpp"

namespace singlab {

namespace {

MultivariatePolynomial univariate_from(const std::vector<Rational>& coeffs) {
  MultivariatePolynomial p(1);
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    Monomial m(1);
    m.set(0, static_cast<int>(i));
    p.add_term(m, coeffs[i]);
  }
  return p;
}

// sum_i c_i z1^{deg-i} z2^i on C^3 for scalar coefficients c_i
MultivariatePolynomial binary_form(const std::vector<Rational>& coeffs, int deg) {
  MultivariatePolynomial p(3);
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    Monomial m(3);
    m.set(0, deg - static_cast<int>(i));
    m.set(1, static_cast<int>(i));
    p.add_term(m, coeffs[i]);
  }
  return p;
}

MultivariatePolynomial constant3(const Rational& c) {
  return MultivariatePolynomial::constant(3, c);
}

}  // namespace

CompleteIntersection line_family_w() {
  return CompleteIntersection(3, {MultivariatePolynomial::variable(3, 0),
                                  MultivariatePolynomial::variable(3, 1)});
}

TSchedule line_family_schedule(int m) {
  // the singular points scale like t^{1/m}, so the W-proximity threshold has
  // to sit one order above the final 10^{-8/m} rather than at the default
  TSchedule s;
  auto p10 = [](int e) {
    Rational r(1);
    for (int i = 0; i < e; ++i) r *= Rational(1, 10);
    return r;
  };
  s.ts = {p10(4), p10(6), p10(8)};
  s.eps_w = std::max(1e-3, 10.0 * std::pow(1e-8, 1.0 / m));
  return s;
}

std::pair<DeformationFamily, LineFamilyPredictions> line_family(const LineFamilyData& data) {
  const int m = data.m;
  if (m < 2) throw Error("line family needs m >= 2");
  if (static_cast<int>(data.a.size()) != m + 1 || static_cast<int>(data.b.size()) != m + 1)
    throw Error("a and b need m+1 coefficients");
  if (static_cast<int>(data.alpha.size()) != m)
    throw Error("alpha needs one affine row per index 0..m-1");
  if (data.a.back().is_zero() && data.b.back().is_zero())
    throw Error("a and b may not both drop degree");

  const MultivariatePolynomial a1 = univariate_from(data.a);
  const MultivariatePolynomial b1 = univariate_from(data.b);
  if (univariate_common_roots(a1, b1) != 0)
    throw NonCoprimeAB("a and b share a root");

  // X1 = sum a_i z1^{m-i} z2^i,  X2 likewise,  X3 = sum c_i(z) z1^{m-1-i} z2^i
  MultivariatePolynomial x3(3);
  for (int i = 0; i < m; ++i) {
    MultivariatePolynomial ci = constant3(data.alpha[static_cast<std::size_t>(i)][0]);
    for (int j = 1; j <= 3; ++j)
      ci += data.alpha[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] *
            MultivariatePolynomial::variable(3, j - 1);
    Monomial mono(3);
    mono.set(0, m - 1 - i);
    mono.set(1, i);
    x3 += ci * MultivariatePolynomial::from_term(mono, Rational(1));
  }
  VectorField base(3, {binary_form(data.a, m), binary_form(data.b, m), std::move(x3)});
  VectorField direction(3, {constant3(data.eps[0]), constant3(data.eps[1]),
                            constant3(data.eps[2])});

  LineFamilyPredictions pred;
  pred.generic_mu = static_cast<long>(m) * m;
  pred.isolated_count = m + 1;

  // alpha_3(s) = sum_i alpha_{i,3} s^i against q(s) = eps1 b(s) - eps2 a(s)
  std::vector<Rational> alpha3;
  alpha3.reserve(static_cast<std::size_t>(m));
  bool alpha3_zero = true;
  for (int i = 0; i < m; ++i) {
    alpha3.push_back(data.alpha[static_cast<std::size_t>(i)][3]);
    if (!alpha3.back().is_zero()) alpha3_zero = false;
  }
  pred.alpha3_zero = alpha3_zero;
  MultivariatePolynomial q(1);
  {
    const MultivariatePolynomial qa = data.eps[0] * b1;
    const MultivariatePolynomial qb = data.eps[1] * a1;
    q = qa - qb;
  }
  if (q.is_zero()) throw Error("degenerate direction: eps1 b = eps2 a");
  if (!alpha3_zero) {
    pred.beta = univariate_common_roots(univariate_from(alpha3), q);
    pred.minimum_mu = m;
  } else {
    pred.beta = 0;  // every branch may escape; the floor degenerates
    pred.minimum_mu = 0;
  }
  pred.predicted_mu = pred.generic_mu - pred.beta * m;

  return {DeformationFamily{std::move(base), std::move(direction),
                            "line-family m=" + std::to_string(m)},
          pred};
}

LineFamilyData line_family_generic(int m, unsigned long seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> small(-4, 4);
  std::uniform_int_distribution<int> pos(1, 4);
  LineFamilyData data;
  data.m = m;
  for (int attempt = 0; attempt < 512; ++attempt) {
    data.a.assign(static_cast<std::size_t>(m) + 1, Rational(0));
    data.b.assign(static_cast<std::size_t>(m) + 1, Rational(0));
    for (int i = 0; i < m; ++i) {
      data.a[static_cast<std::size_t>(i)] = Rational(small(rng));
      data.b[static_cast<std::size_t>(i)] = Rational(small(rng));
    }
    data.a[static_cast<std::size_t>(m)] = Rational(pos(rng));
    data.b[static_cast<std::size_t>(m)] = Rational(pos(rng));
    data.eps = {Rational(pos(rng)), Rational(pos(rng)), Rational(pos(rng))};
    data.alpha.assign(static_cast<std::size_t>(m), {});
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < 4; ++j)
        data.alpha[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
            Rational(small(rng));

    const MultivariatePolynomial a1 = univariate_from(data.a);
    const MultivariatePolynomial b1 = univariate_from(data.b);
    if (univariate_common_roots(a1, b1) != 0) continue;
    // degree of eps1 b - eps2 a must stay m, keeping the branch count plain
    if ((data.eps[0] * data.b.back() - data.eps[1] * data.a.back()).is_zero()) continue;
    std::vector<Rational> alpha3;
    for (int i = 0; i < m; ++i) alpha3.push_back(data.alpha[static_cast<std::size_t>(i)][3]);
    bool zero3 = true;
    for (const auto& c : alpha3)
      if (!c.is_zero()) zero3 = false;
    if (zero3) continue;
    const MultivariatePolynomial q = data.eps[0] * b1 - data.eps[1] * a1;
    if (univariate_common_roots(univariate_from(alpha3), q) != 0) continue;
    return data;
  }
  throw Error("could not draw a generic line-family instance");
}

LineFamilyData line_family_planted_root(int m) {
  if (m < 2) throw Error("line family needs m >= 2");
  LineFamilyData data;
  data.m = m;
  // a = s^m + 1, b = 2 s^m - s^{m-1} + 1: coprime, and with eps = (1,1,1)
  // the branch polynomial b - a = s^{m-1}(s - 1) shares exactly the root 1
  // with alpha_3(s) = s - 1.
  data.a.assign(static_cast<std::size_t>(m) + 1, Rational(0));
  data.b.assign(static_cast<std::size_t>(m) + 1, Rational(0));
  data.a[0] = Rational(1);
  data.a[static_cast<std::size_t>(m)] = Rational(1);
  data.b[0] = Rational(1);
  data.b[static_cast<std::size_t>(m - 1)] = Rational(-1);
  data.b[static_cast<std::size_t>(m)] = Rational(2);
  data.eps = {Rational(1), Rational(1), Rational(1)};
  data.alpha.assign(static_cast<std::size_t>(m), {});
  for (int i = 0; i < m; ++i) {
    data.alpha[static_cast<std::size_t>(i)][0] = Rational(1);
    data.alpha[static_cast<std::size_t>(i)][3] = Rational(0);
  }
  data.alpha[0][3] = Rational(-1);
  data.alpha[1][3] = Rational(1);
  return data;
}

CubicCurveInstance cubic_curve_family(unsigned long seed) {
  const int n = 3;
  const MultivariatePolynomial z1 = MultivariatePolynomial::variable(n, 0);
  const MultivariatePolynomial z2 = MultivariatePolynomial::variable(n, 1);
  const MultivariatePolynomial z3 = MultivariatePolynomial::variable(n, 2);
  const MultivariatePolynomial f1 = z2 - z1.pow(2);
  const MultivariatePolynomial f2 = z3 - z1.pow(3);
  const MultivariatePolynomial five = MultivariatePolynomial::constant(n, Rational(5));

  CubicCurveInstance inst;
  inst.base = VectorField(
      n, {Rational(3) * (z1 * f1) + f2, (z1 + five) * f1 + Rational(2) * f2, z2 * f1 + f2});
  inst.w = CompleteIntersection(n, {f1, f2});
  inst.point_a = {cplx(1, 0), cplx(3, 0), cplx(-5, 0)};
  inst.point_p = {cplx(1, 0), cplx(1, 0), cplx(1, 0)};
  inst.h3_limit = {cplx(16.0 / 7.0, 0), cplx(12.0 / 7.0, 0)};

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(1, 5);
  Rational e1, e2, e3, a0, a1, a2;
  for (int attempt = 0; attempt < 512; ++attempt) {
    e1 = Rational(pick(rng));
    e2 = Rational(pick(rng));
    e3 = Rational(pick(rng));
    a0 = Rational(pick(rng));
    a1 = Rational(pick(rng));
    a2 = Rational(pick(rng));
    if ((Rational(2) * e1 - e2).is_zero()) continue;       // keeps three branches apart
    if ((e3 - e1).is_zero()) continue;                     // top coefficient of the branch poly
    if ((Rational(3) * e3 + Rational(2) * e2 - Rational(7) * e1).is_zero()) continue;
    break;
  }

  inst.translation = DeformationFamily{
      inst.base,
      VectorField(n, {MultivariatePolynomial::constant(n, e1),
                      MultivariatePolynomial::constant(n, e2),
                      MultivariatePolynomial::constant(n, e3)}),
      "cubic-curve translation"};

  // refined family: f2 deforms by -t z2^3 and the third component by the
  // cubic forms, all linear in t, so it fits base - t * direction
  const MultivariatePolynomial z2cu = z2.pow(3);
  inst.refined = DeformationFamily{
      inst.base,
      VectorField(n, {z2cu + MultivariatePolynomial::constant(n, e1),
                      Rational(2) * z2cu + MultivariatePolynomial::constant(n, e2),
                      z2cu + MultivariatePolynomial::constant(n, e3) + a0 * z1.pow(3) +
                          a1 * z2.pow(3) + a2 * z3.pow(3)}),
      "cubic-curve refined"};
  return inst;
}

CompleteIntersection CubicCurveInstance::w_at(const Rational& t) const {
  const MultivariatePolynomial z1 = MultivariatePolynomial::variable(3, 0);
  const MultivariatePolynomial z2 = MultivariatePolynomial::variable(3, 1);
  const MultivariatePolynomial z3 = MultivariatePolynomial::variable(3, 2);
  return CompleteIntersection(3, {z2 - z1.pow(2), z3 - z1.pow(3) - t * z2.pow(3)});
}

CompleteIntersection rotation_family_w() { return line_family_w(); }

TSchedule rotation_family_schedule(const RotationFamilyPredictions& pred) {
  TSchedule s = TSchedule::standard();
  s.region_radius = pred.region_radius;
  return s;
}

RotationFamilyData rotation_family_special(int kappa) {
  RotationFamilyData data;
  data.kappa = kappa;
  data.pm = {Rational(0), Rational(1)};  // P(z3) = z3
  data.special = true;
  data.a[2][0] = Rational(1);
  return data;
}

RotationFamilyData rotation_family_generic(int kappa, unsigned long seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(1, 3);
  RotationFamilyData data;
  data.kappa = kappa;
  data.pm = {Rational(0), Rational(1)};
  data.special = false;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) data.a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
        Rational(pick(rng));
  return data;
}

std::pair<DeformationFamily, RotationFamilyPredictions> rotation_family(
    const RotationFamilyData& data) {
  if (data.pm.size() < 2) throw Error("P_m must have positive degree");
  const MultivariatePolynomial p1 = univariate_from(data.pm);
  if (p1.is_zero() || *p1.degree() < 1) throw Error("P_m must have positive degree");
  const MultivariatePolynomial dp1 = p1.differentiate(0);
  if (univariate_common_roots(p1, dp1 /*nonzero since deg >= 1*/) != 0)
    throw RepeatedRootsInPm("P_m has a repeated root");

  if (data.special) {
    if (data.a[2][0].is_zero())
      throw Error("the special direction needs a_{30} nonzero");
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        if (!(i == 2 && j == 0) &&
            !data.a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].is_zero())
          throw Error("the special direction has every other a_{ij} zero");
  }

  VectorField base = truncate_series_field("trig-rotation", data.kappa);
  const int n = 3;
  // third component z1 * P(z3)
  const std::vector<MultivariatePolynomial> into_z3 = {MultivariatePolynomial::variable(n, 2)};
  const MultivariatePolynomial p3 = p1.substitute(into_z3);
  base.components[2] = MultivariatePolynomial::variable(n, 0) * p3;

  std::vector<MultivariatePolynomial> dir;
  dir.reserve(3);
  for (int i = 0; i < 3; ++i) {
    MultivariatePolynomial row =
        MultivariatePolynomial::constant(n, data.a[static_cast<std::size_t>(i)][0]);
    row += data.a[static_cast<std::size_t>(i)][1] * MultivariatePolynomial::variable(n, 0);
    row += data.a[static_cast<std::size_t>(i)][2] * MultivariatePolynomial::variable(n, 1);
    dir.push_back(std::move(row));
  }

  RotationFamilyPredictions pred;
  pred.empty_basin = data.special;
  pred.min_total_multiplicity = 4L * data.kappa + 2;

  // validity disk: distance from W to the nearest zero of the rotation
  // minor determinant f^2 + g^2, computed on the transverse line
  {
    const MultivariatePolynomial f = base.components[0].differentiate(0);   // f_kappa(z3)
    const MultivariatePolynomial g = base.components[0].differentiate(1);   // g_kappa(z3)
    const MultivariatePolynomial det3 = f * f + g * g;
    int deg = 0;
    for (const auto& [m, c] : det3.terms()) deg = std::max(deg, m.exponent(2));
    std::vector<cplx> coeffs(static_cast<std::size_t>(deg) + 1, cplx(0, 0));
    for (const auto& [m, c] : det3.terms())
      coeffs[static_cast<std::size_t>(m.exponent(2))] = cplx(c.to_double(), 0.0);
    const cplx lead = coeffs.back();
    coeffs.pop_back();
    for (auto& c : coeffs) c /= lead;
    double rmin = 10.0;
    for (const cplx& root : companion_roots(coeffs)) rmin = std::min(rmin, std::abs(root));
    pred.region_radius = 0.75 * rmin;
  }

  return {DeformationFamily{std::move(base), VectorField(n, std::move(dir)),
                            "rotation-family kappa=" + std::to_string(data.kappa)},
          pred};
}

}  // namespace singlab
