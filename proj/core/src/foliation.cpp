#include "singlab/foliation.hpp"

#include <algorithm>
#include <limits>

#include "singlab/eigen.hpp"
#include "singlab/errors.hpp"

namespace singlab {

VectorField::VectorField(int nvars, std::vector<MultivariatePolynomial> comps)
    : nvars(nvars), components(std::move(comps)) {
  if (static_cast<int>(components.size()) != nvars)
    throw DimensionMismatch("vector field needs one component per variable");
  for (const auto& c : components)
    if (c.nvars() != nvars) throw DimensionMismatch("component dimension mismatch");
}

bool VectorField::is_zero() const {
  return std::all_of(components.begin(), components.end(),
                     [](const MultivariatePolynomial& p) { return p.is_zero(); });
}

std::optional<int> VectorField::degree() const {
  std::optional<int> d;
  for (const auto& c : components) {
    const auto cd = c.degree();
    if (cd && (!d || *cd > *d)) d = cd;
  }
  return d;
}

std::vector<cplx> VectorField::evaluate(std::span<const cplx> point) const {
  std::vector<cplx> out;
  out.reserve(components.size());
  for (const auto& c : components) out.push_back(c.evaluate(point));
  return out;
}

CompleteIntersection::CompleteIntersection(int nvars, std::vector<MultivariatePolynomial> fs)
    : nvars(nvars), defining(std::move(fs)) {
  if (defining.size() < 2)
    throw Error("complete intersection components here have codimension >= 2");
  if (static_cast<int>(defining.size()) > nvars)
    throw Error("codimension exceeds ambient dimension");
  for (const auto& f : defining) {
    if (f.nvars() != nvars) throw DimensionMismatch("defining polynomial dimension mismatch");
    if (f.is_zero()) throw Error("zero defining polynomial");
  }
}

std::vector<int> CompleteIntersection::degrees() const {
  std::vector<int> ds;
  ds.reserve(defining.size());
  for (const auto& f : defining) ds.push_back(*f.degree());
  return ds;
}

double CompleteIntersection::proximity(std::span<const cplx> point) const {
  double m = 0.0;
  for (const auto& f : defining) m = std::max(m, std::abs(f.evaluate(point)));
  return m;
}

bool CompleteIntersection::smooth_at(std::span<const cplx> point, double tol) const {
  const int d = codim();
  std::vector<std::vector<cplx>> jac(static_cast<std::size_t>(d),
                                     std::vector<cplx>(static_cast<std::size_t>(nvars)));
  double scale = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < nvars; ++j) {
      jac[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          defining[static_cast<std::size_t>(i)].differentiate(j).evaluate(point);
      scale = std::max(scale, std::abs(jac[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]));
    }
  if (scale == 0.0) return false;
  // Gaussian elimination rank
  int rank = 0;
  for (int col = 0; col < nvars && rank < d; ++col) {
    int piv = -1;
    double best = tol * scale;
    for (int row = rank; row < d; ++row) {
      const double a = std::abs(jac[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)]);
      if (a > best) {
        best = a;
        piv = row;
      }
    }
    if (piv < 0) continue;
    std::swap(jac[static_cast<std::size_t>(piv)], jac[static_cast<std::size_t>(rank)]);
    for (int row = rank + 1; row < d; ++row) {
      const cplx f = jac[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)] /
                     jac[static_cast<std::size_t>(rank)][static_cast<std::size_t>(col)];
      for (int c2 = col; c2 < nvars; ++c2)
        jac[static_cast<std::size_t>(row)][static_cast<std::size_t>(c2)] -=
            f * jac[static_cast<std::size_t>(rank)][static_cast<std::size_t>(c2)];
    }
    ++rank;
  }
  return rank == d;
}

std::optional<std::vector<int>> CompleteIntersection::coordinate_indices() const {
  std::vector<int> idx;
  for (const auto& f : defining) {
    if (f.terms().size() != 1) return std::nullopt;
    const auto& [m, c] = *f.terms().begin();
    if (m.degree() != 1) return std::nullopt;
    for (int v = 0; v < nvars; ++v)
      if (m.exponent(v) == 1) {
        if (std::find(idx.begin(), idx.end(), v) != idx.end()) return std::nullopt;
        idx.push_back(v);
      }
  }
  return idx;
}

ExceptionalData::ExceptionalData(int m_e, bool dicritical)
    : m_e(m_e), dicritical(dicritical), ell(dicritical ? m_e - 1 : m_e) {
  if (m_e < 0 || (dicritical && m_e < 1))
    throw Error("inconsistent exceptional data");
}

Ideal singular_ideal(const VectorField& x) {
  if (x.is_zero()) throw ZeroField("singular ideal of the zero field");
  return Ideal(x.nvars, x.components);
}

namespace {

// Generators of J^m: all m-fold products of the f_i.
std::vector<MultivariatePolynomial> ideal_power_gens(
    const std::vector<MultivariatePolynomial>& fs, int m) {
  std::vector<MultivariatePolynomial> out;
  std::vector<int> pick(static_cast<std::size_t>(m), 0);
  const int d = static_cast<int>(fs.size());
  while (true) {
    MultivariatePolynomial prod = fs[static_cast<std::size_t>(pick[0])];
    for (int i = 1; i < m; ++i) prod = prod * fs[static_cast<std::size_t>(pick[static_cast<std::size_t>(i)])];
    out.push_back(std::move(prod));
    // next nondecreasing tuple
    int i = m - 1;
    while (i >= 0 && pick[static_cast<std::size_t>(i)] == d - 1) --i;
    if (i < 0) break;
    const int v = ++pick[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < m; ++j) pick[static_cast<std::size_t>(j)] = v;
  }
  return out;
}

}  // namespace

MultiplicityProfile mult_along_w(const VectorField& x, const CompleteIntersection& w,
                                 const GroebnerOptions& opts) {
  if (x.nvars != w.nvars) throw DimensionMismatch("field and W dimension mismatch");
  if (x.is_zero()) throw ZeroField("multiplicity of the zero field");

  std::vector<GroebnerBasis> gb_powers;  // gb_powers[m-1] is a basis of J^m
  auto gb_power = [&](int m) -> const GroebnerBasis& {
    while (static_cast<int>(gb_powers.size()) < m) {
      const int next = static_cast<int>(gb_powers.size()) + 1;
      gb_powers.push_back(buchberger(
          Ideal(w.nvars, ideal_power_gens(w.defining, next)), MonomialOrder::grevlex(), opts));
    }
    return gb_powers[static_cast<std::size_t>(m - 1)];
  };

  MultiplicityProfile prof;
  prof.orders.resize(x.components.size());
  int m_w = std::numeric_limits<int>::max();
  for (std::size_t i = 0; i < x.components.size(); ++i) {
    const auto& comp = x.components[i];
    if (comp.is_zero()) {
      prof.orders[i] = std::nullopt;  // vanishes to infinite order
      continue;
    }
    if (!in_ideal(comp, gb_power(1)))
      throw WNotInSingularLocus("component X" + std::to_string(i + 1) +
                                " does not vanish on W");
    int m = 1;
    const int cap = *comp.degree() + 1;
    while (m < cap && in_ideal(comp, gb_power(m + 1))) ++m;
    prof.orders[i] = m;
    m_w = std::min(m_w, m);
  }
  if (m_w == std::numeric_limits<int>::max())
    throw ZeroField("multiplicity of the zero field");
  prof.m_w = m_w;
  return prof;
}

ExceptionalData exceptional_order(const VectorField& x, const CompleteIntersection& w,
                                  const GroebnerOptions&) {
  if (x.nvars != w.nvars) throw DimensionMismatch("field and W dimension mismatch");
  const auto coords = w.coordinate_indices();
  if (!coords) throw WNotCoordinate("W must be given by coordinate hyperplanes");
  const int n = x.nvars;

  // membership in the coordinate ideal is a per-monomial test
  for (std::size_t i = 0; i < x.components.size(); ++i) {
    const auto& comp = x.components[i];
    for (const auto& [m, c] : comp.terms()) {
      bool touched = false;
      for (int v : *coords)
        if (m.exponent(v) > 0) {
          touched = true;
          break;
        }
      if (!touched)
        throw WNotInSingularLocus("component X" + std::to_string(i + 1) +
                                  " does not vanish on W");
    }
  }

  int m_e = std::numeric_limits<int>::max();
  std::vector<int> s_component_order;  // order of the d/ds coefficient per chart
  std::vector<int> chart_min;
  for (int chart : *coords) {
    std::vector<MultivariatePolynomial> images;
    images.reserve(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
      const bool is_center = std::find(coords->begin(), coords->end(), v) != coords->end();
      if (is_center && v != chart)
        images.push_back(MultivariatePolynomial::variable(n, chart) *
                         MultivariatePolynomial::variable(n, v));
      else
        images.push_back(MultivariatePolynomial::variable(n, v));
    }

    const MultivariatePolynomial pivot = x.components[static_cast<std::size_t>(chart)].substitute(images);
    int chart_order = std::numeric_limits<int>::max();
    auto fold_order = [&](const MultivariatePolynomial& p) {
      if (!p.is_zero()) chart_order = std::min(chart_order, p.variable_order(chart));
    };
    fold_order(pivot);
    for (int v = 0; v < n; ++v) {
      if (v == chart) continue;
      const bool is_center = std::find(coords->begin(), coords->end(), v) != coords->end();
      MultivariatePolynomial comp = x.components[static_cast<std::size_t>(v)].substitute(images);
      if (is_center) {
        comp -= MultivariatePolynomial::variable(n, v) * pivot;
        auto divided = comp.divided_by_variable(chart);
        if (!divided && !comp.is_zero())
          throw Error("blow-up chart component not divisible by the chart variable");
        comp = divided ? *divided : comp;
      }
      fold_order(comp);
    }
    if (chart_order == std::numeric_limits<int>::max())
      throw ZeroField("blow-up of the zero field");
    chart_min.push_back(chart_order);
    s_component_order.push_back(pivot.is_zero() ? std::numeric_limits<int>::max()
                                                : pivot.variable_order(chart));
    m_e = std::min(m_e, chart_order);
  }

  bool dicritical = false;
  for (std::size_t i = 0; i < s_component_order.size(); ++i)
    if (s_component_order[i] == m_e) dicritical = true;
  return ExceptionalData(m_e, dicritical);
}

namespace {

MultivariatePolynomial minor_determinant(const std::vector<std::vector<MultivariatePolynomial>>& jac,
                                         const std::vector<int>& rows,
                                         const std::vector<int>& cols, int nvars) {
  const int d = static_cast<int>(rows.size());
  if (d == 1) return jac[static_cast<std::size_t>(rows[0])][static_cast<std::size_t>(cols[0])];
  MultivariatePolynomial det(nvars);
  for (int k = 0; k < d; ++k) {
    std::vector<int> sub_rows(rows.begin() + 1, rows.end());
    std::vector<int> sub_cols;
    for (int j = 0; j < d; ++j)
      if (j != k) sub_cols.push_back(cols[static_cast<std::size_t>(j)]);
    MultivariatePolynomial cof =
        jac[static_cast<std::size_t>(rows[0])][static_cast<std::size_t>(cols[static_cast<std::size_t>(k)])] *
        minor_determinant(jac, sub_rows, sub_cols, nvars);
    if (k % 2 == 0)
      det += cof;
    else
      det -= cof;
  }
  return det;
}

void subsets_of_size(int n, int k, std::vector<std::vector<int>>& out) {
  std::vector<int> cur(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) cur[static_cast<std::size_t>(i)] = i;
  while (true) {
    out.push_back(cur);
    int i = k - 1;
    while (i >= 0 && cur[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) break;
    ++cur[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j)
      cur[static_cast<std::size_t>(j)] = cur[static_cast<std::size_t>(j - 1)] + 1;
  }
}

// Bounded check for one minor restricted to W: true when the restriction is
// a nonzero constant, or is univariate with no roots of modulus <= R.
bool minor_nonvanishing_in_region(const MultivariatePolynomial& restricted, double radius) {
  if (restricted.is_zero()) return false;
  int used = -1;
  int used_count = 0;
  for (int v = 0; v < restricted.nvars(); ++v)
    if (restricted.uses_variable(v)) {
      used = v;
      ++used_count;
    }
  if (used_count == 0) return true;  // nonzero constant
  if (used_count > 1) return false;  // no bounded certificate at this layer

  int deg = 0;
  for (const auto& [m, c] : restricted.terms()) deg = std::max(deg, m.exponent(used));
  std::vector<cplx> coeffs(static_cast<std::size_t>(deg) + 1, cplx(0.0, 0.0));
  for (const auto& [m, c] : restricted.terms())
    coeffs[static_cast<std::size_t>(m.exponent(used))] = cplx(c.to_double(), 0.0);
  const cplx lead = coeffs.back();
  coeffs.pop_back();
  for (auto& c : coeffs) c /= lead;
  for (const cplx& root : companion_roots(coeffs))
    if (std::abs(root) <= radius) return false;
  return true;
}

}  // namespace

bool totally_simple(const VectorField& x, const CompleteIntersection& w,
                    const GroebnerOptions& opts) {
  return totally_simple(x, w, std::nullopt, opts);
}

bool totally_simple(const VectorField& x, const CompleteIntersection& w,
                    std::optional<double> region_radius, const GroebnerOptions& opts) {
  if (x.nvars != w.nvars) throw DimensionMismatch("field and W dimension mismatch");
  const int n = x.nvars;
  const int d = w.codim();

  const GroebnerBasis gw = buchberger(Ideal(n, w.defining), MonomialOrder::grevlex(), opts);
  for (std::size_t i = 0; i < x.components.size(); ++i)
    if (!in_ideal(x.components[i], gw))
      throw WNotInSingularLocus("component X" + std::to_string(i + 1) +
                                " does not vanish on W");

  std::vector<std::vector<MultivariatePolynomial>> jac;
  jac.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    std::vector<MultivariatePolynomial> row;
    row.reserve(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) row.push_back(x.components[static_cast<std::size_t>(i)].differentiate(j));
    jac.push_back(std::move(row));
  }

  std::vector<std::vector<int>> picks;
  subsets_of_size(n, d, picks);

  // region restriction needs W in coordinate form
  std::optional<std::vector<MultivariatePolynomial>> restrict_images;
  if (region_radius) {
    if (const auto coords = w.coordinate_indices()) {
      std::vector<MultivariatePolynomial> images;
      for (int v = 0; v < n; ++v) {
        const bool center = std::find(coords->begin(), coords->end(), v) != coords->end();
        images.push_back(center ? MultivariatePolynomial(n)
                                : MultivariatePolynomial::variable(n, v));
      }
      restrict_images = std::move(images);
    }
  }

  for (const auto& rows : picks) {
    for (const auto& cols : picks) {
      const MultivariatePolynomial det = minor_determinant(jac, rows, cols, n);
      if (det.is_zero()) continue;
      std::vector<MultivariatePolynomial> gens = w.defining;
      gens.push_back(det);
      if (buchberger(Ideal(n, std::move(gens)), MonomialOrder::grevlex(), opts).is_unit())
        return true;
      if (restrict_images &&
          minor_nonvanishing_in_region(det.substitute(*restrict_images), *region_radius))
        return true;
    }
  }
  return false;
}

StraightenResult straighten(const CompleteIntersection& w, const VectorField& x) {
  if (x.nvars != w.nvars) throw DimensionMismatch("field and W dimension mismatch");
  const int n = w.nvars;
  const int d = w.codim();

  bool all_linear = true;
  for (const auto& f : w.defining)
    if (*f.degree() > 1) all_linear = false;

  std::vector<MultivariatePolynomial> forward(static_cast<std::size_t>(n),
                                              MultivariatePolynomial(n));
  std::vector<MultivariatePolynomial> inverse(static_cast<std::size_t>(n),
                                              MultivariatePolynomial(n));
  std::vector<int> sigma;  // chosen variable per defining polynomial
  std::vector<int> tau;    // the remaining variables, ascending

  if (all_linear) {
    // Gaussian elimination picks an invertible d x d column block.
    std::vector<std::vector<Rational>> m(static_cast<std::size_t>(d),
                                         std::vector<Rational>(static_cast<std::size_t>(n)));
    for (int i = 0; i < d; ++i)
      for (int v = 0; v < n; ++v) {
        Monomial mon(n);
        mon.set(v, 1);
        m[static_cast<std::size_t>(i)][static_cast<std::size_t>(v)] =
            w.defining[static_cast<std::size_t>(i)].coefficient(mon);
      }
    std::vector<std::vector<Rational>> red = m;
    std::vector<bool> used(static_cast<std::size_t>(n), false);
    for (int row = 0; row < d; ++row) {
      int piv = -1;
      for (int v = 0; v < n; ++v)
        if (!used[static_cast<std::size_t>(v)] &&
            !red[static_cast<std::size_t>(row)][static_cast<std::size_t>(v)].is_zero()) {
          piv = v;
          break;
        }
      if (piv < 0) throw NotGraphForm("linear defining polynomials are degenerate");
      used[static_cast<std::size_t>(piv)] = true;
      sigma.push_back(piv);
      for (int r2 = row + 1; r2 < d; ++r2) {
        const Rational factor = red[static_cast<std::size_t>(r2)][static_cast<std::size_t>(piv)] /
                                red[static_cast<std::size_t>(row)][static_cast<std::size_t>(piv)];
        for (int v = 0; v < n; ++v)
          red[static_cast<std::size_t>(r2)][static_cast<std::size_t>(v)] -=
              factor * red[static_cast<std::size_t>(row)][static_cast<std::size_t>(v)];
      }
    }
    for (int v = 0; v < n; ++v)
      if (!used[static_cast<std::size_t>(v)]) tau.push_back(v);

    // full map u = M z + b with M invertible; invert exactly
    std::vector<std::vector<Rational>> M(static_cast<std::size_t>(n),
                                         std::vector<Rational>(static_cast<std::size_t>(n)));
    std::vector<Rational> b(static_cast<std::size_t>(n));
    for (int i = 0; i < d; ++i) {
      M[static_cast<std::size_t>(i)] = m[static_cast<std::size_t>(i)];
      b[static_cast<std::size_t>(i)] = w.defining[static_cast<std::size_t>(i)].constant_term();
    }
    for (std::size_t j = 0; j < tau.size(); ++j)
      M[static_cast<std::size_t>(d) + j][static_cast<std::size_t>(tau[j])] = Rational(1);

    // Gauss-Jordan inverse
    std::vector<std::vector<Rational>> inv(static_cast<std::size_t>(n),
                                           std::vector<Rational>(static_cast<std::size_t>(n)));
    for (int i = 0; i < n; ++i) inv[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = Rational(1);
    std::vector<std::vector<Rational>> a = M;
    for (int col = 0; col < n; ++col) {
      int piv = -1;
      for (int row = col; row < n; ++row)
        if (!a[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)].is_zero()) {
          piv = row;
          break;
        }
      if (piv < 0) throw NotGraphForm("straightening map is not invertible");
      std::swap(a[static_cast<std::size_t>(piv)], a[static_cast<std::size_t>(col)]);
      std::swap(inv[static_cast<std::size_t>(piv)], inv[static_cast<std::size_t>(col)]);
      const Rational lead = a[static_cast<std::size_t>(col)][static_cast<std::size_t>(col)];
      for (int v = 0; v < n; ++v) {
        a[static_cast<std::size_t>(col)][static_cast<std::size_t>(v)] /= lead;
        inv[static_cast<std::size_t>(col)][static_cast<std::size_t>(v)] /= lead;
      }
      for (int row = 0; row < n; ++row) {
        if (row == col) continue;
        const Rational f = a[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)];
        if (f.is_zero()) continue;
        for (int v = 0; v < n; ++v) {
          a[static_cast<std::size_t>(row)][static_cast<std::size_t>(v)] -=
              f * a[static_cast<std::size_t>(col)][static_cast<std::size_t>(v)];
          inv[static_cast<std::size_t>(row)][static_cast<std::size_t>(v)] -=
              f * inv[static_cast<std::size_t>(col)][static_cast<std::size_t>(v)];
        }
      }
    }

    for (int i = 0; i < n; ++i) {
      MultivariatePolynomial fwd = MultivariatePolynomial::constant(n, b[static_cast<std::size_t>(i)]);
      MultivariatePolynomial invp(n);
      for (int v = 0; v < n; ++v) {
        fwd += M[static_cast<std::size_t>(i)][static_cast<std::size_t>(v)] *
               MultivariatePolynomial::variable(n, v);
        invp += inv[static_cast<std::size_t>(i)][static_cast<std::size_t>(v)] *
                (MultivariatePolynomial::variable(n, v) -
                 MultivariatePolynomial::constant(n, b[static_cast<std::size_t>(v)]));
      }
      forward[static_cast<std::size_t>(i)] = std::move(fwd);
      inverse[static_cast<std::size_t>(i)] = std::move(invp);
    }

    // Y(u) = M X(psi^{-1}(u))
    std::vector<MultivariatePolynomial> xin;
    xin.reserve(static_cast<std::size_t>(n));
    for (const auto& comp : x.components) xin.push_back(comp.substitute(inverse));
    std::vector<MultivariatePolynomial> ycomps(static_cast<std::size_t>(n),
                                               MultivariatePolynomial(n));
    for (int i = 0; i < n; ++i)
      for (int v = 0; v < n; ++v)
        ycomps[static_cast<std::size_t>(i)] +=
            M[static_cast<std::size_t>(i)][static_cast<std::size_t>(v)] * xin[static_cast<std::size_t>(v)];

    std::vector<MultivariatePolynomial> w0;
    for (int i = 0; i < d; ++i) w0.push_back(MultivariatePolynomial::variable(n, i));
    return {VectorField(n, std::move(ycomps)), CompleteIntersection(n, std::move(w0)),
            std::move(forward), std::move(inverse)};
  }

  // graph form: f_i = c (z_sigma(i) - h_i(transverse variables))
  std::vector<MultivariatePolynomial> normalized;
  std::vector<bool> taken(static_cast<std::size_t>(n), false);
  for (const auto& f : w.defining) {
    int choice = -1;
    for (int v = 0; v < n && choice < 0; ++v) {
      if (taken[static_cast<std::size_t>(v)]) continue;
      Monomial mon(n);
      mon.set(v, 1);
      const Rational c = f.coefficient(mon);
      if (c.is_zero()) continue;
      bool elsewhere = false;
      for (const auto& [m2, c2] : f.terms()) {
        if (m2 == mon) continue;
        if (m2.exponent(v) > 0) {
          elsewhere = true;
          break;
        }
      }
      if (!elsewhere) choice = v;
    }
    if (choice < 0) throw NotGraphForm("no variable splits off linearly");
    taken[static_cast<std::size_t>(choice)] = true;
    sigma.push_back(choice);
    Monomial mon(n);
    mon.set(choice, 1);
    normalized.push_back((Rational(1) / f.coefficient(mon)) * f);
  }
  for (int v = 0; v < n; ++v)
    if (!taken[static_cast<std::size_t>(v)]) tau.push_back(v);

  // h_i = z_sigma(i) - f_i may only involve transverse variables
  std::vector<MultivariatePolynomial> h;
  for (int i = 0; i < d; ++i) {
    MultivariatePolynomial hi =
        MultivariatePolynomial::variable(n, sigma[static_cast<std::size_t>(i)]) -
        normalized[static_cast<std::size_t>(i)];
    for (int s : sigma)
      if (hi.uses_variable(s)) throw NotGraphForm("graph right-hand side touches bound variables");
    h.push_back(std::move(hi));
  }

  // forward: u_i = f_i(z), u_{d+j} = z_tau(j)
  for (int i = 0; i < d; ++i) forward[static_cast<std::size_t>(i)] = normalized[static_cast<std::size_t>(i)];
  for (std::size_t j = 0; j < tau.size(); ++j)
    forward[static_cast<std::size_t>(d) + j] = MultivariatePolynomial::variable(n, tau[j]);

  // inverse: z_tau(j) = u_{d+j}; z_sigma(i) = u_i + h_i(u_{d+1..n})
  std::vector<MultivariatePolynomial> relabel(static_cast<std::size_t>(n),
                                              MultivariatePolynomial(n));
  for (std::size_t j = 0; j < tau.size(); ++j)
    relabel[static_cast<std::size_t>(tau[j])] =
        MultivariatePolynomial::variable(n, d + static_cast<int>(j));
  for (int i = 0; i < d; ++i)
    inverse[static_cast<std::size_t>(sigma[static_cast<std::size_t>(i)])] =
        MultivariatePolynomial::variable(n, i) + h[static_cast<std::size_t>(i)].substitute(relabel);
  for (std::size_t j = 0; j < tau.size(); ++j)
    inverse[static_cast<std::size_t>(tau[j])] =
        MultivariatePolynomial::variable(n, d + static_cast<int>(j));

  // pushforward by the chain rule
  std::vector<MultivariatePolynomial> xin;
  xin.reserve(static_cast<std::size_t>(n));
  for (const auto& comp : x.components) xin.push_back(comp.substitute(inverse));
  std::vector<MultivariatePolynomial> ycomps(static_cast<std::size_t>(n),
                                             MultivariatePolynomial(n));
  for (int i = 0; i < d; ++i) {
    for (int v = 0; v < n; ++v) {
      const MultivariatePolynomial dfi = normalized[static_cast<std::size_t>(i)].differentiate(v);
      if (dfi.is_zero()) continue;
      ycomps[static_cast<std::size_t>(i)] += dfi.substitute(inverse) * xin[static_cast<std::size_t>(v)];
    }
  }
  for (std::size_t j = 0; j < tau.size(); ++j)
    ycomps[static_cast<std::size_t>(d) + j] = xin[static_cast<std::size_t>(tau[j])];

  std::vector<MultivariatePolynomial> w0;
  for (int i = 0; i < d; ++i) w0.push_back(MultivariatePolynomial::variable(n, i));
  return {VectorField(n, std::move(ycomps)), CompleteIntersection(n, std::move(w0)),
          std::move(forward), std::move(inverse)};
}

FoliationDegree foliation_degree(const VectorField& x) {
  if (x.is_zero()) throw ZeroField("degree of the zero field");
  const int n = x.nvars;
  const int dd = *x.degree();
  std::vector<MultivariatePolynomial> top;
  top.reserve(static_cast<std::size_t>(n));
  for (const auto& c : x.components) top.push_back(c.homogeneous_part(dd));

  int pivot = -1;
  for (int i = 0; i < n; ++i)
    if (!top[static_cast<std::size_t>(i)].is_zero()) {
      pivot = i;
      break;
    }
  const auto g = top[static_cast<std::size_t>(pivot)].divided_by_variable(pivot);
  if (g) {
    bool radial = true;
    for (int i = 0; i < n && radial; ++i)
      if (!(top[static_cast<std::size_t>(i)] == *g * MultivariatePolynomial::variable(n, i)))
        radial = false;
    if (radial) return {dd - 1, true};
  }
  return {dd, false};
}

VectorField chart_restrict(const VectorField& x, int chart) {
  const int n = x.nvars;
  if (chart < 0 || chart > n) throw IndexOutOfRange("chart index out of range");
  if (chart == n) return x;
  if (x.is_zero()) return VectorField(n - 1, std::vector<MultivariatePolynomial>(
                                                 static_cast<std::size_t>(n - 1),
                                                 MultivariatePolynomial(n - 1)));
  const int dd = *x.degree();

  // substitution into the homogenized components: xi_chart = 1, xi_n = 0,
  // remaining coordinates become the chart variables in ascending order
  std::vector<MultivariatePolynomial> images;
  images.reserve(static_cast<std::size_t>(n) + 1);
  int pos = 0;
  for (int c = 0; c < n; ++c) {
    if (c == chart) {
      images.push_back(MultivariatePolynomial::constant(n - 1, Rational(1)));
    } else {
      images.push_back(MultivariatePolynomial::variable(n - 1, pos));
      ++pos;
    }
  }
  images.push_back(MultivariatePolynomial(n - 1));  // hyperplane at infinity

  std::vector<MultivariatePolynomial> restricted;
  restricted.reserve(static_cast<std::size_t>(n));
  for (const auto& comp : x.components)
    restricted.push_back(comp.homogenized(dd).substitute(images));

  std::vector<MultivariatePolynomial> out;
  out.reserve(static_cast<std::size_t>(n - 1));
  pos = 0;
  for (int c = 0; c < n; ++c) {
    if (c == chart) continue;
    out.push_back(restricted[static_cast<std::size_t>(c)] -
                  MultivariatePolynomial::variable(n - 1, pos) *
                      restricted[static_cast<std::size_t>(chart)]);
    ++pos;
  }
  return VectorField(n - 1, std::move(out));
}

}  // namespace singlab
