#include "singlab/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <map>
#include <random>

#include "singlab/errors.hpp"

namespace singlab {

ComplexMatrix MultiplicationMatrix::to_complex() const {
  ComplexMatrix m(dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) m.at(i, j) = cplx(at(i, j).to_double(), 0.0);
  return m;
}

MultiplicationMatrix multiplication_matrix(const GroebnerBasis& G, int var) {
  if (var < 0 || var >= G.nvars()) throw IndexOutOfRange("variable index out of range");
  const std::vector<Monomial> basis = quotient_basis(G);
  const int dim = static_cast<int>(basis.size());
  std::map<Monomial, int> index;
  for (int i = 0; i < dim; ++i) index.emplace(basis[static_cast<std::size_t>(i)], i);

  MultiplicationMatrix M{var, dim, std::vector<Rational>(static_cast<std::size_t>(dim) * dim)};
  for (int j = 0; j < dim; ++j) {
    Monomial shifted = basis[static_cast<std::size_t>(j)];
    shifted.set(var, shifted.exponent(var) + 1);
    const MultivariatePolynomial nf =
        normal_form(MultivariatePolynomial::from_term(shifted, Rational(1)), G);
    for (const auto& [m, c] : nf.terms()) {
      auto it = index.find(m);
      if (it == index.end()) throw Error("normal form left the staircase basis");
      M.at(it->second, j) = c;
    }
  }
  return M;
}

std::vector<MultiplicationMatrix> multiplication_matrices(const GroebnerBasis& G) {
  std::vector<MultiplicationMatrix> ms;
  ms.reserve(static_cast<std::size_t>(G.nvars()));
  for (int v = 0; v < G.nvars(); ++v) ms.push_back(multiplication_matrix(G, v));
  return ms;
}

bool commute_exactly(const MultiplicationMatrix& a, const MultiplicationMatrix& b) {
  if (a.dim != b.dim) throw DimensionMismatch("multiplication matrix size mismatch");
  const int n = a.dim;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Rational ab(0), ba(0);
      for (int k = 0; k < n; ++k) {
        ab += a.at(i, k) * b.at(k, j);
        ba += b.at(i, k) * a.at(k, j);
      }
      if (!(ab == ba)) return false;
    }
  return true;
}

namespace {

// Exact arithmetic modulo the Mersenne prime 2^61 - 1; used to determine the
// number of distinct eigenvalues of the combination matrix from its minimal
// polynomial, independent of any floating-point threshold.
namespace modp {

constexpr std::uint64_t P = (1ULL << 61) - 1;

inline std::uint64_t add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = a + b;
  if (s >= P) s -= P;
  return s;
}
inline std::uint64_t sub(std::uint64_t a, std::uint64_t b) { return a >= b ? a - b : a + P - b; }
inline std::uint64_t mul(std::uint64_t a, std::uint64_t b) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % P);
}
inline std::uint64_t pw(std::uint64_t a, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}
inline std::uint64_t inv(std::uint64_t a) { return pw(a, P - 2); }

inline std::optional<std::uint64_t> from_rational(const Rational& r) {
  const std::uint64_t den = mpz_fdiv_ui(r.denominator().get_mpz_t(), P);
  if (den == 0) return std::nullopt;
  const std::uint64_t num = mpz_fdiv_ui(r.numerator().get_mpz_t(), P);
  return mul(num, inv(den));
}

using PolyP = std::vector<std::uint64_t>;  // low-first, no leading zeros

inline void strip(PolyP& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

PolyP derivative(const PolyP& p) {
  PolyP d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(mul(p[i], i % P));
  strip(d);
  return d;
}

PolyP remainder(PolyP a, const PolyP& b) {
  const std::uint64_t lead_inv = inv(b.back());
  while (a.size() >= b.size() && !a.empty()) {
    const std::uint64_t q = mul(a.back(), lead_inv);
    const std::size_t off = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i)
      a[off + i] = sub(a[off + i], mul(q, b[i]));
    strip(a);
  }
  return a;
}

PolyP gcd(PolyP a, PolyP b) {
  strip(a);
  strip(b);
  while (!b.empty()) {
    PolyP r = remainder(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

struct MatP {
  int n = 0;
  std::vector<std::uint64_t> a;
  explicit MatP(int n) : n(n), a(static_cast<std::size_t>(n) * n, 0) {}
  std::uint64_t& at(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
  std::uint64_t at(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }
  std::vector<std::uint64_t> apply(const std::vector<std::uint64_t>& v) const {
    std::vector<std::uint64_t> w(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i) {
      unsigned __int128 acc = 0;
      for (int j = 0; j < n; ++j) {
        acc += static_cast<unsigned __int128>(at(i, j)) * v[static_cast<std::size_t>(j)];
        if ((j & 7) == 7) acc %= P;
      }
      w[static_cast<std::size_t>(i)] = static_cast<std::uint64_t>(acc % P);
    }
    return w;
  }
};

// Minimal annihilating polynomial of the seeded vector under the matrix.
PolyP vector_minpoly(const MatP& m, std::uint64_t seed) {
  const int n = m.n;
  std::mt19937_64 rng(seed);
  std::vector<std::uint64_t> v(static_cast<std::size_t>(n));
  for (auto& x : v) x = rng() % P;

  // echelon rows carry the expression of the reduced vector in Krylov terms
  std::vector<std::vector<std::uint64_t>> rows;     // reduced Krylov vectors
  std::vector<std::vector<std::uint64_t>> combos;   // their Krylov coefficients
  std::vector<int> pivots;

  std::vector<std::uint64_t> cur = v;
  for (int step = 0; step <= n; ++step) {
    std::vector<std::uint64_t> w = cur;
    std::vector<std::uint64_t> combo(static_cast<std::size_t>(n) + 2, 0);
    combo[static_cast<std::size_t>(step)] = 1;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const int piv = pivots[r];
      if (w[static_cast<std::size_t>(piv)] == 0) continue;
      const std::uint64_t f = mul(w[static_cast<std::size_t>(piv)],
                                  inv(rows[r][static_cast<std::size_t>(piv)]));
      for (int i = 0; i < n; ++i)
        w[static_cast<std::size_t>(i)] = sub(w[static_cast<std::size_t>(i)],
                                             mul(f, rows[r][static_cast<std::size_t>(i)]));
      for (std::size_t i = 0; i < combo.size(); ++i)
        combo[i] = sub(combo[i], mul(f, combos[r][i]));
    }
    int piv = -1;
    for (int i = 0; i < n; ++i)
      if (w[static_cast<std::size_t>(i)] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) {
      PolyP mp(combo.begin(), combo.begin() + step + 1);
      strip(mp);
      return mp;
    }
    rows.push_back(std::move(w));
    combos.push_back(std::move(combo));
    pivots.push_back(piv);
    cur = m.apply(cur);
  }
  return {};  // unreachable for a genuine linear operator
}

bool annihilates(const MatP& m, const PolyP& p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::uint64_t> v(static_cast<std::size_t>(m.n));
  for (auto& x : v) x = rng() % P;
  // Horner: w = p(m) v
  std::vector<std::uint64_t> w(static_cast<std::size_t>(m.n), 0);
  for (std::size_t i = p.size(); i-- > 0;) {
    w = m.apply(w);
    for (int j = 0; j < m.n; ++j)
      w[static_cast<std::size_t>(j)] = add(w[static_cast<std::size_t>(j)],
                                           mul(p[i], v[static_cast<std::size_t>(j)]));
  }
  for (const std::uint64_t x : w)
    if (x != 0) return false;
  return true;
}

PolyP poly_mul(const PolyP& a, const PolyP& b) {
  PolyP c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = add(c[i + j], mul(a[i], b[j]));
  return c;
}

PolyP poly_divexact(const PolyP& a, const PolyP& b) {
  PolyP rem = a;
  PolyP q(a.size() - b.size() + 1, 0);
  const std::uint64_t lead_inv = inv(b.back());
  while (rem.size() >= b.size() && !rem.empty()) {
    const std::uint64_t f = mul(rem.back(), lead_inv);
    const std::size_t off = rem.size() - b.size();
    q[off] = f;
    for (std::size_t i = 0; i < b.size(); ++i) rem[off + i] = sub(rem[off + i], mul(f, b[i]));
    strip(rem);
  }
  return q;
}

}  // namespace modp

// Number of distinct eigenvalues of the exact combination sum c_v M_v, via
// the squarefree degree of its minimal polynomial over F_p. Returns nullopt
// when the reduction mod p is unavailable or inconclusive.
std::optional<int> distinct_eigenvalue_count(const std::vector<MultiplicationMatrix>& mult,
                                             const std::vector<double>& c,
                                             unsigned long seed) {
  if (mult.empty()) return std::nullopt;
  const int dim = mult[0].dim;
  modp::MatP a(dim);
  for (std::size_t v = 0; v < mult.size(); ++v) {
    const long cv = static_cast<long>(c[v]);
    const std::uint64_t cm =
        cv >= 0 ? static_cast<std::uint64_t>(cv) % modp::P
                : modp::sub(0, static_cast<std::uint64_t>(-cv) % modp::P);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) {
        const auto e = modp::from_rational(mult[v].at(i, j));
        if (!e) return std::nullopt;
        a.at(i, j) = modp::add(a.at(i, j), modp::mul(cm, *e));
      }
  }
  modp::PolyP m = modp::vector_minpoly(a, seed * 2 + 1);
  if (m.empty()) return std::nullopt;
  if (static_cast<int>(m.size()) - 1 < dim && !modp::annihilates(a, m, seed * 2 + 2)) {
    modp::PolyP m2 = modp::vector_minpoly(a, seed * 2 + 3);
    if (m2.empty()) return std::nullopt;
    const modp::PolyP g = modp::gcd(m, m2);
    m = g.empty() ? modp::poly_mul(m, m2)
                  : modp::poly_mul(modp::poly_divexact(m, g), m2);
    if (!modp::annihilates(a, m, seed * 2 + 4)) return std::nullopt;
  }
  const modp::PolyP d = modp::derivative(m);
  if (d.empty()) return std::nullopt;
  const modp::PolyP g = modp::gcd(m, d);
  const int gdeg = g.empty() ? 0 : static_cast<int>(g.size()) - 1;
  return static_cast<int>(m.size()) - 1 - gdeg;
}

// Single-linkage clustering of complex values at the given absolute threshold.
std::vector<int> link_clusters(const std::vector<cplx>& xs, double thr) {
  const int n = static_cast<int>(xs.size());
  std::vector<int> parent(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) parent[static_cast<std::size_t>(i)] = i;
  std::function<int(int)> find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (std::abs(xs[static_cast<std::size_t>(i)] - xs[static_cast<std::size_t>(j)]) <= thr) {
        const int ri = find(i), rj = find(j);
        if (ri != rj) parent[static_cast<std::size_t>(std::max(ri, rj))] = std::min(ri, rj);
      }
  // canonical labels in order of first appearance
  std::vector<int> label(static_cast<std::size_t>(n), -1);
  int next = 0;
  std::map<int, int> seen;
  for (int i = 0; i < n; ++i) {
    const int r = find(i);
    auto it = seen.find(r);
    if (it == seen.end()) it = seen.emplace(r, next++).first;
    label[static_cast<std::size_t>(i)] = it->second;
  }
  return label;
}

bool clusters_ambiguous(const std::vector<cplx>& xs, const std::vector<int>& label, double thr) {
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = i + 1; j < xs.size(); ++j)
      if (label[i] != label[j] && std::abs(xs[i] - xs[j]) < 2.0 * thr) return true;
  return false;
}

// Dendrogram clustering down to a prescribed cluster count (the exact number
// of distinct points), then tolerance merging of near-coincident clusters.
// Returns nullopt when the remaining gap does not validate the count.
std::optional<std::vector<int>> cluster_to_count(const std::vector<cplx>& xs, int target,
                                                 double thr, double scale) {
  const int n = static_cast<int>(xs.size());
  if (target < 1 || target > n) return std::nullopt;
  struct Edge {
    double d;
    int i, j;
  };
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      edges.push_back({std::abs(xs[static_cast<std::size_t>(i)] - xs[static_cast<std::size_t>(j)]), i, j});
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    if (a.d != b.d) return a.d < b.d;
    if (a.i != b.i) return a.i < b.i;
    return a.j < b.j;
  });

  std::vector<int> parent(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) parent[static_cast<std::size_t>(i)] = i;
  std::function<int(int)> find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };

  int count = n;
  double d_last = 0.0;
  std::size_t idx = 0;
  while (count > target && idx < edges.size()) {
    const int a = find(edges[idx].i), b = find(edges[idx].j);
    if (a != b) {
      parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
      --count;
      d_last = edges[idx].d;
    }
    ++idx;
  }
  if (count != target) return std::nullopt;

  // the first remaining cross edge is the minimal inter-cluster gap
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t k = idx; k < edges.size(); ++k) {
    if (find(edges[k].i) != find(edges[k].j)) {
      gap = edges[k].d;
      break;
    }
  }
  if (gap <= std::max(4.0 * d_last, 1e-12 * scale)) return std::nullopt;

  // tolerance semantics on top: clusters closer than thr merge anyway
  for (std::size_t k = idx; k < edges.size() && edges[k].d <= thr; ++k) {
    const int a = find(edges[k].i), b = find(edges[k].j);
    if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
  }

  std::vector<int> label(static_cast<std::size_t>(n), -1);
  int next = 0;
  std::map<int, int> seen;
  for (int i = 0; i < n; ++i) {
    const int r = find(i);
    auto it = seen.find(r);
    if (it == seen.end()) it = seen.emplace(r, next++).first;
    label[static_cast<std::size_t>(i)] = it->second;
  }
  return label;
}

bool point_less(const SolvedPoint& a, const SolvedPoint& b) {
  for (std::size_t k = 0; k < a.point.coords.size(); ++k) {
    const cplx& x = a.point.coords[k];
    const cplx& y = b.point.coords[k];
    if (x.real() != y.real()) return x.real() < y.real();
    if (x.imag() != y.imag()) return x.imag() < y.imag();
  }
  return false;
}

// Backward-error scale of evaluating p at z: 1 + sum of term magnitudes.
double evaluation_scale(const MultivariatePolynomial& p, const std::vector<cplx>& z) {
  double s = 1.0;
  for (const auto& [m, c] : p.terms()) {
    double t = std::abs(c.to_double());
    for (int v = 0; v < p.nvars(); ++v)
      for (int e = 0; e < m.exponent(v); ++e) t *= std::abs(z[static_cast<std::size_t>(v)]);
    s += t;
  }
  return s;
}

double scaled_residual(const std::vector<MultivariatePolynomial>& gens,
                       const std::vector<cplx>& z) {
  double r = 0.0;
  for (const auto& g : gens)
    r = std::max(r, std::abs(g.evaluate(z)) / evaluation_scale(g, z));
  return r;
}

// One Osborne balancing similarity for the whole commuting family: powers of
// two equalizing row and column norms summed over the matrices. Tames the
// scale spread of staircase monomial values at the solution points.
std::vector<double> balance_family(std::vector<ComplexMatrix>& mats) {
  const int n = mats.empty() ? 0 : mats[0].n();
  std::vector<double> d(static_cast<std::size_t>(n), 1.0);
  for (int sweep = 0; sweep < 12; ++sweep) {
    bool changed = false;
    for (int i = 0; i < n; ++i) {
      double r = 0.0, c = 0.0;
      for (const auto& m : mats)
        for (int j = 0; j < n; ++j) {
          if (j == i) continue;
          r += std::abs(m.at(i, j));
          c += std::abs(m.at(j, i));
        }
      if (r <= 0.0 || c <= 0.0) continue;
      const double g = std::exp2(std::round(0.5 * std::log2(r / c)));
      if (g == 1.0 || !std::isfinite(g)) continue;
      for (auto& m : mats)
        for (int j = 0; j < n; ++j) {
          m.at(i, j) /= g;
          m.at(j, i) *= g;
        }
      d[static_cast<std::size_t>(i)] *= g;
      changed = true;
    }
    if (!changed) break;
  }
  return d;
}

// Solve J dx = f by Gaussian elimination with partial pivoting.
bool dense_solve(std::vector<std::vector<cplx>> J, std::vector<cplx> f, std::vector<cplx>& dx) {
  const int n = static_cast<int>(f.size());
  for (int c = 0; c < n; ++c) {
    int piv = c;
    for (int r = c + 1; r < n; ++r)
      if (std::abs(J[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]) >
          std::abs(J[static_cast<std::size_t>(piv)][static_cast<std::size_t>(c)]))
        piv = r;
    if (std::abs(J[static_cast<std::size_t>(piv)][static_cast<std::size_t>(c)]) < 1e-300) return false;
    std::swap(J[static_cast<std::size_t>(piv)], J[static_cast<std::size_t>(c)]);
    std::swap(f[static_cast<std::size_t>(piv)], f[static_cast<std::size_t>(c)]);
    for (int r = c + 1; r < n; ++r) {
      const cplx factor = J[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] /
                          J[static_cast<std::size_t>(c)][static_cast<std::size_t>(c)];
      for (int k = c; k < n; ++k)
        J[static_cast<std::size_t>(r)][static_cast<std::size_t>(k)] -=
            factor * J[static_cast<std::size_t>(c)][static_cast<std::size_t>(k)];
      f[static_cast<std::size_t>(r)] -= factor * f[static_cast<std::size_t>(c)];
    }
  }
  dx.assign(static_cast<std::size_t>(n), cplx(0.0, 0.0));
  for (int r = n - 1; r >= 0; --r) {
    cplx acc = f[static_cast<std::size_t>(r)];
    for (int k = r + 1; k < n; ++k)
      acc -= J[static_cast<std::size_t>(r)][static_cast<std::size_t>(k)] * dx[static_cast<std::size_t>(k)];
    dx[static_cast<std::size_t>(r)] = acc / J[static_cast<std::size_t>(r)][static_cast<std::size_t>(r)];
  }
  return true;
}

}  // namespace

std::vector<SolvedPoint> cluster_multiplicities(const RawEigenData& raw, double tol) {
  const int n = static_cast<int>(raw.lambdas.size());
  if (raw.coords.size() != raw.lambdas.size())
    throw DimensionMismatch("eigen data size mismatch");
  double scale = 1.0;
  for (const cplx& l : raw.lambdas) scale = std::max(scale, std::abs(l));
  const double thr = tol * scale;
  const std::vector<int> label = link_clusters(raw.lambdas, thr);
  if (clusters_ambiguous(raw.lambdas, label, thr))
    throw IllConditioned("eigenvalue clusters are ambiguous at the given tolerance");

  const int nclusters = label.empty() ? 0 : 1 + *std::max_element(label.begin(), label.end());
  std::vector<SolvedPoint> out(static_cast<std::size_t>(nclusters));
  std::vector<int> count(static_cast<std::size_t>(nclusters), 0);
  for (int i = 0; i < n; ++i) {
    SolvedPoint& p = out[static_cast<std::size_t>(label[static_cast<std::size_t>(i)])];
    if (p.point.coords.empty())
      p.point.coords.assign(raw.coords[static_cast<std::size_t>(i)].size(), cplx(0.0, 0.0));
    for (std::size_t v = 0; v < p.point.coords.size(); ++v)
      p.point.coords[v] += raw.coords[static_cast<std::size_t>(i)][v];
    ++count[static_cast<std::size_t>(label[static_cast<std::size_t>(i)])];
  }
  for (int c = 0; c < nclusters; ++c) {
    SolvedPoint& p = out[static_cast<std::size_t>(c)];
    p.multiplicity = count[static_cast<std::size_t>(c)];
    for (auto& z : p.point.coords) z /= static_cast<double>(p.multiplicity);
  }
  std::sort(out.begin(), out.end(), point_less);
  return out;
}

std::vector<SolvedPoint> solve_points(const Ideal& ideal, const SolveOptions& opts) {
  const GroebnerBasis G = buchberger(ideal, MonomialOrder::grevlex(), opts.groebner);
  const std::vector<Monomial> basis = quotient_basis(G);
  const int dim = static_cast<int>(basis.size());
  if (dim == 0) return {};
  const int n = ideal.nvars;

  const std::vector<MultiplicationMatrix> mult = multiplication_matrices(G);
  std::vector<ComplexMatrix> B;
  B.reserve(mult.size());
  for (const auto& m : mult) B.push_back(m.to_complex());
  balance_family(B);

  std::vector<std::vector<MultivariatePolynomial>> jac;
  const bool square = static_cast<int>(ideal.generators.size()) == n;
  if (square) {
    jac.resize(ideal.generators.size());
    for (std::size_t i = 0; i < ideal.generators.size(); ++i)
      for (int v = 0; v < n; ++v) jac[i].push_back(ideal.generators[i].differentiate(v));
  }

  std::string last_failure = "no attempt made";
  for (int attempt = 0; attempt <= opts.max_retries; ++attempt) {
    std::mt19937_64 rng(opts.seed + static_cast<unsigned long>(attempt) * 7919UL);
    std::uniform_int_distribution<int> coeff(-10, 10);
    std::vector<double> c(static_cast<std::size_t>(n), 0.0);
    bool nonzero = false;
    while (!nonzero) {
      for (int v = 0; v < n; ++v) {
        c[static_cast<std::size_t>(v)] = static_cast<double>(coeff(rng));
        if (c[static_cast<std::size_t>(v)] != 0.0) nonzero = true;
      }
    }

    ComplexMatrix A(dim);
    for (int v = 0; v < n; ++v)
      for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
          A.at(i, j) += c[static_cast<std::size_t>(v)] * B[static_cast<std::size_t>(v)].at(i, j);

    SchurDecomposition schur;
    try {
      schur = schur_decompose(A);
    } catch (const IllConditioned& e) {
      last_failure = e.what();
      continue;
    }

    std::vector<cplx> lambdas = schur.eigenvalues();
    double scale = 1.0;
    for (const cplx& l : lambdas) scale = std::max(scale, std::abs(l));
    const double thr = opts.cluster_tol * scale;

    // the exact distinct-point count pins the clustering when available
    std::vector<int> labels;
    bool have_labels = false;
    if (const auto target = distinct_eigenvalue_count(
            mult, c, opts.seed + static_cast<unsigned long>(attempt))) {
      if (auto pinned = cluster_to_count(lambdas, *target, thr, scale)) {
        labels = std::move(*pinned);
        have_labels = true;
      }
    }
    if (!have_labels) {
      labels = link_clusters(lambdas, thr);
      if (clusters_ambiguous(lambdas, labels, thr)) {
        last_failure = "ambiguous eigenvalue clusters";
        continue;
      }
    }

    schur_reorder(schur, labels);

    // contiguous extents per cluster
    std::vector<std::pair<int, int>> extents;
    for (int i = 0; i < dim;) {
      int j = i;
      while (j < dim && labels[static_cast<std::size_t>(j)] == labels[static_cast<std::size_t>(i)]) ++j;
      extents.emplace_back(i, j);
      i = j;
    }

    // coordinates from per-cluster diagonal means of Q* B_v Q
    const ComplexMatrix qadj = schur.q.adjoint();
    std::vector<std::vector<cplx>> cluster_coords(extents.size(),
                                                  std::vector<cplx>(static_cast<std::size_t>(n)));
    for (int v = 0; v < n; ++v) {
      const ComplexMatrix Bq = qadj * (B[static_cast<std::size_t>(v)] * schur.q);
      for (std::size_t cidx = 0; cidx < extents.size(); ++cidx) {
        cplx mean(0.0, 0.0);
        for (int i = extents[cidx].first; i < extents[cidx].second; ++i) mean += Bq.at(i, i);
        cluster_coords[cidx][static_cast<std::size_t>(v)] =
            mean / static_cast<double>(extents[cidx].second - extents[cidx].first);
      }
    }

    std::vector<SolvedPoint> points;
    points.reserve(extents.size());
    bool ok = true;
    for (std::size_t cidx = 0; cidx < extents.size(); ++cidx) {
      SolvedPoint p;
      p.point.coords = cluster_coords[cidx];
      p.multiplicity = extents[cidx].second - extents[cidx].first;
      if (p.multiplicity == 1 && square) {
        // Newton polish
        for (int it = 0; it < 2; ++it) {
          std::vector<cplx> f(static_cast<std::size_t>(n));
          std::vector<std::vector<cplx>> J(static_cast<std::size_t>(n),
                                           std::vector<cplx>(static_cast<std::size_t>(n)));
          for (int i = 0; i < n; ++i) {
            f[static_cast<std::size_t>(i)] = ideal.generators[static_cast<std::size_t>(i)].evaluate(p.point.coords);
            for (int v = 0; v < n; ++v)
              J[static_cast<std::size_t>(i)][static_cast<std::size_t>(v)] =
                  jac[static_cast<std::size_t>(i)][static_cast<std::size_t>(v)].evaluate(p.point.coords);
          }
          std::vector<cplx> dx;
          if (!dense_solve(std::move(J), std::move(f), dx)) break;
          for (int v = 0; v < n; ++v) p.point.coords[static_cast<std::size_t>(v)] -= dx[static_cast<std::size_t>(v)];
        }
      }
      p.residual = scaled_residual(ideal.generators, p.point.coords);
      if (!(p.residual <= opts.residual_tol) || !std::isfinite(p.residual)) {
        ok = false;
        last_failure = "residual " + std::to_string(p.residual) + " above tolerance";
        break;
      }
      points.push_back(std::move(p));
    }
    if (!ok) continue;

    std::sort(points.begin(), points.end(), point_less);
    return points;
  }
  throw IllConditioned("solve_points failed after retries: " + last_failure);
}

}  // namespace singlab
