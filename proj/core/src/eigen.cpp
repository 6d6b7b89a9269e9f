#include "singlab/eigen.hpp"

#include <algorithm>
#include <cmath>

#include "singlab/errors.hpp"

namespace singlab {

ComplexMatrix ComplexMatrix::identity(int n) {
  ComplexMatrix m(n);
  for (int i = 0; i < n; ++i) m.at(i, i) = cplx(1.0, 0.0);
  return m;
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix& o) const {
  ComplexMatrix r(n_);
  for (int i = 0; i < n_; ++i)
    for (int k = 0; k < n_; ++k) {
      const cplx aik = at(i, k);
      if (aik == cplx(0.0, 0.0)) continue;
      for (int j = 0; j < n_; ++j) r.at(i, j) += aik * o.at(k, j);
    }
  return r;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix r(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) r.at(i, j) = std::conj(at(j, i));
  return r;
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const cplx& v : a_) m = std::max(m, std::abs(v));
  return m;
}

std::vector<cplx> SchurDecomposition::eigenvalues() const {
  std::vector<cplx> ev(static_cast<std::size_t>(t.n()));
  for (int i = 0; i < t.n(); ++i) ev[static_cast<std::size_t>(i)] = t.at(i, i);
  return ev;
}

namespace {

// Givens rotation G = [[c, s], [-conj(s), c]] with c real, |c|^2+|s|^2 = 1,
// chosen so that G * (a, b)^T = (r, 0)^T.
struct Givens {
  double c;
  cplx s;
};

Givens make_givens(cplx a, cplx b) {
  const double na = std::abs(a), nb = std::abs(b);
  if (nb == 0.0) return {1.0, cplx(0.0, 0.0)};
  const double scale = std::max(na, nb);
  const double fa = na / scale, fb = nb / scale;
  const double r = scale * std::sqrt(fa * fa + fb * fb);
  if (na == 0.0) return {0.0, cplx(1.0, 0.0) * (std::conj(b) / nb)};
  const cplx unit = a / na;
  return {na / r, (std::conj(b) * unit) / r};
}

// Apply G to rows i, i+1 on columns [lo, n).
void rotate_rows(ComplexMatrix& m, int i, const Givens& g, int lo) {
  for (int j = lo; j < m.n(); ++j) {
    const cplx x = m.at(i, j), y = m.at(i + 1, j);
    m.at(i, j) = g.c * x + g.s * y;
    m.at(i + 1, j) = -std::conj(g.s) * x + g.c * y;
  }
}

// Apply G* to columns i, i+1 on rows [0, hi).
void rotate_cols(ComplexMatrix& m, int i, const Givens& g, int hi) {
  for (int r = 0; r < hi; ++r) {
    const cplx x = m.at(r, i), y = m.at(r, i + 1);
    m.at(r, i) = x * g.c + y * std::conj(g.s);
    m.at(r, i + 1) = -x * g.s + y * g.c;
  }
}

void hessenberg(ComplexMatrix& a, ComplexMatrix& q) {
  const int n = a.n();
  for (int k = 0; k < n - 2; ++k) {
    // Householder vector for column k below the subdiagonal
    double norm = 0.0;
    for (int i = k + 1; i < n; ++i) norm += std::norm(a.at(i, k));
    norm = std::sqrt(norm);
    if (norm <= 1e-300) continue;
    cplx alpha = a.at(k + 1, k);
    const double aa = std::abs(alpha);
    const cplx phase = (aa > 0.0) ? alpha / aa : cplx(1.0, 0.0);
    const cplx beta = -phase * norm;
    std::vector<cplx> v(static_cast<std::size_t>(n), cplx(0.0, 0.0));
    v[static_cast<std::size_t>(k + 1)] = alpha - beta;
    for (int i = k + 2; i < n; ++i) v[static_cast<std::size_t>(i)] = a.at(i, k);
    double vnorm2 = 0.0;
    for (int i = k + 1; i < n; ++i) vnorm2 += std::norm(v[static_cast<std::size_t>(i)]);
    if (vnorm2 <= 1e-300) continue;

    // A <- (I - 2 v v*/v*v) A
    for (int j = k; j < n; ++j) {
      cplx dot(0.0, 0.0);
      for (int i = k + 1; i < n; ++i) dot += std::conj(v[static_cast<std::size_t>(i)]) * a.at(i, j);
      dot *= 2.0 / vnorm2;
      for (int i = k + 1; i < n; ++i) a.at(i, j) -= dot * v[static_cast<std::size_t>(i)];
    }
    // A <- A (I - 2 v v*/v*v)
    for (int i = 0; i < n; ++i) {
      cplx dot(0.0, 0.0);
      for (int j = k + 1; j < n; ++j) dot += a.at(i, j) * v[static_cast<std::size_t>(j)];
      dot *= 2.0 / vnorm2;
      for (int j = k + 1; j < n; ++j) a.at(i, j) -= dot * std::conj(v[static_cast<std::size_t>(j)]);
    }
    // Q <- Q (I - 2 v v*/v*v)
    for (int i = 0; i < n; ++i) {
      cplx dot(0.0, 0.0);
      for (int j = k + 1; j < n; ++j) dot += q.at(i, j) * v[static_cast<std::size_t>(j)];
      dot *= 2.0 / vnorm2;
      for (int j = k + 1; j < n; ++j) q.at(i, j) -= dot * std::conj(v[static_cast<std::size_t>(j)]);
    }
    a.at(k + 1, k) = beta;
    for (int i = k + 2; i < n; ++i) a.at(i, k) = cplx(0.0, 0.0);
  }
}

cplx wilkinson_shift(const ComplexMatrix& h, int m) {
  // eigenvalue of the trailing 2x2 block closest to h(m, m)
  const cplx a = h.at(m - 1, m - 1), b = h.at(m - 1, m);
  const cplx c = h.at(m, m - 1), d = h.at(m, m);
  const cplx tr = a + d;
  const cplx det = a * d - b * c;
  const cplx disc = std::sqrt(tr * tr - 4.0 * det);
  const cplx l1 = 0.5 * (tr + disc), l2 = 0.5 * (tr - disc);
  return std::abs(l1 - d) < std::abs(l2 - d) ? l1 : l2;
}

}  // namespace

SchurDecomposition schur_decompose(const ComplexMatrix& a_in) {
  const int n = a_in.n();
  SchurDecomposition s{a_in, ComplexMatrix::identity(n)};
  if (n == 0) return s;
  ComplexMatrix& h = s.t;
  ComplexMatrix& q = s.q;
  hessenberg(h, q);

  const double eps = 2.3e-16;
  const double hnorm = std::max(h.max_abs(), 1e-300);
  int hi = n - 1;
  long iter_this_window = 0;
  long total_iters = 0;
  const long max_total = 60L * std::max(n, 4);

  while (hi > 0) {
    // deflate tiny subdiagonals
    int lo = hi;
    while (lo > 0) {
      const double sub = std::abs(h.at(lo, lo - 1));
      const double local = std::abs(h.at(lo - 1, lo - 1)) + std::abs(h.at(lo, lo));
      if (sub <= eps * std::max(local, hnorm * 1e-8)) {
        h.at(lo, lo - 1) = cplx(0.0, 0.0);
        break;
      }
      --lo;
    }
    if (lo == hi) {
      --hi;
      iter_this_window = 0;
      continue;
    }

    if (++total_iters > max_total)
      throw IllConditioned("QR iteration failed to converge");
    ++iter_this_window;

    cplx mu = wilkinson_shift(h, hi);
    if (iter_this_window % 12 == 0) {
      // exceptional shift to escape rare stalls
      mu = h.at(hi, hi) + cplx(1.5 * std::abs(h.at(hi, hi - 1)), 0.75 * std::abs(h.at(hi, hi - 1)));
    }

    // implicit single-shift sweep: seed a bulge with the shifted first
    // column, then chase it off the bottom of the window
    cplx x = h.at(lo, lo) - mu;
    cplx y = h.at(lo + 1, lo);
    for (int i = lo; i < hi; ++i) {
      const Givens g = make_givens(x, y);
      rotate_rows(h, i, g, std::max(i - 1, lo));
      rotate_cols(h, i, g, std::min(i + 2, h.n() - 1) + 1);
      rotate_cols(q, i, g, q.n());
      if (i < hi - 1) {
        x = h.at(i + 1, i);
        y = h.at(i + 2, i);
      }
    }
  }

  // scrub numerical dust below the diagonal
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j) h.at(i, j) = cplx(0.0, 0.0);
  return s;
}

void schur_swap_adjacent(SchurDecomposition& s, int j) {
  ComplexMatrix& t = s.t;
  const cplx l1 = t.at(j, j), l2 = t.at(j + 1, j + 1), tau = t.at(j, j + 1);
  // rotation aligning the (tau, l2 - l1) eigenvector of the 2x2 block
  const Givens g = make_givens(tau, l2 - l1);
  rotate_rows(t, j, g, 0);
  rotate_cols(t, j, g, t.n());
  rotate_cols(s.q, j, g, s.q.n());
  t.at(j + 1, j) = cplx(0.0, 0.0);
  // the swap is exact up to roundoff; pin the diagonal to the exchanged values
  t.at(j, j) = l2;
  t.at(j + 1, j + 1) = l1;
}

void schur_reorder(SchurDecomposition& s, std::vector<int>& labels) {
  const int n = s.t.n();
  // first-occurrence precedence
  std::vector<int> rank(labels.size(), 0);
  {
    std::vector<int> seen;
    for (int lbl : labels)
      if (std::find(seen.begin(), seen.end(), lbl) == seen.end()) seen.push_back(lbl);
    for (std::size_t i = 0; i < labels.size(); ++i)
      rank[i] = static_cast<int>(std::find(seen.begin(), seen.end(), labels[i]) - seen.begin());
  }
  bool moved = true;
  while (moved) {
    moved = false;
    for (int j = 0; j + 1 < n; ++j) {
      if (rank[static_cast<std::size_t>(j)] > rank[static_cast<std::size_t>(j + 1)]) {
        schur_swap_adjacent(s, j);
        std::swap(rank[static_cast<std::size_t>(j)], rank[static_cast<std::size_t>(j + 1)]);
        std::swap(labels[static_cast<std::size_t>(j)], labels[static_cast<std::size_t>(j + 1)]);
        moved = true;
      }
    }
  }
}

std::vector<cplx> companion_roots(const std::vector<cplx>& coeffs_low_first) {
  const int n = static_cast<int>(coeffs_low_first.size());
  if (n == 0) return {};
  ComplexMatrix c(n);
  for (int i = 1; i < n; ++i) c.at(i, i - 1) = cplx(1.0, 0.0);
  for (int i = 0; i < n; ++i) c.at(i, n - 1) = -coeffs_low_first[static_cast<std::size_t>(i)];
  return schur_decompose(c).eigenvalues();
}

}  // namespace singlab
