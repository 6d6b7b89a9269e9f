#pragma once

#include <complex>
#include <vector>

namespace singlab {

using cplx = std::complex<double>;

/// Dense square complex matrix, row major. Sized for the quotient algebras
/// this project meets (a few dozen rows).
class ComplexMatrix {
public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * n, cplx(0.0, 0.0)) {}
  static ComplexMatrix identity(int n);

  int n() const { return n_; }
  cplx& at(int i, int j) { return a_[static_cast<std::size_t>(i) * n_ + j]; }
  const cplx& at(int i, int j) const { return a_[static_cast<std::size_t>(i) * n_ + j]; }

  ComplexMatrix operator*(const ComplexMatrix& o) const;
  ComplexMatrix adjoint() const;
  double max_abs() const;

private:
  int n_ = 0;
  std::vector<cplx> a_;
};

/// A = Q T Q* with T upper triangular and Q unitary.
struct SchurDecomposition {
  ComplexMatrix t;
  ComplexMatrix q;
  std::vector<cplx> eigenvalues() const;
};

/// Complex Schur form via Householder Hessenberg reduction followed by
/// shifted QR iteration with deflation. Throws IllConditioned if the
/// iteration fails to converge.
SchurDecomposition schur_decompose(const ComplexMatrix& a);

/// Swap the diagonal entries at positions j, j+1 by a unitary similarity.
void schur_swap_adjacent(SchurDecomposition& s, int j);

/// Stable reorder making equal-labelled positions contiguous, label order
/// preserved by first occurrence. Returns the block extents per label.
void schur_reorder(SchurDecomposition& s, std::vector<int>& labels);

/// Roots of a monic polynomial given coefficients c0..c_{n-1} of
/// x^n + c_{n-1} x^{n-1} + ... + c0, via its companion matrix.
std::vector<cplx> companion_roots(const std::vector<cplx>& coeffs_low_first);

}  // namespace singlab
