#pragma once

#include <vector>

#include "singlab/eigen.hpp"
#include "singlab/groebner.hpp"

namespace singlab {

struct ComplexPoint {
  std::vector<cplx> coords;
};

struct SolvedPoint {
  ComplexPoint point;
  int multiplicity = 1;
  /// Backward-error scaled residual: max_i |X_i(p)| over the evaluation
  /// magnitude. Bounded by the configured tolerance for returned points.
  double residual = 0.0;
};

/// Matrix of "multiply by z_var, then reduce" on the staircase basis.
/// Exact rational entries; matrices for different variables commute exactly.
struct MultiplicationMatrix {
  int var = 0;
  int dim = 0;
  std::vector<Rational> entries;  // row major

  const Rational& at(int i, int j) const {
    return entries[static_cast<std::size_t>(i) * dim + j];
  }
  Rational& at(int i, int j) { return entries[static_cast<std::size_t>(i) * dim + j]; }
  ComplexMatrix to_complex() const;
};

MultiplicationMatrix multiplication_matrix(const GroebnerBasis& G, int var);
std::vector<MultiplicationMatrix> multiplication_matrices(const GroebnerBasis& G);

/// Exact commutator test in rational arithmetic.
bool commute_exactly(const MultiplicationMatrix& a, const MultiplicationMatrix& b);

struct SolveOptions {
  double residual_tol = 1e-8;
  double cluster_tol = 1e-6;
  unsigned long seed = 20240901UL;
  int max_retries = 4;
  GroebnerOptions groebner;
};

/// Eigen data of one generic combination: a combined eigenvalue and the
/// per-variable coordinate reads, one entry per Schur position.
struct RawEigenData {
  std::vector<cplx> lambdas;
  std::vector<std::vector<cplx>> coords;  // coords[pos][var]
};

/// Merge positions whose combined eigenvalues are closer than tol (relative
/// to the eigenvalue scale), adding multiplicities. Throws IllConditioned
/// when the gap structure is ambiguous at the given tolerance.
std::vector<SolvedPoint> cluster_multiplicities(const RawEigenData& raw, double tol);

/// All solutions of a zero-dimensional system, with multiplicities summing
/// to multiplicity_dim. Deterministic for a fixed seed.
std::vector<SolvedPoint> solve_points(const Ideal& ideal, const SolveOptions& opts = {});

}  // namespace singlab
