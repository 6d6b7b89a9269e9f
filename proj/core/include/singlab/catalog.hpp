#pragma once

#include <array>

#include "singlab/deformlab.hpp"

namespace singlab {

// ---------------------------------------------------------------------------
// Family A: fields on C^3 vanishing on the line W = {z1 = z2 = 0}, built from
// degree-m binary forms a, b and affine-linear coefficient rows alpha.
// ---------------------------------------------------------------------------

struct LineFamilyData {
  int m = 2;
  std::vector<Rational> a;  // a(s) = sum a_i s^i, degree m
  std::vector<Rational> b;  // b(s), degree m, coprime with a
  // alpha[i] = (alpha_{i,0}, .., alpha_{i,3}) for the affine coefficient
  // c_i(z) = alpha_{i,0} + alpha_{i,1} z1 + alpha_{i,2} z2 + alpha_{i,3} z3
  std::vector<std::array<Rational, 4>> alpha;
  std::array<Rational, 3> eps;  // translation direction
};

struct LineFamilyPredictions {
  long generic_mu = 0;    // m^2
  long beta = 0;          // common roots of alpha_3 and eps1 b - eps2 a
  long predicted_mu = 0;  // m^2 - beta m
  long isolated_count = 0;  // m + 1 closed points of the projective foliation
  long minimum_mu = 0;      // family floor: m when alpha_3 != 0, else 0
  bool alpha3_zero = false;
};

std::pair<DeformationFamily, LineFamilyPredictions> line_family(const LineFamilyData& data);
LineFamilyData line_family_generic(int m, unsigned long seed);
LineFamilyData line_family_planted_root(int m);  // beta = 1 configuration
CompleteIntersection line_family_w();
TSchedule line_family_schedule(int m);

// ---------------------------------------------------------------------------
// Family B: the fixed cubic field on C^3 singular along the twisted cubic
// z2 = z1^2, z3 = z1^3 with an embedded point at P = (1,1,1) and the isolated
// point A = (1,3,-5), together with its refined deformation.
// ---------------------------------------------------------------------------

struct CubicCurveInstance {
  VectorField base;
  CompleteIntersection w;
  DeformationFamily translation;  // constant-direction deformation
  DeformationFamily refined;      // curve-deforming family
  std::vector<cplx> point_a;      // (1, 3, -5)
  std::vector<cplx> point_p;      // (1, 1, 1)
  long total_multiplicity = 27;   // of sing at t != 0
  long to_a = 1;
  long to_p = 7;
  long h3_multiplicity = 13;      // restriction to the plane at infinity
  std::vector<cplx> h3_limit;     // (16/7, 12/7)

  /// The deformed curve the refined family tracks: z2 = z1^2 together with
  /// z3 = z1^3 + t z2^3. Useful only for evaluating its defining polynomials
  /// at solved points; the lab does not deform W in its own diagnostics.
  CompleteIntersection w_at(const Rational& t) const;
};

CubicCurveInstance cubic_curve_family(unsigned long seed);

// ---------------------------------------------------------------------------
// Family C: truncated rotation fields with W = {z1 = z2 = 0} totally simple
// inside a bounded region; P_m drives the third component z1 * P_m(z3).
// ---------------------------------------------------------------------------

struct RotationFamilyData {
  std::vector<Rational> pm;  // coefficients of P_m, ascending, distinct roots
  int kappa = 2;
  std::array<std::array<Rational, 3>, 3> a{};  // direction rows a_{ij}
  bool special = false;  // a_{30} != 0, all other entries zero
};

struct RotationFamilyPredictions {
  bool empty_basin = false;        // expected for the special direction
  long min_total_multiplicity = 0;  // 4 kappa + 2
  double region_radius = 0.0;       // validity disk of the truncation
};

std::pair<DeformationFamily, RotationFamilyPredictions> rotation_family(
    const RotationFamilyData& data);
RotationFamilyData rotation_family_special(int kappa);
RotationFamilyData rotation_family_generic(int kappa, unsigned long seed);
CompleteIntersection rotation_family_w();
TSchedule rotation_family_schedule(const RotationFamilyPredictions& pred);

}  // namespace singlab
