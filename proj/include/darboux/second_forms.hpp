#pragma once

#include <array>
#include <vector>

#include "darboux/gauss.hpp"

namespace darboux {

/// Symmetric bilinear form on the parameter plane, in the (d1, d2) frame.
struct QuadraticForm2 {
  Eigen::Matrix2d m = Eigen::Matrix2d::Zero();  // kept exactly symmetric
  bool up_to_scale = true;
  // Ambient scale of the products the coefficients were extracted from;
  // coefficients below form_zero times this mean the form vanishes.
  double zero_scale = 0;
};

bool effectively_zero(const QuadraticForm2& q);

/// Numerical rank with cutoff form_rank_cutoff times the Frobenius norm.
int form_rank(const QuadraticForm2& q);

/// True when a singular value sits within a factor 10 of the rank cutoff (or
/// the norm within a factor 10 of the zero threshold): the rank is not
/// trustworthy at such a point.
bool rank_marginal(const QuadraticForm2& q);

/// Unit kernel direction of a rank-1 form.
Eigen::Vector2d form_kernel(const QuadraticForm2& q);

struct OctonionForms {
  QuadraticForm2 plus, minus, core;  // the two apolar forms and the third one
  double direction_residual = 0;     // worst off-direction component, relative
  double symmetry_residual = 0;
};

/// The three second fundamental forms from first-derivative Zorn products of
/// the lift representatives: each product -(X a)(Y b) over the derivative
/// pairs is proportional to the conjugate of the remaining representative,
/// and the scalar factors assemble the form. The products are checked to be
/// proportional to their stated directions; a violation means the pipeline
/// upstream produced wrong representatives and raises DirectionMismatch.
OctonionForms forms_from_octonions(const IsotropicImmersionPoint& p);

/// a11 b22 + a22 b11 - 2 a12 b12, normalized by the two Frobenius norms.
/// Zero exactly when the forms are apolar; a vanishing form is apolar to
/// everything, so the check returns 0 when either side is effectively zero.
double apolarity_check(const QuadraticForm2& a, const QuadraticForm2& b);

struct ClassicalForms {
  QuadraticForm2 f, g, h;  // m* . D^2 m for each triplet member
};

/// Classical second forms in the polar gauge: f* = -nu_f/(nu_f.f),
/// g* = -h/(h.g), and h* = -nu_f/(nu_f.h), the vector with h*.df = 0 and
/// h*.h = -1 (it coincides with the polar of h where h immerses, but stays
/// defined where h does not). Throws PolarUndefined where a denominator
/// vanishes.
ClassicalForms classical_forms(const DarbouxTriplet& t, double u, double v);

struct ProportionalityComponent {
  double cross_residual = 0;  // |flatten(a) x flatten(b)| / (|a| |b|)
  bool vacuous = false;       // both forms vanish; nothing to compare
  bool polar_defined = true;  // classical counterpart computable
};

struct ProportionalityReport {
  ProportionalityComponent plus, minus, core;  // vs Pi_f, Pi_g, Pi_h
  // Worst deviation of the extracted forms from the predicted multiples of
  // the classical ones, sharing one overall sign; negative when skipped.
  double factor_residual = -1;
  double gauge_sign = 0;
};

/// Checks that the octonion-extracted forms (in the chart gauge of the
/// representatives) are nonzero multiples of the classical ones, with the
/// predicted factors 1, (h.g)(f.h*) and (h.f*).
ProportionalityReport proportionality_check(const DarbouxTriplet& t, double u,
                                            double v);

struct FormRankPoint {
  GridPoint at;
  int plus, minus, core;
  bool marginal;
};

struct FormRankReport {
  std::vector<FormRankPoint> points;
  std::array<int, 3> row{0, 0, 0};  // the stable (rg+, rg-, rg) triple
  int marginal_count = 0;
  int table_checked = 0;     // non-marginal points behind `row`
  int rank_mismatch = 0;     // points violating rg Pi+- = rank dphi-+
  double kernel_angle = 0;   // worst rank-1 kernel misalignment
};

/// Per-point ranks of the three forms over a grid, the consistency of their
/// kernels with the Gauss differentials, and the classification row. A
/// stable triple outside the admissible list raises TableViolation.
FormRankReport rank_table(const DeformationPair& p, int grid_n,
                          Exec exec = Exec::parallel);

}  // namespace darboux
