#pragma once

#include <Eigen/Dense>

#include "darboux/vec44.hpp"

namespace darboux {

enum class Family { none, plus_family, minus_family };

inline const char* family_name(Family f) {
  switch (f) {
    case Family::plus_family: return "plus";
    case Family::minus_family: return "minus";
    default: return "none";
  }
}

/// Totally isotropic subspace of R^{4,4}, stored as an orthonormal basis
/// (columns, vec44 coordinate order). The family tag is meaningful only for
/// maximal (4-dimensional) subspaces.
struct IsoSubspace {
  Eigen::MatrixXd basis;  // 8 x dim, orthonormal columns
  Family family = Family::none;

  int dim() const { return static_cast<int>(basis.cols()); }
};

/// Orthonormalize the columns of a full-column-rank matrix.
Eigen::MatrixXd orthonormalize(const Eigen::MatrixXd& m);

/// Largest |<b_i, b_j>_q| over basis pairs; zero for a totally isotropic span.
double gram_residual(const Eigen::MatrixXd& basis);

/// sin of the largest principal angle between two equal-dimensional subspaces
/// given by orthonormal bases; stable near zero.
double sin_max_principal_angle(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

/// Distance of a vector from a subspace, relative to the vector's norm.
double containment_residual(const IsoSubspace& w, const Vec8& v);

/// dim(span A + span B) via SVD rank of the concatenation.
int joint_rank(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, double rel_cutoff);

/// Null space of a matrix: right singular vectors whose singular values fall
/// below rel_cutoff * sigma_max (all of them if the matrix is zero).
Eigen::MatrixXd null_space(const Eigen::MatrixXd& m, double rel_cutoff);

/// Numerical rank with a cutoff relative to sigma_max.
int numerical_rank(const Eigen::MatrixXd& m, double rel_cutoff);

}  // namespace darboux
