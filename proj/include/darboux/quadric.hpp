#pragma once

#include <utility>

#include "darboux/subspace.hpp"

namespace darboux {

/// Point of the projective quadric Q = {q = 0}, stored as a representative.
struct ProjPoint {
  Vec8 v;  // vec44 coordinates
};

/// Maximal totally isotropic subspace of the plus family: the graph
/// (x, s) -> (y, t) = (a X x + b s, -b.x).
IsoSubspace chart_plus(const V3& a, const V3& b);

/// Maximal totally isotropic subspace of the minus family: the graph
/// (x, t) -> (y, s) = (a X x + b t, -b.x).
IsoSubspace chart_minus(const V3& a, const V3& b);

struct FamilyLabel {
  Family family;
  ZornR z;  // null octonion labeling the subspace, defined up to scale
};

/// Identify the family of a maximal isotropic W and the null ray Z with
/// rho(W) = ker L_Z (plus) or ker R_Z (minus). Exactly one side admits a
/// one-dimensional solution; anything else raises AmbiguousFamily.
FamilyLabel classify_family(const IsoSubspace& w);

/// The annihilator subspace rho^{-1}(ker L_Z) (side=left, plus family) or
/// rho^{-1}(ker R_Z) (side=right, minus family) of a nonzero null octonion.
IsoSubspace annihilator(const ZornR& z, Side side);

/// Incidence of a quadric point with a maximal isotropic subspace
/// (membership) or of two opposite-family subspaces (3-dimensional
/// intersection, equivalently vanishing Zorn product of their labels).
bool incident(const ProjPoint& p, const IsoSubspace& w, double tolerance = tol::proj_eq);
bool incident(const IsoSubspace& a, const IsoSubspace& b, double tolerance = tol::subspace_eq);

/// Both maximal isotropic extensions of a 3-dimensional totally isotropic
/// subspace, ordered (plus, minus). The quotient V-perp / V carries a
/// signature (1,1) form whose two null lines give the extensions.
std::pair<IsoSubspace, IsoSubspace> extend_isotropic3(const IsoSubspace& v);

/// Action of PGL4 on Q: (x,s) block by A, (y,t) block by A^{-T}. Preserves q.
P44 pgl4_action(const Eigen::Matrix4d& a, const P44& v);
J44 pgl4_action(const Eigen::Matrix4d& a, const J44& v);
IsoSubspace pgl4_action(const Eigen::Matrix4d& a, const IsoSubspace& w);

}  // namespace darboux
