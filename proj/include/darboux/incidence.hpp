#pragma once

#include <array>
#include <vector>

#include "darboux/gauss.hpp"

namespace darboux {

/// Cyclic triple of projective representatives (x0, x1, x2) subject to the
/// incidence relations x0.x1 = x1.x2 = x2.x0 = 0. Indices are read mod 3;
/// x0 lies on the point quadric, x1 on the minus-family quadric, x2 on the
/// plus-family quadric, so the triple records a point together with the two
/// maximal isotropic subspaces through it, one of each family.
struct IncidenceTriple {
  ZornR x0, x1, x2;
};

/// Unit representatives (psi, psi_minus, psi_plus) in Zorn coordinates. The
/// consecutive products vanish by the tangency relations of the two Gauss
/// maps, so the result satisfies the incidence relations.
IncidenceTriple incidence_triple(const IsotropicImmersionPoint& p);

/// (x0, x1, x2) -> (x1, x2, x0). The incidence relations are cyclic, so the
/// shifted triple is incident exactly when the original is.
IncidenceTriple cyclic_shift(const IncidenceTriple& t);

/// Largest scale-normalized norm of the three consecutive Zorn products.
double incidence_residual(const IncidenceTriple& t);

/// Orthonormal basis of the fiber space K_slot = ker R_{x_{slot+1}} cap
/// ker L_{x_{slot-1}}: representatives y for which (x0, x1, x2) with x_slot
/// replaced by y is still incident. Contains x_slot; three-dimensional and
/// totally isotropic at every incident triple with nonzero entries. Throws
/// DegeneratePoint when the numerical nullity differs from 3 or when x_slot
/// fails to lie inside the computed space.
Eigen::Matrix<double, 8, 3> fiber_space(const IncidenceTriple& t, int slot);

/// Frame of the rank-6 vertical distribution at the triple, as a 24 x 6
/// matrix over the stacked coordinates (x0, x1, x2). Columns 2i and 2i+1
/// span the tangent plane of the slot-i fiber: the orthogonal complement of
/// x_i inside K_i, embedded in the i-th coordinate block.
Eigen::Matrix<double, 24, 6> distribution_frame(const IncidenceTriple& t);

/// Numerical ranks of the vertical planes, of their pairwise sums, and of
/// the full frame. The expected profile {2,2,2}, {4,4,4}, 6 says the three
/// planes form a direct sum.
struct DirectSumReport {
  std::array<int, 3> fiber_dim{};  // rank of each vertical plane
  std::array<int, 3> pair_dim{};   // rank of (0,1), (1,2), (2,0) sums
  int total_dim = 0;               // rank of the whole frame
};
DirectSumReport direct_sum_check(const IncidenceTriple& t);

struct IncidenceSurfacePoint {
  GridPoint at;
  double residual;  // value-level incidence residual
  double tangency;  // first-derivative residual of the three products
};

struct IncidenceSurfaceReport {
  std::vector<IncidenceSurfacePoint> points;
  double max_residual = 0;
  double max_tangency = 0;
};

/// Verifies over a parameter grid that u -> (psi, psi_minus, psi_plus) takes
/// values in the incidence variety and stays tangent to it: each of the
/// three defining products vanishes together with its first derivatives.
IncidenceSurfaceReport integral_surface_check(const DeformationPair& p,
                                              int grid_n,
                                              Exec exec = Exec::parallel);

/// Finite-difference probe of the bracket growth of the vertical
/// distribution. rank_distribution is the rank of the frame in chart
/// coordinates; rank_first adds the 15 pairwise Lie brackets; rank_second
/// adds the 90 brackets of frame fields with first-level brackets. The
/// expected profile 6, 9, 11 shows the distribution is as far from
/// integrable as its rank allows: two bracket steps fill the tangent space.
struct BracketProbeReport {
  int rank_distribution = 0;
  int rank_first = 0;
  int rank_second = 0;
  // Worst relative defect when expressing a frame vector in chart plus
  // scale-gauge directions; should sit at finite-difference noise level.
  double pullback_residual = 0;
  double sigma_first = 0;   // smallest kept singular value, first level
  double tail_first = 0;    // largest dropped singular value, first level
  double sigma_second = 0;  // smallest kept singular value, second level
};

/// Runs the probe in an 11-parameter chart of the incidence variety centered
/// at the given triple. Brackets are nested central differences at step
/// tol::fd_step; ranks use the relative cutoff tol::bracket_cutoff. Throws
/// NotIncident if the triple fails the incidence relations and
/// ChartDegenerate when the chart cannot be centered there: vanishing chart
/// denominators, an ill-conditioned coordinate frame, or a first-level
/// singular spectrum with no clean gap at the cutoff (the finite-difference
/// noise floor reaching the rank decision). Re-centering at a cyclic shift
/// of the triple probes the same distribution in a different chart and can
/// succeed where a marginal centering is refused.
BracketProbeReport nonintegrability_probe(const IncidenceTriple& base);

}  // namespace darboux
